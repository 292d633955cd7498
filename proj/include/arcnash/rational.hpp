#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace arcnash {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Largest n with n^k <= a, for a >= 0, k >= 1.
Int integer_kth_root(const Int& a, int k);

// Exact k-th root of a rational, if one exists in Q.
// Even k and negative q has no real root, so none is returned.
std::optional<Rational> perfect_kth_root(const Rational& q, int k);

inline std::optional<Rational> rational_sqrt(const Rational& q) { return perfect_kth_root(q, 2); }

std::string rational_str(const Rational& q);

// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input.
Rational rational_from_str(const std::string& s);

double to_double(const Rational& q);

}  // namespace arcnash
