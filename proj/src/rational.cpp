#include "arcnash/rational.hpp"

#include <sstream>
#include <stdexcept>

namespace arcnash {

Int integer_kth_root(const Int& a, int k) {
    if (a < 0) throw std::invalid_argument("integer_kth_root: negative radicand");
    if (k < 1) throw std::invalid_argument("integer_kth_root: k must be positive");
    if (a == 0 || a == 1 || k == 1) return a;
    Int lo = 1, hi = 1;
    while (boost::multiprecision::pow(hi, k) <= a) hi <<= 1;
    // invariant: lo^k <= a < hi^k
    while (hi - lo > 1) {
        Int mid = (lo + hi) / 2;
        if (boost::multiprecision::pow(mid, k) <= a)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

std::optional<Rational> perfect_kth_root(const Rational& q, int k) {
    if (k < 1) return std::nullopt;
    if (q == 0) return Rational(0);
    const bool neg = q < 0;
    if (neg && k % 2 == 0) return std::nullopt;
    Int num = boost::multiprecision::abs(numerator(q));
    Int den = denominator(q);
    Int rn = integer_kth_root(num, k);
    Int rd = integer_kth_root(den, k);
    if (boost::multiprecision::pow(rn, k) != num || boost::multiprecision::pow(rd, k) != den)
        return std::nullopt;
    Rational r(rn, rd);
    return neg ? -r : r;
}

std::string rational_str(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

Rational rational_from_str(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    try {
        Rational r(s);
        return r;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational literal: " + s);
    }
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace arcnash
