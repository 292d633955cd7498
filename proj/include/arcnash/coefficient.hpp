#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arcnash/errors.hpp"
#include "arcnash/rational.hpp"

namespace arcnash {

// The field Q[X]/(X^k - c), together with a chosen complex root of X^k = c.
// Elements only depend on (c, k); the root index selects the embedding into C
// and matters for numeric evaluation, ordering and conjugation bookkeeping.
// In exact computations the engine only ever installs quadratic extensions
// (k = 2); higher-degree roots do not close under conjugation inside a single
// layer and trigger the approx fallback instead.
class Extension {
public:
    Extension(Rational base, int degree, int root_index);

    const Rational& base() const { return base_; }
    int degree() const { return degree_; }
    int root_index() const { return root_index_; }

    // Same abstract field, embedding ignored.
    bool same_field(const Extension& o) const { return base_ == o.base_ && degree_ == o.degree_; }

    // Numeric value of the selected root: |c|^{1/k} e^{i(arg c + 2 pi j)/k}.
    std::complex<double> root() const;

    std::string name() const;

private:
    Rational base_;
    int degree_;
    int root_index_;
};

using ExtensionPtr = std::shared_ptr<const Extension>;

// One coefficient of the toolkit: an exact rational, an exact element of a
// single extension Q(alpha), or a complex double with tolerance eps.
// Exact values never mix with approx values; incompatible extensions raise
// needs_approx so callers can restart the whole computation approximately.
class Coefficient {
public:
    Coefficient() : coords_{Rational(0)} {}
    Coefficient(int v) : coords_{Rational(v)} {}                  // NOLINT(google-explicit-constructor)
    Coefficient(const Rational& v) : coords_{v} {}                // NOLINT(google-explicit-constructor)

    static Coefficient approx(std::complex<double> z);
    static Coefficient algebraic(std::vector<Rational> coords, ExtensionPtr ext);

    bool is_approx() const { return approx_; }
    bool is_exact() const { return !approx_; }
    bool is_rational() const { return !approx_ && !ext_; }

    const Rational& rat() const;
    const std::vector<Rational>& coords() const { return coords_; }
    const ExtensionPtr& ext() const { return ext_; }
    std::complex<double> approx_value() const { return z_; }

    bool is_zero() const;
    bool is_one() const;

    Coefficient operator-() const;
    friend Coefficient operator+(const Coefficient& a, const Coefficient& b);
    friend Coefficient operator-(const Coefficient& a, const Coefficient& b);
    friend Coefficient operator*(const Coefficient& a, const Coefficient& b);
    friend Coefficient operator/(const Coefficient& a, const Coefficient& b);
    Coefficient& operator+=(const Coefficient& b) { return *this = *this + b; }
    Coefficient& operator-=(const Coefficient& b) { return *this = *this - b; }
    Coefficient& operator*=(const Coefficient& b) { return *this = *this * b; }
    Coefficient& operator/=(const Coefficient& b) { return *this = *this / b; }

    bool operator==(const Coefficient& o) const;
    bool operator!=(const Coefficient& o) const { return !(*this == o); }

    Coefficient inverse() const;
    Coefficient pow(long e) const;

    // Square root inside the current field, when one exists exactly.
    // Rational case: perfect-square test. Extension case: solves
    // (u + v*alpha)^2 = *this over Q (quadratic fields only).
    std::optional<Coefficient> sqrt_in_field() const;

    std::complex<double> numeric() const;
    double abs_numeric() const;

    Coefficient to_approx() const { return approx(numeric()); }

    // Deterministic total order used for canonical branch sorting:
    // rationals exactly, otherwise by embedded numeric value with an exact
    // coordinate tame-break.
    static int compare_canonical(const Coefficient& a, const Coefficient& b);

    std::string str() const;

    // Tolerance for approx-mode zero tests; set once per run from RunConfig.
    static double approx_eps;

private:
    std::vector<Rational> coords_;   // size 1 (rational) or ext->degree()
    ExtensionPtr ext_;               // null for plain rationals
    std::complex<double> z_{0.0, 0.0};
    bool approx_ = false;

    void normalize();
    static void align(Coefficient& a, Coefficient& b);
};

inline Coefficient operator*(const Rational& a, const Coefficient& b) { return Coefficient(a) * b; }

}  // namespace arcnash
