#include "arcnash/coefficient.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace arcnash {

double Coefficient::approx_eps = 1e-9;

Extension::Extension(Rational base, int degree, int root_index)
    : base_(std::move(base)), degree_(degree), root_index_(root_index) {
    if (degree_ < 2) throw std::invalid_argument("Extension: degree must be >= 2");
    if (root_index_ < 0 || root_index_ >= degree_)
        throw std::invalid_argument("Extension: root index out of range");
    if (perfect_kth_root(base_, degree_))
        throw std::invalid_argument("Extension: base is a perfect power, field is not reduced");
}

std::complex<double> Extension::root() const {
    const double c = to_double(base_);
    const double rho = std::pow(std::abs(c), 1.0 / degree_);
    const double theta = (c < 0 ? std::numbers::pi : 0.0);
    const double arg = (theta + 2.0 * std::numbers::pi * root_index_) / degree_;
    return std::polar(rho, arg);
}

std::string Extension::name() const {
    std::ostringstream os;
    os << "(" << base_ << ")^(1/" << degree_ << ")#" << root_index_;
    return os.str();
}

Coefficient Coefficient::approx(std::complex<double> z) {
    Coefficient c;
    c.coords_.clear();
    c.approx_ = true;
    c.z_ = z;
    return c;
}

Coefficient Coefficient::algebraic(std::vector<Rational> coords, ExtensionPtr ext) {
    if (!ext) throw std::invalid_argument("algebraic: null extension");
    if (static_cast<int>(coords.size()) != ext->degree())
        throw std::invalid_argument("algebraic: coordinate count != extension degree");
    Coefficient c;
    c.coords_ = std::move(coords);
    c.ext_ = std::move(ext);
    c.normalize();
    return c;
}

void Coefficient::normalize() {
    if (approx_ || !ext_) return;
    for (size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return;
    coords_.resize(1);
    ext_.reset();
}

const Rational& Coefficient::rat() const {
    if (!is_rational()) throw mode_mix_error("coefficient is not a plain rational");
    return coords_[0];
}

bool Coefficient::is_zero() const {
    if (approx_) return std::abs(z_) <= approx_eps;
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

bool Coefficient::is_one() const {
    if (approx_) return std::abs(z_ - 1.0) <= approx_eps;
    if (coords_[0] != 1) return false;
    for (size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

// Promote plain rationals into the other operand's extension; reject
// exact/approx mixing and incompatible extensions. An exact zero carries no
// precision and may join an approx computation.
void Coefficient::align(Coefficient& a, Coefficient& b) {
    if (a.approx_ != b.approx_) {
        Coefficient& exact_side = a.approx_ ? b : a;
        if (!exact_side.is_zero())
            throw mode_mix_error("exact and approx coefficients in one operation");
        exact_side = approx({0.0, 0.0});
    }
    if (a.approx_) return;
    if (a.ext_ && b.ext_) {
        if (!a.ext_->same_field(*b.ext_))
            throw needs_approx("coefficients from two different extensions: " + a.ext_->name() +
                               " vs " + b.ext_->name());
        return;
    }
    if (a.ext_ && !b.ext_) {
        b.coords_.resize(a.ext_->degree(), Rational(0));
        b.ext_ = a.ext_;
    } else if (b.ext_ && !a.ext_) {
        a.coords_.resize(b.ext_->degree(), Rational(0));
        a.ext_ = b.ext_;
    }
}

Coefficient Coefficient::operator-() const {
    Coefficient r = *this;
    if (approx_) {
        r.z_ = -z_;
        return r;
    }
    for (auto& c : r.coords_) c = -c;
    return r;
}

Coefficient operator+(const Coefficient& a0, const Coefficient& b0) {
    Coefficient a = a0, b = b0;
    Coefficient::align(a, b);
    if (a.approx_) return Coefficient::approx(a.z_ + b.z_);
    for (size_t i = 0; i < a.coords_.size(); ++i) a.coords_[i] += b.coords_[i];
    a.normalize();
    return a;
}

Coefficient operator-(const Coefficient& a0, const Coefficient& b0) { return a0 + (-b0); }

Coefficient operator*(const Coefficient& a0, const Coefficient& b0) {
    Coefficient a = a0, b = b0;
    Coefficient::align(a, b);
    if (a.approx_) return Coefficient::approx(a.z_ * b.z_);
    if (!a.ext_) {
        a.coords_[0] *= b.coords_[0];
        return a;
    }
    const int k = a.ext_->degree();
    const Rational& c = a.ext_->base();
    std::vector<Rational> out(k, Rational(0));
    for (int i = 0; i < k; ++i) {
        if (a.coords_[i] == 0) continue;
        for (int j = 0; j < k; ++j) {
            if (b.coords_[j] == 0) continue;
            Rational prod = a.coords_[i] * b.coords_[j];
            int e = i + j;
            if (e >= k) {
                e -= k;  // alpha^k = c
                prod *= c;
            }
            out[e] += prod;
        }
    }
    a.coords_ = std::move(out);
    a.normalize();
    return a;
}

Coefficient Coefficient::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero coefficient");
    if (approx_) return approx(1.0 / z_);
    if (!ext_) {
        Coefficient r;
        r.coords_[0] = Rational(1) / coords_[0];
        return r;
    }
    // Extended Euclid of the element against X^k - c over Q.
    const int k = ext_->degree();
    std::vector<Rational> mod(k + 1, Rational(0));
    mod[0] = -ext_->base();
    mod[k] = 1;
    std::vector<Rational> a = mod;
    std::vector<Rational> b = coords_;
    auto deg = [](const std::vector<Rational>& p) {
        for (int d = static_cast<int>(p.size()) - 1; d >= 0; --d)
            if (p[d] != 0) return d;
        return -1;
    };
    // Bezout coefficients tracking only the cofactor of `coords_`.
    std::vector<Rational> s0(1, Rational(0)), s1(1, Rational(1));
    while (deg(b) > 0) {
        // divide a by b
        std::vector<Rational> q(std::max<size_t>(1, a.size()), Rational(0));
        std::vector<Rational> r = a;
        int db = deg(b);
        for (int d = deg(r); d >= db; d = deg(r)) {
            Rational f = r[d] / b[db];
            q[d - db] += f;
            for (int j = 0; j <= db; ++j) r[d - db + j] -= f * b[j];
            if (deg(r) == d) r[d] = 0;  // numeric safety, exact arithmetic keeps this a no-op
        }
        // (a, b) <- (b, r);  (s0, s1) <- (s1, s0 - q*s1)
        std::vector<Rational> qs(q.size() + s1.size(), Rational(0));
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
        }
        std::vector<Rational> s2(std::max(s0.size(), qs.size()), Rational(0));
        for (size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
        for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
        a = b;
        b = r;
        s0 = s1;
        s1 = std::move(s2);
    }
    int db = deg(b);
    if (db != 0)
        throw needs_approx("element has no inverse in Q(alpha); modulus not irreducible?");
    // b is the gcd constant; inverse = s1 / b[0] reduced mod X^k - c.
    std::vector<Rational> inv(k, Rational(0));
    for (size_t i = 0; i < s1.size(); ++i) {
        if (s1[i] == 0) continue;
        Rational v = s1[i] / b[0];
        size_t e = i;
        Rational mul(1);
        while (e >= static_cast<size_t>(k)) {
            e -= k;
            mul *= ext_->base();
        }
        inv[e] += v * mul;
    }
    return algebraic(std::move(inv), ext_);
}

Coefficient operator/(const Coefficient& a, const Coefficient& b) { return a * b.inverse(); }

bool Coefficient::operator==(const Coefficient& o) const {
    if (approx_ != o.approx_) return false;
    if (approx_) return std::abs(z_ - o.z_) <= approx_eps;
    Coefficient a = *this, b = o;
    try {
        align(a, b);
    } catch (const needs_approx&) {
        return false;
    }
    return a.coords_ == b.coords_;
}

Coefficient Coefficient::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Coefficient r(1), base = *this;
    if (approx_) r = approx({1.0, 0.0});
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

std::optional<Coefficient> Coefficient::sqrt_in_field() const {
    if (approx_) return approx(std::sqrt(z_));
    if (!ext_) {
        auto r = rational_sqrt(coords_[0]);
        if (!r) return std::nullopt;
        return Coefficient(*r);
    }
    if (ext_->degree() != 2) return std::nullopt;
    // (u + v alpha)^2 = e + f alpha with alpha^2 = d:
    //   u^2 + v^2 d = e,  2uv = f.
    const Rational d = ext_->base();
    const Rational e = coords_[0], f = coords_[1];
    if (f == 0) {
        if (auto u = rational_sqrt(e)) return Coefficient(*u);
        if (auto v2 = rational_sqrt(e / d))  // sqrt(e) = v*alpha
            return algebraic({Rational(0), *v2}, ext_);
        return std::nullopt;
    }
    // 4u^4 - 4eu^2 + f^2 d = 0  =>  u^2 = (e +- sqrt(e^2 - f^2 d)) / 2
    auto disc = rational_sqrt(e * e - f * f * d);
    if (!disc) return std::nullopt;
    for (int sign : {+1, -1}) {
        Rational u2 = (e + Rational(sign) * (*disc)) / 2;
        if (auto u = rational_sqrt(u2)) {
            if (*u == 0) continue;
            Rational v = f / (2 * (*u));
            return algebraic({*u, v}, ext_);
        }
    }
    return std::nullopt;
}

std::complex<double> Coefficient::numeric() const {
    if (approx_) return z_;
    if (!ext_) return {to_double(coords_[0]), 0.0};
    std::complex<double> alpha = ext_->root();
    std::complex<double> acc{0.0, 0.0};
    for (int i = ext_->degree() - 1; i >= 0; --i) acc = acc * alpha + to_double(coords_[i]);
    return acc;
}

double Coefficient::abs_numeric() const { return std::abs(numeric()); }

int Coefficient::compare_canonical(const Coefficient& a, const Coefficient& b) {
    if (a.is_rational() && b.is_rational()) {
        if (a.coords_[0] < b.coords_[0]) return -1;
        if (a.coords_[0] > b.coords_[0]) return 1;
        return 0;
    }
    auto za = a.numeric(), zb = b.numeric();
    if (std::abs(za.real() - zb.real()) > approx_eps) return za.real() < zb.real() ? -1 : 1;
    if (std::abs(za.imag() - zb.imag()) > approx_eps) return za.imag() < zb.imag() ? -1 : 1;
    if (a.is_exact() && b.is_exact()) {
        if (a.coords_ < b.coords_) return -1;
        if (b.coords_ < a.coords_) return 1;
    }
    return 0;
}

std::string Coefficient::str() const {
    std::ostringstream os;
    if (approx_) {
        os << z_.real();
        if (z_.imag() != 0) os << (z_.imag() > 0 ? "+" : "") << z_.imag() << "i";
        return os.str();
    }
    if (!ext_) return rational_str(coords_[0]);
    os << "(" << rational_str(coords_[0]);
    for (size_t i = 1; i < coords_.size(); ++i) os << ", " << rational_str(coords_[i]);
    os << " : " << ext_->name() << ")";
    return os.str();
}

}  // namespace arcnash
