#pragma once

#include <utility>
#include <vector>

#include "arcnash/coefficient.hpp"

namespace arcnash {

// Field state shared across one computation: plain rationals, rationals plus
// one installed extension, or complex approx. Root solving may install the
// extension once; a second incompatible need raises needs_approx and the
// caller restarts in approx mode.
struct FieldContext {
    bool approx = false;
    double eps = 1e-9;
    ExtensionPtr ext;
    std::vector<std::string> warnings;

    // sqrt(d) as a Coefficient, d a non-square rational. Installs or reuses
    // the quadratic layer; throws needs_approx when incompatible.
    Coefficient sqrt_rational(const Rational& d);

    // zeta_q^j exactly; only orders 1,2,3,4,6 are representable in one
    // quadratic layer.
    Coefficient root_of_unity(int q, int j);

    Coefficient make(const Rational& q) const {
        return approx ? Coefficient::approx({to_double(q), 0.0}) : Coefficient(q);
    }
};

// Dense univariate polynomial over Coefficient, index = degree.
using UniPoly = std::vector<Coefficient>;

int upoly_degree(const UniPoly& p);
Coefficient upoly_eval(const UniPoly& p, const Coefficient& x);
UniPoly upoly_derivative(const UniPoly& p);
// quotient of p by (x - r); remainder returned through *rem if non-null
UniPoly upoly_deflate(const UniPoly& p, const Coefficient& r, Coefficient* rem = nullptr);
UniPoly upoly_mul(const UniPoly& a, const UniPoly& b);
// monic gcd over an exact field
UniPoly upoly_gcd(UniPoly a, UniPoly b);
std::pair<UniPoly, UniPoly> upoly_divmod(const UniPoly& a, const UniPoly& b);

// All complex roots with multiplicity. Exact mode finds rational roots,
// one quadratic layer, and binomial-closable cases; anything else throws
// needs_approx. Approx mode runs Durand-Kerner with cluster detection.
std::vector<std::pair<Coefficient, int>> solve_roots(const UniPoly& p, FieldContext& ctx);

}  // namespace arcnash
