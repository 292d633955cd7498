#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arcnash/numberfield.hpp"
#include "arcnash/truncseries.hpp"

namespace arcnash {

// Lower-left Newton polygon of a bivariate polynomial or series.
// Vertices are listed with decreasing x-exponent, so the slopes
// mu = dj/di (the candidate branch exponents) strictly increase.
struct NewtonPolygon {
    std::vector<std::pair<int, int>> support;
    std::vector<std::pair<int, int>> vertices;
    std::vector<Rational> slopes;
};

NewtonPolygon newton_polygon(const MultiPoly& g);
NewtonPolygon newton_polygon(const TruncSeries& g);

// g(x, s^r) = unit * prod_i (x - sigma_i(s)), unit(0,0) != 0, sigma_i(0) = 0.
// Branches are sorted canonically (valuation, then leading coefficient);
// repeated factors appear as equal entries. zero_count counts branches that
// vanish identically to the working order.
struct PuiseuxFactorization {
    int r = 1;
    TruncSeries unit;                  // bivariate in (x_var, s_var)
    std::vector<TruncSeries> branches; // sigma_i(s)
    int zero_count = 0;
    int residual_order = 0;            // identity verified through this total order
    bool approx_fallback = false;
    int shear_lambda = 0;              // input replaced by g(x, y + lambda*x)
    std::string x_var = "x", s_var = "y";

    int branch_count() const { return static_cast<int>(branches.size()); }
};

// order: branches and the residual identity are produced through total
// order `order`. The context carries the coefficient mode; exact-mode
// failures fall back to approx with a warning recorded on the result.
PuiseuxFactorization puiseux_factor(const MultiPoly& g, int order, FieldContext ctx = {});
PuiseuxFactorization puiseux_factor(const TruncSeries& g, int order, FieldContext ctx = {});

// Orbit of branches under s -> zeta_r s; one cycle per irreducible analytic
// germ factor.
struct BranchCycle {
    std::vector<int> branch_indices;
    int length = 0;
};

struct AnalyticFactorization {
    PuiseuxFactorization factorization;
    std::vector<BranchCycle> cycles;
    int factor_count() const { return static_cast<int>(cycles.size()); }
};

AnalyticFactorization analytic_factor(const MultiPoly& f, int order, FieldContext ctx = {});

// Local divisor class group of xy = f(z,t): Z^{k-1} for k analytic factors.
struct ClassGroupReport {
    int factor_count = 0;
    int rank = 0;        // free rank, torsion is always trivial here
    bool factorial = false;
    std::vector<int> cycle_lengths;
};

ClassGroupReport class_group(const MultiPoly& f, int order, FieldContext ctx = {});

}  // namespace arcnash
