#pragma once

// Test-only oracles, kept independent of the library code paths they check.

#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "arcnash/multipoly.hpp"
#include "arcnash/rational.hpp"

namespace oracles {

using arcnash::Coefficient;
using arcnash::MultiPoly;
using arcnash::Rational;

// binomial-series coefficient C(alpha, k) = alpha (alpha-1) ... (alpha-k+1) / k!
inline Rational binomial_coeff(const Rational& alpha, int k) {
    Rational num(1), den(1);
    for (int j = 0; j < k; ++j) {
        num *= (alpha - Rational(j));
        den *= Rational(j + 1);
    }
    return num / den;
}

// coefficients of sqrt(1+x) up to order n
inline std::vector<Rational> sqrt_one_plus_series(int n) {
    std::vector<Rational> out;
    for (int k = 0; k <= n; ++k) out.push_back(binomial_coeff(Rational(1, 2), k));
    return out;
}

// schoolbook long division of bivariate dense polynomials (t-major) by a
// univariate t-polynomial; returns the quotient, requires exact division
// through the given orders
using Dense2 = std::vector<std::vector<Rational>>;  // [t-deg][s-deg]

inline Dense2 long_division(const Dense2& a, const std::vector<Rational>& b, int tmax, int smax) {
    int bv = 0;
    while (bv < static_cast<int>(b.size()) && b[bv] == 0) ++bv;
    Dense2 rem = a;
    rem.resize(tmax + 1, std::vector<Rational>(smax + 1, Rational(0)));
    for (auto& row : rem) row.resize(smax + 1, Rational(0));
    Dense2 q(tmax + 1, std::vector<Rational>(smax + 1, Rational(0)));
    for (int d = bv; d <= tmax; ++d) {
        for (int s = 0; s <= smax; ++s) {
            Rational f = rem[d][s] / b[bv];
            q[d - bv][s] = f;
            if (f == 0) continue;
            for (int j = bv; j < static_cast<int>(b.size()) && d - bv + j <= tmax; ++j)
                rem[d - bv + j][s] -= f * b[j];
        }
    }
    return q;
}

// gift-wrapping lower-left hull on integer points: a point is a hull vertex
// iff some line through it leaves all other points weakly above
inline std::vector<std::pair<int, int>> hull_by_wrapping(std::vector<std::pair<int, int>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<std::pair<int, int>> hull;
    // start at the point with minimal i (then minimal j)
    auto cur = *std::min_element(pts.begin(), pts.end());
    hull.push_back(cur);
    for (;;) {
        // next vertex: the point making the shallowest clockwise turn downward
        std::optional<std::pair<int, int>> best;
        for (auto p : pts) {
            if (p.first <= cur.first || p.second >= cur.second) continue;  // need i up, j down
            if (!best) {
                best = p;
                continue;
            }
            long cross = static_cast<long>(best->first - cur.first) * (p.second - cur.second) -
                         static_cast<long>(best->second - cur.second) * (p.first - cur.first);
            if (cross < 0 || (cross == 0 && p.first > best->first)) best = p;
        }
        if (!best) break;
        hull.push_back(*best);
        cur = *best;
    }
    return hull;  // i ascending, j descending
}

// brute-force reachable-component set by enumerating all partitions A1, A2
// of D branch slots (the first m are the zero branches), both sides holding
// at least one zero slot
inline std::set<int> reachable_by_partitions(int m, int a1, int a2) {
    const int D = a1 + a2;
    std::set<int> out;
    for (unsigned mask = 0; mask < (1u << D); ++mask) {
        if (__builtin_popcount(mask) != a1) continue;
        int zeros_in_A1 = 0;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) ++zeros_in_A1;
        if (zeros_in_A1 < 1 || m - zeros_in_A1 < 1) continue;
        out.insert(zeros_in_A1);
    }
    return out;
}

// Kronecker-substitution square detector with a top-down univariate ansatz:
// independent of the multivariate leading-term algorithm it cross-checks.
inline std::optional<MultiPoly> square_root_by_ansatz(const MultiPoly& p) {
    using arcnash::Int;
    if (p.is_zero()) return MultiPoly(p.vars());
    const int nv = static_cast<int>(p.vars().size());
    int maxd = 0;
    for (const auto& [e, c] : p.terms())
        for (int x : e) maxd = std::max(maxd, x);
    const long M = maxd + 1;
    // fold
    std::map<long, Rational> P;
    long degP = 0;
    for (const auto& [e, c] : p.terms()) {
        long E = 0, base = 1;
        for (int i = 0; i < nv; ++i) {
            E += e[i] * base;
            base *= M;
        }
        P[E] = c.rat();
        degP = std::max(degP, E);
    }
    if (degP % 2 != 0) return std::nullopt;
    const long dH = degP / 2;
    std::vector<Rational> Pv(degP + 1, Rational(0));
    for (auto& [e, c] : P) Pv[e] = c;
    auto lead = arcnash::rational_sqrt(Pv[degP]);
    if (!lead) return std::nullopt;
    std::vector<Rational> H(dH + 1, Rational(0));
    H[dH] = *lead;
    for (long k = dH - 1; k >= 0; --k) {
        Rational acc(0);
        for (long i = k + 1; i <= dH && dH + k - i >= 0; ++i)
            if (dH + k - i <= dH) acc += H[i] * H[dH + k - i];
        H[k] = (Pv[dH + k] - acc) / (2 * H[dH]);
    }
    // full verification of the univariate identity
    std::vector<Rational> sq(2 * dH + 1, Rational(0));
    for (long i = 0; i <= dH; ++i)
        for (long j = 0; j <= dH; ++j) sq[i + j] += H[i] * H[j];
    for (long e = 0; e <= degP; ++e)
        if (sq[e] != Pv[e]) return std::nullopt;
    // unfold and verify no-carry digits reproduce p
    MultiPoly h(p.vars());
    for (long e = 0; e <= dH; ++e) {
        if (H[e] == 0) continue;
        MultiPoly::Exponents ex(nv, 0);
        long rest = e;
        for (int i = 0; i < nv; ++i) {
            ex[i] = static_cast<int>(rest % M);
            rest /= M;
        }
        if (rest != 0) return std::nullopt;
        h.set_term(ex, Coefficient(H[e]));
    }
    if (!(h * h - p).is_zero()) return std::nullopt;
    return h;
}

// random sparse polynomial with small rational coefficients
inline MultiPoly random_poly(std::mt19937& rng, const std::vector<std::string>& vars, int maxdeg,
                             int terms, bool nonzero_required = true) {
    std::uniform_int_distribution<int> dcoef(-6, 6);
    std::uniform_int_distribution<int> dden(1, 3);
    std::uniform_int_distribution<int> dexp(0, maxdeg);
    for (;;) {
        MultiPoly p(vars);
        for (int t = 0; t < terms; ++t) {
            MultiPoly::Exponents e(vars.size());
            int budget = maxdeg;
            for (auto& x : e) {
                x = dexp(rng) % (budget + 1);
                budget -= x;
            }
            int c = dcoef(rng);
            if (c == 0) continue;
            p.set_term(e, p.coefficient(e) + Coefficient(Rational(c, dden(rng))));
        }
        if (!nonzero_required || !p.is_zero()) return p;
    }
}

}  // namespace oracles
