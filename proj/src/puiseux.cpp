#include "arcnash/puiseux.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

namespace arcnash {

namespace {

using EKey = std::pair<int, int>;  // (x-exponent, y-exponent)
using BiPoly = std::map<EKey, Coefficient>;

Coefficient one_like(bool approx) {
    return approx ? Coefficient::approx({1.0, 0.0}) : Coefficient(1);
}
Coefficient int_like(bool approx, long v) {
    return approx ? Coefficient::approx({static_cast<double>(v), 0.0})
                  : Coefficient(static_cast<int>(v));
}

void bp_add(BiPoly& p, EKey e, const Coefficient& c) {
    if (c.is_zero()) return;
    auto it = p.find(e);
    if (it == p.end()) {
        p.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

BiPoly bp_from_multipoly(const MultiPoly& g) {
    if (g.vars().size() != 2)
        throw std::invalid_argument("puiseux: input must be bivariate");
    BiPoly p;
    for (const auto& [e, c] : g.terms()) bp_add(p, {e[0], e[1]}, c);
    return p;
}

BiPoly bp_from_series(const TruncSeries& g) {
    if (g.nvars() != 2)
        throw std::invalid_argument("puiseux: input series must be bivariate");
    BiPoly p;
    for (const auto& [e, c] : g.terms()) bp_add(p, {e[0], e[1]}, c);
    return p;
}

BiPoly bp_to_approx(const BiPoly& g) {
    BiPoly p;
    for (const auto& [e, c] : g) bp_add(p, e, c.to_approx());
    return p;
}


// smallest x-exponent among pure-x terms (y = 0); -1 when g(x,0) == 0
int bp_mult_x_at_y0(const BiPoly& g) {
    int m = -1;
    for (const auto& [e, c] : g)
        if (e.second == 0 && (m < 0 || e.first < m)) m = e.first;
    return m;
}

int bp_min_xexp(const BiPoly& g) {
    int m = -1;
    for (const auto& [e, c] : g)
        if (m < 0 || e.first < m) m = e.first;
    return m;
}

// g(x, y + lambda*x)
BiPoly bp_shear(const BiPoly& g, int lambda, bool approx) {
    BiPoly out;
    Coefficient lam = int_like(approx, lambda);
    for (const auto& [e, a] : g) {
        Coefficient binom = one_like(approx);
        Coefficient lpow = one_like(approx);
        for (int k = 0; k <= e.second; ++k) {
            bp_add(out, {e.first + k, e.second - k}, a * binom * lpow);
            binom = binom * int_like(approx, e.second - k) / int_like(approx, k + 1);
            lpow = lpow * lam;
        }
    }
    return out;
}

struct Edge {
    int p = 1, q = 1;  // slope mu = q/p in lowest terms
    UniPoly poly;      // full edge polynomial; nonzero roots are leading coefficients
};

// Vertices of the lower-left hull, increasing x-exponent, trimmed to the
// strictly descending-j part (edges with mu > 0 only).
std::vector<std::pair<int, int>> lower_left_vertices(const std::vector<std::pair<int, int>>& pts) {
    std::map<int, int> minj;
    for (auto [i, j] : pts) {
        auto it = minj.find(i);
        if (it == minj.end() || j < it->second) minj[i] = j;
    }
    std::vector<std::pair<long, long>> hull;
    for (auto [i, j] : minj) {
        std::pair<long, long> pt{i, j};
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            long cross = (b.first - a.first) * (pt.second - a.second) -
                         (b.second - a.second) * (pt.first - a.first);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    size_t end = 1;
    while (end < hull.size() && hull[end].second < hull[end - 1].second) ++end;
    std::vector<std::pair<int, int>> out;
    for (size_t i = 0; i < end; ++i)
        out.push_back({static_cast<int>(hull[i].first), static_cast<int>(hull[i].second)});
    return out;
}

// Edges with mu > 0, x-exponents restricted to the branch-relevant range [0, m].
std::vector<Edge> polygon_edges(const BiPoly& g, int m) {
    std::vector<std::pair<int, int>> pts;
    for (const auto& [e, c] : g)
        if (e.first <= m) pts.push_back({e.first, e.second});
    auto verts = lower_left_vertices(pts);
    std::vector<Edge> edges;
    for (size_t k = 0; k + 1 < verts.size(); ++k) {
        auto [i2, j2] = verts[k];      // smaller i, larger j
        auto [i1, j1] = verts[k + 1];  // larger i, smaller j
        int di = i1 - i2, dj = j2 - j1;
        int gg = std::gcd(di, dj);
        Edge ed;
        ed.p = di / gg;
        ed.q = dj / gg;
        ed.poly.assign(di + 1, Coefficient(0));
        for (const auto& [e, c] : g) {
            if (e.first < i2 || e.first > i1) continue;
            long lhs = static_cast<long>(dj) * e.first + static_cast<long>(di) * e.second;
            long rhs = static_cast<long>(dj) * i2 + static_cast<long>(di) * j2;
            if (lhs != rhs) continue;
            ed.poly[e.first - i2] += c;
        }
        edges.push_back(std::move(ed));
    }
    return edges;
}

// g1(x1, y1) = g(y1^q (c + x1), y1^p) / y1^w with terms above prune_order
// in y1 dropped; they cannot influence branch coefficients below that order.
BiPoly edge_substitute(const BiPoly& g, int p, int q, const Coefficient& c, long prune_order,
                       bool approx) {
    long w = -1;
    for (const auto& [e, a] : g) {
        long ww = static_cast<long>(q) * e.first + static_cast<long>(p) * e.second;
        if (w < 0 || ww < w) w = ww;
    }
    BiPoly out;
    for (const auto& [e, a] : g) {
        long base = static_cast<long>(q) * e.first + static_cast<long>(p) * e.second - w;
        if (base > prune_order) continue;
        Coefficient binom = one_like(approx);
        Coefficient cpow = c.pow(e.first);
        Coefficient cinv = Coefficient(1);
        bool have_inv = false;
        for (int k = 0; k <= e.first; ++k) {
            bp_add(out, {k, static_cast<int>(base)}, a * binom * cpow);
            if (k == e.first) break;
            binom = binom * int_like(approx, e.first - k) / int_like(approx, k + 1);
            if (!have_inv) {
                cinv = c.inverse();
                have_inv = true;
            }
            cpow = cpow * cinv;
        }
    }
    return out;
}

// Unique power-series branch of W with mult_x W(x,0) = 1, by Newton iteration.
TruncSeries newton_lift_simple(const BiPoly& W, int target, bool approx) {
    if (target < 0) target = 0;
    const std::vector<std::string> yv{"y"};
    int dx = 0;
    for (const auto& [e, c] : W) dx = std::max(dx, e.first);
    std::vector<TruncSeries> A(dx + 1, TruncSeries::zero(yv, target));
    for (const auto& [e, c] : W)
        if (e.second <= target) A[e.first].set({e.second, 0}, A[e.first].coefficient(e.second) + c);
    if (dx < 1 || A[1].coefficient(0).is_zero())
        throw verification_error("puiseux: Newton lifting called on a non-simple branch");

    TruncSeries tau = TruncSeries::zero(yv, target);
    auto eval = [&](const TruncSeries& t, bool deriv) {
        TruncSeries acc = TruncSeries::zero(yv, target);
        TruncSeries tp = TruncSeries::constant(yv, target, one_like(approx));
        for (int i = 0; i <= dx; ++i) {
            if (deriv) {
                if (i + 1 <= dx) acc += A[i + 1] * tp * int_like(approx, i + 1);
            } else {
                acc += A[i] * tp;
            }
            if (i < dx) tp = tp * t;
        }
        return acc;
    };
    int steps = 2;
    for (int t = 1; t < target + 2; t *= 2) ++steps;
    for (int it = 0; it < steps + 2; ++it) {
        TruncSeries val = eval(tau, false);
        if (val.is_zero_to_order()) break;
        TruncSeries der = eval(tau, true);
        tau = (tau - divide_exact(val, der)).truncated(target);
    }
    if (!eval(tau, false).is_zero_to_order())
        throw verification_error("puiseux: Newton lifting failed to converge");
    return tau;
}

struct RawBranch {
    std::map<Rational, Coefficient> coeffs;  // exponent over the current y
    int mult = 1;
};

// True when g1 = unit * (x - tau)^nu through y-order `target`: the x-degree
// slices below nu of g1(x + tau, y) all vanish.
bool repeated_branch_divides(const BiPoly& g1, const TruncSeries& tau, int nu, int target,
                             bool approx) {
    const std::vector<std::string> yv{"y"};
    int dx = 0;
    for (const auto& [e, c] : g1) dx = std::max(dx, e.first);
    std::vector<TruncSeries> taupow;
    taupow.push_back(TruncSeries::constant(yv, target, one_like(approx)));
    for (int k = 1; k <= dx; ++k) taupow.push_back(taupow.back() * tau);
    for (int k = 0; k < nu; ++k) {
        TruncSeries Ak = TruncSeries::zero(yv, target);
        for (const auto& [e, a] : g1) {
            if (e.first < k || e.second > target) continue;
            Coefficient binom = one_like(approx);
            for (int t = 0; t < k; ++t)
                binom = binom * int_like(approx, e.first - t) / int_like(approx, t + 1);
            TruncSeries add = taupow[e.first - k] * (a * binom);
            for (const auto& [ee, cc] : add.terms())
                if (ee[0] + e.second <= target)
                    Ak.set({ee[0] + e.second, 0}, Ak.coefficient(ee[0] + e.second) + cc);
        }
        if (!Ak.is_zero_to_order()) return false;
    }
    return true;
}

std::vector<RawBranch> branch_rec(BiPoly g, const Rational& target, FieldContext& ctx, int depth) {
    if (depth > 128) throw verification_error("puiseux: branch recursion did not stabilize");
    std::vector<RawBranch> out;
    if (g.empty()) throw verification_error("puiseux: zero polynomial in branch recursion");

    int k = bp_min_xexp(g);
    if (k > 0) {
        RawBranch zb;
        zb.mult = k;
        out.push_back(zb);
        BiPoly g2;
        for (const auto& [e, c] : g) g2.emplace(EKey{e.first - k, e.second}, c);
        g = std::move(g2);
    }
    int m = bp_mult_x_at_y0(g);
    if (m < 0)
        throw verification_error(
            ctx.approx
                ? "puiseux: approx arithmetic lost the branch structure (ill-conditioned "
                  "coefficients; the input needs more precision than complex doubles)"
                : "puiseux: g(x,0)=0 inside recursion; normalization missed");
    if (m == 0) return out;

    for (const auto& edge : polygon_edges(g, m)) {
        auto roots = solve_roots(edge.poly, ctx);
        for (const auto& [c, nu] : roots) {
            if (c.is_zero()) continue;  // vertex coefficient is nonzero by construction
            Rational mu(edge.q, edge.p);
            if (mu > target) {
                RawBranch rb;
                rb.mult = nu;
                out.push_back(rb);  // leading term already beyond the working order
                continue;
            }
            Rational child_target_r = target * edge.p - edge.q;
            long child_target = (numerator(child_target_r) / denominator(child_target_r))
                                    .convert_to<long>();
            BiPoly g1 = edge_substitute(g, edge.p, edge.q, c, child_target, ctx.approx);
            auto compose = [&](const std::map<Rational, Coefficient>& child, int mult) {
                RawBranch rb;
                rb.mult = mult;
                rb.coeffs[mu] = c;
                for (const auto& [e, cc] : child) {
                    Rational pe = (Rational(edge.q) + e) / Rational(edge.p);
                    if (pe <= target) rb.coeffs[pe] = cc;
                }
                out.push_back(std::move(rb));
            };
            auto series_to_map = [](const TruncSeries& t) {
                std::map<Rational, Coefficient> m2;
                for (const auto& [e, cc] : t.terms()) m2[Rational(e[0])] = cc;
                return m2;
            };
            // The lifting path is chosen from the actual structure of g1:
            // in exact mode mult_x g1(x,0) equals the root multiplicity nu,
            // while approx root clustering may over- or under-merge, so nu
            // is only a hint there.
            int mult1 = bp_mult_x_at_y0(g1);
            if (!ctx.approx && mult1 != nu)
                throw verification_error("puiseux: edge root multiplicity inconsistent");
            if (mult1 == 1) {
                TruncSeries tau =
                    newton_lift_simple(g1, static_cast<int>(child_target), ctx.approx);
                compose(series_to_map(tau), 1);
                continue;
            }
            bool emitted = false;
            if (mult1 >= 2) {
                // mult1-fold branch test: tau is the simple root of the
                // (mult1-1)-st x-derivative; accept when (x - tau)^mult1 divides.
                BiPoly h = g1;
                for (int t = 0; t < mult1 - 1; ++t) {
                    BiPoly hd;
                    for (const auto& [e, cc] : h)
                        if (e.first >= 1)
                            bp_add(hd, {e.first - 1, e.second},
                                   cc * int_like(ctx.approx, e.first));
                    h = std::move(hd);
                }
                if (bp_mult_x_at_y0(h) == 1) {
                    try {
                        TruncSeries tau =
                            newton_lift_simple(h, static_cast<int>(child_target), ctx.approx);
                        if (repeated_branch_divides(g1, tau, mult1, static_cast<int>(child_target),
                                                    ctx.approx)) {
                            compose(series_to_map(tau), mult1);
                            emitted = true;
                        }
                    } catch (const verification_error&) {
                        // genuine split below; fall through
                    }
                }
            }
            if (!emitted) {
                auto subs = branch_rec(g1, child_target_r, ctx, depth + 1);
                int total = 0;
                for (const auto& sb : subs) total += sb.mult;
                if (total != nu && !ctx.approx)
                    throw verification_error("puiseux: branch count mismatch in recursion");
                for (const auto& sb : subs) compose(sb.coeffs, sb.mult);
            }
        }
    }
    return out;
}

int branch_compare(const TruncSeries& a, const TruncSeries& b) {
    auto va = a.valuation(), vb = b.valuation();
    long xa = va ? *va : std::numeric_limits<long>::max();
    long xb = vb ? *vb : std::numeric_limits<long>::max();
    if (xa != xb) return xa < xb ? -1 : 1;
    int n = std::min(a.order(), b.order());
    for (int e = 0; e <= n; ++e) {
        int c = Coefficient::compare_canonical(a.coefficient(e), b.coefficient(e));
        if (c != 0) return c;
    }
    return 0;
}

PuiseuxFactorization factor_bipoly(BiPoly g, const std::string& x_var, const std::string& y_var,
                                   int order, FieldContext ctx) {
    PuiseuxFactorization pf;
    pf.x_var = x_var;
    pf.s_var = y_var;
    if (g.empty()) throw precondition_error("puiseux_factor: input vanishes to working order");
    if (ctx.approx) g = bp_to_approx(g);

    int lambda = 0;
    while (bp_mult_x_at_y0(g) < 0) {
        ++lambda;
        if (lambda > 40)
            throw precondition_error("puiseux_factor: could not normalize g(x,0) by shearing");
        g = bp_shear(g, 1, ctx.approx);  // net effect after the loop: y -> y + lambda*x
    }
    pf.shear_lambda = lambda;
    const int m = bp_mult_x_at_y0(g);

    std::vector<RawBranch> raw;
    try {
        FieldContext work = ctx;
        raw = branch_rec(g, Rational(order), work, 0);
        ctx = work;
    } catch (const needs_approx& e) {
        if (ctx.approx)
            throw verification_error(std::string("puiseux: approx mode failed: ") + e.what());
        FieldContext fb;
        fb.approx = true;
        fb.eps = ctx.eps;
        fb.warnings = ctx.warnings;
        fb.warnings.push_back(std::string("exact mode fell back to approx: ") + e.what());
        BiPoly ga = bp_to_approx(g);
        raw = branch_rec(ga, Rational(order), fb, 0);
        g = std::move(ga);
        ctx = fb;
        pf.approx_fallback = true;
    }
    int total = 0;
    for (const auto& rb : raw) total += rb.mult;
    if (total != m)
        throw verification_error("puiseux: branch multiplicities sum to " + std::to_string(total) +
                                 ", expected " + std::to_string(m) +
                                 (ctx.approx ? " (ill-conditioned approx input?)" : ""));

    long r = 1;
    for (const auto& rb : raw)
        for (const auto& [e, c] : rb.coeffs)
            r = std::lcm(r, denominator(e).convert_to<long>());
    pf.r = static_cast<int>(r);

    for (const auto& rb : raw) {
        TruncSeries sigma({pf.s_var}, order);
        for (const auto& [e, c] : rb.coeffs) {
            Rational se = e * r;
            long ie = numerator(se).convert_to<long>();
            if (ie <= order) sigma.set({static_cast<int>(ie), 0}, c);
        }
        for (int i = 0; i < rb.mult; ++i) pf.branches.push_back(sigma);
    }
    std::sort(pf.branches.begin(), pf.branches.end(),
              [](const TruncSeries& a, const TruncSeries& b) { return branch_compare(a, b) < 0; });
    for (const auto& b : pf.branches)
        if (b.is_zero_to_order()) ++pf.zero_count;

    // unit and residual: long division of g(x, s^r) by the monic product
    // prod (x - sigma_i), slice by slice in the x-degree.
    const std::vector<std::string> sv{pf.s_var};
    const int D = static_cast<int>(pf.branches.size());
    int dxg = 0;
    for (const auto& [e, c] : g) dxg = std::max(dxg, e.first);
    std::vector<TruncSeries> R(dxg + 1, TruncSeries::zero(sv, order));
    for (const auto& [e, c] : g) {
        long se = static_cast<long>(e.second) * r;
        if (se > order) continue;
        R[e.first].set({static_cast<int>(se), 0},
                       R[e.first].coefficient(static_cast<int>(se)) + c);
    }
    std::vector<TruncSeries> P;
    P.push_back(TruncSeries::constant(sv, order, one_like(ctx.approx)));
    for (const auto& sig : pf.branches) {
        std::vector<TruncSeries> np(P.size() + 1, TruncSeries::zero(sv, order));
        for (size_t i = 0; i < P.size(); ++i) {
            np[i + 1] += P[i];
            np[i] -= P[i] * sig;
        }
        P = std::move(np);
    }
    std::vector<TruncSeries> Q(std::max(dxg - D + 1, 1), TruncSeries::zero(sv, order));
    for (int d = dxg; d >= D; --d) {
        TruncSeries f = R[d];
        if (f.is_zero_to_order()) continue;
        Q[d - D] += f;
        for (int j = 0; j < D; ++j) R[d - D + j] -= f * P[j];
        R[d] = TruncSeries::zero(sv, order);
    }
    pf.residual_order = order;
    for (int a = 0; a < D && a < static_cast<int>(R.size()); ++a) {
        TruncSeries rs = R[a].truncated(std::max(order - a, 0));
        if (!rs.is_zero_to_order())
            throw verification_error("puiseux: residual nonzero at x-degree " + std::to_string(a) +
                                     ", s-order " + std::to_string(rs.valuation().value_or(-1)));
    }
    pf.unit = TruncSeries::zero({pf.x_var, pf.s_var}, order);
    for (size_t xd = 0; xd < Q.size(); ++xd)
        for (const auto& [e, c] : Q[xd].terms())
            if (static_cast<int>(xd) + e[0] <= order) pf.unit.set({static_cast<int>(xd), e[0]}, c);
    if (pf.unit.coefficient({0, 0}).is_zero())
        throw verification_error("puiseux: unit vanishes at the origin");
    return pf;
}

// b2 = b1(zeta_r^j s) for some j? Reduce the coefficient ratios d_e along a
// Bezout combination of the exponents to a single root of unity lambda, then
// check d_e = lambda^{e/g} for every exponent. Sound and complete inside one
// coefficient field; no explicit zeta_r is ever constructed.
bool conjugate_pair(const TruncSeries& b1, const TruncSeries& b2, int r) {
    std::vector<int> E;
    for (const auto& [e, c] : b1.terms()) E.push_back(e[0]);
    {
        std::vector<int> E2;
        for (const auto& [e, c] : b2.terms()) E2.push_back(e[0]);
        if (E != E2) return false;
    }
    if (E.empty()) return true;  // both zero branches
    long g = r;
    std::map<int, long> bezout;
    for (int e : E) {
        long a = g, b = e;
        long u0 = 1, v0 = 0, u1 = 0, v1 = 1;
        while (b != 0) {
            long qq = a / b;
            long t = a - qq * b;
            a = b;
            b = t;
            long tu = u0 - qq * u1, tv = v0 - qq * v1;
            u0 = u1;
            v0 = v1;
            u1 = tu;
            v1 = tv;
        }
        for (auto& [kk, v] : bezout) v *= u0;
        bezout[e] += v0;
        g = a;
    }
    Coefficient lambda = b1.coefficient(E[0]).is_approx() ? Coefficient::approx({1.0, 0.0})
                                                          : Coefficient(1);
    for (auto& [e, mexp] : bezout) {
        Coefficient de = b2.coefficient(e) / b1.coefficient(e);
        long mm = ((mexp % r) + r) % r;  // d_e^r = 1 for genuine conjugates
        lambda = lambda * de.pow(mm);
    }
    if (!(lambda.pow(r / g) - lambda.pow(0)).is_zero()) return false;
    for (int e : E) {
        Coefficient de = b2.coefficient(e) / b1.coefficient(e);
        if (!(de - lambda.pow(e / g)).is_zero()) return false;
    }
    return true;
}

}  // namespace

NewtonPolygon newton_polygon(const MultiPoly& g) {
    BiPoly p = bp_from_multipoly(g);
    if (p.empty()) throw precondition_error("newton_polygon: zero input");
    NewtonPolygon np;
    for (const auto& [e, c] : p) np.support.push_back({e.first, e.second});
    auto verts = lower_left_vertices(np.support);
    for (auto it = verts.rbegin(); it != verts.rend(); ++it) np.vertices.push_back(*it);
    for (size_t k = 0; k + 1 < np.vertices.size(); ++k) {
        auto [i1, j1] = np.vertices[k];
        auto [i2, j2] = np.vertices[k + 1];
        np.slopes.push_back(Rational(j2 - j1, i1 - i2));
    }
    return np;
}

NewtonPolygon newton_polygon(const TruncSeries& g) {
    if (g.nvars() != 2)
        throw std::invalid_argument("newton_polygon: series must be bivariate");
    MultiPoly p(std::vector<std::string>(g.vars().begin(), g.vars().end()));
    for (const auto& [e, c] : g.terms()) p.set_term({e[0], e[1]}, c);
    return newton_polygon(p);
}

PuiseuxFactorization puiseux_factor(const MultiPoly& g, int order, FieldContext ctx) {
    return factor_bipoly(bp_from_multipoly(g), g.vars()[0], g.vars()[1], order, std::move(ctx));
}

PuiseuxFactorization puiseux_factor(const TruncSeries& g, int order, FieldContext ctx) {
    return factor_bipoly(bp_from_series(g), g.vars()[0], g.vars()[1],
                         std::min(order, g.order()), std::move(ctx));
}

AnalyticFactorization analytic_factor(const MultiPoly& f, int order, FieldContext ctx) {
    AnalyticFactorization af;
    af.factorization = puiseux_factor(f, order, std::move(ctx));
    const auto& br = af.factorization.branches;
    const int r = af.factorization.r;
    const int n = static_cast<int>(br.size());
    std::vector<int> group(n, -1);
    std::vector<std::vector<int>> groups;
    for (int i = 0; i < n; ++i) {
        if (group[i] >= 0) continue;
        groups.push_back({i});
        group[i] = static_cast<int>(groups.size()) - 1;
        for (int j = i + 1; j < n; ++j)
            if (group[j] < 0 && br[i].equal_to_order(br[j])) {
                group[j] = group[i];
                groups.back().push_back(j);
            }
    }
    const int ng = static_cast<int>(groups.size());
    std::vector<bool> used(ng, false);
    for (int a = 0; a < ng; ++a) {
        if (used[a]) continue;
        std::vector<int> orbit{a};
        used[a] = true;
        for (int b = a + 1; b < ng; ++b) {
            if (used[b]) continue;
            if (conjugate_pair(br[groups[a][0]], br[groups[b][0]], r)) {
                orbit.push_back(b);
                used[b] = true;
            }
        }
        size_t copies = groups[orbit[0]].size();
        for (int gidx : orbit)
            if (groups[gidx].size() != copies)
                throw verification_error(
                    "analytic_factor: conjugate branches with unequal multiplicity");
        for (size_t kcopy = 0; kcopy < copies; ++kcopy) {
            BranchCycle cyc;
            for (int gidx : orbit) cyc.branch_indices.push_back(groups[gidx][kcopy]);
            cyc.length = static_cast<int>(cyc.branch_indices.size());
            af.cycles.push_back(std::move(cyc));
        }
    }
    return af;
}

ClassGroupReport class_group(const MultiPoly& f, int order, FieldContext ctx) {
    AnalyticFactorization af = analytic_factor(f, order, std::move(ctx));
    const auto& br = af.factorization.branches;
    for (size_t i = 0; i < br.size(); ++i)
        for (size_t j = i + 1; j < br.size(); ++j)
            if (br[i].equal_to_order(br[j]))
                throw precondition_error(
                    "class_group: repeated analytic factor detected (non-isolated singularity)");
    ClassGroupReport cg;
    cg.factor_count = af.factor_count();
    cg.rank = cg.factor_count - 1;
    cg.factorial = (cg.factor_count == 1);
    for (const auto& c : af.cycles) cg.cycle_lengths.push_back(c.length);
    return cg;
}

}  // namespace arcnash
