#include "arcnash/nash.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "arcnash/numberfield.hpp"

namespace arcnash {

namespace {

const std::vector<std::string> kXYZT{"x", "y", "z", "t"};

MultiPoly xm_equation(int m) {
    // x y - z^2 + t^m
    MultiPoly e(kXYZT);
    e.set_term({1, 1, 0, 0}, Coefficient(1));
    e.set_term({0, 0, 2, 0}, Coefficient(-1));
    e.set_term({0, 0, 0, m}, Coefficient(1));
    return e;
}

MultiPoly monomial_xyzt(int ex, int ey, int ez, int et, int coef = 1) {
    return MultiPoly::monomial(kXYZT, {ex, ey, ez, et}, Coefficient(coef));
}

// p == monomial * q for the given monomial exponents?
bool equals_monomial_times(const MultiPoly& p, const std::vector<int>& mono, const MultiPoly& q) {
    MultiPoly shifted(q.vars());
    for (const auto& [e, c] : q.terms()) {
        MultiPoly::Exponents ne = e;
        for (size_t i = 0; i < ne.size(); ++i) ne[i] += mono[i];
        shifted.set_term(ne, c);
    }
    return (p - shifted).is_zero();
}

int total_deg(const MultiPoly::Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

// graded lex with the declared variable order (project-wide monomial order)
bool grlex_less(const MultiPoly::Exponents& a, const MultiPoly::Exponents& b) {
    int da = total_deg(a), db = total_deg(b);
    if (da != db) return da < db;
    return a < b;
}

std::optional<std::pair<MultiPoly::Exponents, Coefficient>> leading_term(const MultiPoly& p) {
    std::optional<std::pair<MultiPoly::Exponents, Coefficient>> best;
    for (const auto& [e, c] : p.terms())
        if (!best || grlex_less(best->first, e)) best = {{e, c}};
    return best;
}

MultiPoly truncate_total(const MultiPoly& p, int maxdeg) {
    MultiPoly r(p.vars());
    for (const auto& [e, c] : p.terms())
        if (total_deg(e) <= maxdeg) r.set_term(e, c);
    return r;
}

}  // namespace

std::vector<BlowupChart> blowup_sequence(int m) {
    if (m < 2) throw precondition_error("blowup_sequence: m >= 2 required");
    const int r = std::max(m / 2, 1);
    std::vector<BlowupChart> charts;
    for (int c = 1; c <= r; ++c) {
        BlowupChart ch;
        ch.level = c;
        MultiPoly eq(kXYZT);
        eq.set_term({1, 1, 0, 0}, Coefficient(1));
        eq.set_term({0, 0, 2, 0}, Coefficient(-1));
        eq.set_term({0, 0, 0, m - 2 * c}, Coefficient(1));
        ch.equation = eq;
        ch.substitution = {monomial_xyzt(1, 0, 0, c), monomial_xyzt(0, 1, 0, c),
                           monomial_xyzt(0, 0, 1, c), monomial_xyzt(0, 0, 0, 1)};
        ch.exceptional = monomial_xyzt(0, 0, 0, 1);
        ch.smooth = (m - 2 * c) <= 1;
        // (x_c t^c)(y_c t^c) - (z_c t^c)^2 + t^m == t^{2c} (x_c y_c - z_c^2 + t^{m-2c})
        MultiPoly pullback = xm_equation(m).substitute_poly(ch.substitution, kXYZT);
        ch.substitution_verified = equals_monomial_times(pullback, {0, 0, 0, 2 * c}, ch.equation);
        if (!ch.substitution_verified)
            throw verification_error("blowup chart " + std::to_string(c) +
                                     " failed its substitution identity");
        charts.push_back(std::move(ch));
    }
    return charts;
}

DiscrepancyLedger discrepancies_xm(int m) {
    if (m < 2) throw precondition_error("discrepancies: m >= 2 required");
    DiscrepancyLedger led;
    led.family = "Xm";
    const int r = std::max(m / 2, 1);
    for (int c = 1; c <= r; ++c) led.entries.push_back({"E" + std::to_string(c), c});
    led.min_discrepancy = 1;
    return led;
}

DiscrepancyLedger discrepancies_higher(int r) {
    if (r < 2) throw precondition_error("discrepancies: higher family needs r >= 2 variables");
    DiscrepancyLedger led;
    led.family = "higher";
    led.entries = {{"E1", r}, {"E2", r + 1}};
    led.min_discrepancy = r;
    return led;
}

bool min_discrep_essential(int aE, int min_discrep) { return aE < 1 + min_discrep; }

MonomialMap witness_nonessential(int c, int m) {
    if (m < 2) throw precondition_error("witness_nonessential: m >= 2 required");
    if (c < 3 || c > m / 2)
        throw precondition_error(
            "witness_nonessential: requires 3 <= c <= floor(m/2); E1 and E2 are decided by "
            "discrepancy and factoriality arguments");
    MonomialMap map;
    map.c = c;
    map.m = m;
    map.a = c - 1;
    map.b = c - 2;
    map.name = "p(" + std::to_string(c) + "," + std::to_string(m) + ")";
    map.source_vars = {"xc", "yc", "zc", "t"};
    map.target_vars = {"u", "v", "w", "t"};
    if (!(2 * map.b >= map.a && map.a >= 0 && m >= map.a))
        throw verification_error("witness_nonessential: map constraints 2b>=a>=0, m>=a failed");

    // source chart equation: xc yc - zc^2 + t^{m-2c}
    MultiPoly src(map.source_vars);
    src.set_term({1, 1, 0, 0}, Coefficient(1));
    src.set_term({0, 0, 2, 0}, Coefficient(-1));
    src.set_term({0, 0, 0, m - 2 * c}, Coefficient(1));
    map.source_equation = src;

    // target equation: u v - w^2 t^{2b-a} + t^{m-2-a}
    MultiPoly tgt(map.target_vars);
    tgt.set_term({1, 1, 0, 0}, Coefficient(1));
    tgt.set_term({0, 0, 2, 2 * map.b - map.a}, Coefficient(-1));
    tgt.set_term({0, 0, 0, m - 2 - map.a}, Coefficient(1));
    map.target_equation = tgt;

    // composed map: (u, v, w, t) = (xc t^{c-1}, yc, zc t, t)
    map.images = {MultiPoly::monomial(map.source_vars, {1, 0, 0, c - 1}, Coefficient(1)),
                  MultiPoly::monomial(map.source_vars, {0, 1, 0, 0}, Coefficient(1)),
                  MultiPoly::monomial(map.source_vars, {0, 0, 1, 1}, Coefficient(1)),
                  MultiPoly::monomial(map.source_vars, {0, 0, 0, 1}, Coefficient(1))};

    // certificate 1: target o images = t^{c-1} * source
    MultiPoly pulled = map.target_equation.substitute_poly(map.images, map.source_vars);
    map.unit_exponents = {0, 0, 0, c - 1};
    map.verified = equals_monomial_times(pulled, map.unit_exponents, map.source_equation);

    // certificate 2: composing with g(a,b,m): (x,y,z,t) = (u t, v t^{a+1}, w t^{b+1}, t)
    // must reproduce h(c,m): (x,y,z,t) = (xc t^c, yc t^c, zc t^c, t).
    {
        std::vector<std::array<int, 2>> gsub = {{0, 1}, {1, map.a + 1}, {2, map.b + 1}, {3, 0}};
        map.composition_verified = true;
        for (int k = 0; k < 4; ++k) {
            auto [slot, tpow] = gsub[k];
            MultiPoly lhs = map.images[slot];
            MultiPoly tmono = MultiPoly::monomial(map.source_vars, {0, 0, 0, tpow}, Coefficient(1));
            lhs = lhs * tmono;
            MultiPoly::Exponents expect(4, 0);
            if (k < 3) {
                expect[k] = 1;
                expect[3] = c;
            } else {
                expect[3] = 1;
            }
            MultiPoly rhs = MultiPoly::monomial(map.source_vars, expect, Coefficient(1));
            if (!(lhs - rhs).is_zero()) map.composition_verified = false;
        }
    }

    // certificate 3: E_c = (t=0) maps into the v-axis: u, w, t pull back with
    // positive t-valuation, v pulls back to the free coordinate yc.
    map.exceptional_to_v_axis = true;
    for (int k : {0, 2, 3}) {
        for (const auto& [e, coef] : map.images[k].terms())
            if (e[3] < 1) map.exceptional_to_v_axis = false;
    }

    map.reading =
        "text reading a=c-1, b=c-2 validates: (u,v,w,t) = (xc t^{c-1}, yc, zc t, t) onto "
        "uv = w^2 t^{c-3} - t^{m-c-1}; the displayed (xc t^c, yc, zc t, t) onto "
        "uv = w^2 t^{c-2} - t^{m-c} is a consistent substitution identity but is not "
        "g(c-1,c-2,m)^{-1} o h(c,m)";
    if (!map.verified || !map.composition_verified || !map.exceptional_to_v_axis)
        throw verification_error("witness_nonessential: certificate failed for c=" +
                                 std::to_string(c) + ", m=" + std::to_string(m));
    return map;
}

EssentialReport essential_divisors_xm(int m) {
    if (m < 2) throw precondition_error("essential_divisors: m >= 2 required");
    EssentialReport rep;
    rep.family = "Xm(" + std::to_string(m) + ")";
    rep.component_count = 1;  // the full defining polynomial z^2 - t^m has multiplicity 2
    DiscrepancyLedger led = discrepancies_xm(m);
    const int r = std::max(m / 2, 1);
    for (int c = 1; c <= r; ++c) {
        DivisorVerdict d;
        d.name = "E" + std::to_string(c);
        d.discrepancy = c;
        if (c == 1) {
            d.verdict = Verdict::Essential;
            d.witness_kind = "min-discrepancy";
            d.witness_detail = "a(E1) = 1 < 1 + min-discrep = 2";
            if (!min_discrep_essential(1, led.min_discrepancy))
                throw verification_error("E1 must be essential by the discrepancy rule");
        } else if (c == 2) {
            if (m % 2 == 1) {
                d.verdict = Verdict::Essential;
                d.witness_kind = "factoriality";
                d.witness_detail =
                    "odd m: X_m and its first blow-up are analytically factorial, so the center "
                    "of E2 stays a divisor on every resolution";
            } else {
                d.verdict = Verdict::NonEssential;
                d.witness_kind = "small-resolution";
                const int a = m / 2;
                // check the factorization identities backing the construction
                MultiPoly lhs = xm_equation(m);
                MultiPoly zminus(kXYZT), zplus(kXYZT);
                zminus.set_term({0, 0, 1, 0}, Coefficient(1));
                zminus.set_term({0, 0, 0, a}, Coefficient(-1));
                zplus.set_term({0, 0, 1, 0}, Coefficient(1));
                zplus.set_term({0, 0, 0, a}, Coefficient(1));
                MultiPoly xy(kXYZT);
                xy.set_term({1, 1, 0, 0}, Coefficient(1));
                if (!(lhs - (xy - zminus * zplus)).is_zero())
                    throw verification_error("small-resolution identity failed");
                std::ostringstream os;
                os << "rank [[x, z+t^" << a << ", u], [z-t^" << a
                   << ", y, v]] <= 1 gives the small resolutions Y+-; level-1 divisor blow-up of "
                      "D+ = (x1 = z1 + t^"
                   << a - 1 << " = 0) yields the divisorial resolution with sole divisor E1";
                d.witness_detail = os.str();
            }
        } else {
            MonomialMap w = witness_nonessential(c, m);
            d.verdict = Verdict::NonEssential;
            d.witness_kind = "monomial-map";
            d.witness_detail = w.name + " maps E" + std::to_string(c) +
                               " onto the v-axis of uv = w^2 t^" + std::to_string(c - 3) +
                               " - t^" + std::to_string(m - c - 1);
        }
        rep.divisors.push_back(std::move(d));
    }
    if (m == 2) rep.note = "single blow-up already resolves; E2 does not exist";
    if (m == 3) rep.note = "B0(X) is smooth, so E1 is the only essential divisor";
    if (m == 5)
        rep.note =
            "simplest counterexample to the Nash conjecture: (x^2 + y^2 + z^2 + t^5 = 0) in C^4";
    int ess = rep.essential_count();
    if (ess == rep.component_count && rep.all_decided())
        rep.nash_surjective = NashAnswer::Yes;
    else if (ess > rep.component_count)
        rep.nash_surjective = NashAnswer::No;
    else
        rep.nash_surjective = NashAnswer::Undecided;
    return rep;
}

EssentialReport nash_verdict_xm(int m) { return essential_divisors_xm(m); }

SquareResult perfect_square(const MultiPoly& p) {
    SquareResult res;
    if (p.is_zero()) {
        res.root = MultiPoly(p.vars());
        return res;
    }
    auto lt = leading_term(p);
    for (int e : lt->first)
        if (e % 2 != 0) {
            res.detail = "leading monomial has an odd exponent";
            return res;
        }
    Coefficient lead = lt->second;
    std::optional<Coefficient> sq;
    if (lead.is_rational()) {
        if (auto rr = rational_sqrt(lead.rat())) {
            sq = Coefficient(*rr);
        } else {
            // one quadratic layer: sqrt(lead) in Q(sqrt(lead))
            FieldContext ctx;
            try {
                sq = ctx.sqrt_rational(lead.rat());
            } catch (const needs_approx&) {
                sq = std::nullopt;
            }
        }
    } else {
        sq = lead.sqrt_in_field();
    }
    if (!sq) {
        res.field_obstruction = true;
        res.detail = "leading coefficient " + lead.str() + " is not a square over the working field";
        return res;
    }
    MultiPoly::Exponents half = lt->first;
    for (auto& e : half) e /= 2;
    MultiPoly h = MultiPoly::monomial(p.vars(), half, *sq);
    MultiPoly::Exponents last = half;
    const Coefficient two_lead = Coefficient(2) * (*sq);
    for (int guard = 0; guard < 20000; ++guard) {
        MultiPoly r = p - h * h;
        if (r.is_zero()) {
            res.root = h;
            return res;
        }
        auto rt = leading_term(r);
        // next term tau = lt(r) / (2 lt(h)); must divide and strictly decrease
        MultiPoly::Exponents te = rt->first;
        bool divisible = true;
        for (size_t i = 0; i < te.size(); ++i) {
            te[i] -= half[i];
            if (te[i] < 0) divisible = false;
        }
        if (!divisible || !grlex_less(te, last)) {
            res.detail = "no admissible next term; not a perfect square";
            return res;
        }
        h += MultiPoly::monomial(p.vars(), te, rt->second / two_lead);
        last = te;
    }
    res.detail = "term budget exceeded";
    return res;
}

HigherVerdict nash_verdict_higher(const MultiPoly& g, int order) {
    HigherVerdict out;
    const int r = static_cast<int>(g.vars().size());
    auto mu = g.multiplicity();
    if (!mu) throw precondition_error("nash_verdict: g is identically zero");
    const int m = *mu;
    if (m < 4)
        throw precondition_error("nash_verdict: higher family requires mult g >= 4 (got " +
                                 std::to_string(m) + "); no criterion is available below that");
    if (r < 2) throw precondition_error("nash_verdict: higher family needs at least 2 variables");
    EssentialReport& rep = out.report;
    rep.family = "Xg(" + g.str() + ")";
    // full defining polynomial z^2 - g has multiplicity 2, one arc component
    rep.component_count = std::min(2, m) - 1;
    if (rep.component_count != 1)
        throw verification_error("higher family must have exactly one arc component");
    DiscrepancyLedger led = discrepancies_higher(r);

    DivisorVerdict e1;
    e1.name = "E1";
    e1.discrepancy = r;
    e1.verdict = Verdict::Essential;
    e1.witness_kind = "min-discrepancy";
    e1.witness_detail = "a(E1) = r = " + std::to_string(r) + " < 1 + min-discrep";
    if (!min_discrep_essential(r, led.min_discrepancy))
        throw verification_error("E1 must be essential by the discrepancy rule");
    rep.divisors.push_back(e1);

    DivisorVerdict e2;
    e2.name = "E2";
    e2.discrepancy = r + 1;
    MultiPoly gm = g.homogeneous_part(m);
    if (m % 2 == 1) {
        e2.verdict = Verdict::Essential;
        e2.witness_kind = "parity";
        e2.witness_detail = "odd multiplicity: the degree-m part cannot be a perfect square";
        rep.divisors.push_back(e2);
        rep.nash_surjective = NashAnswer::No;
        rep.note = "2 essential divisors against 1 arc component";
        return out;
    }
    SquareResult sq = perfect_square(gm);
    if (!sq.root) {
        e2.verdict = Verdict::Essential;
        e2.witness_kind = "perfect-square";
        e2.witness_detail = sq.field_obstruction
                                ? ("g_m is not a square: " + sq.detail)
                                : "g_m is not a perfect square";
        rep.divisors.push_back(e2);
        rep.nash_surjective = NashAnswer::No;
        rep.note = "2 essential divisors against 1 arc component";
        return out;
    }

    // g_m = h^2: construct the square-root witness divisor on the first
    // blow-up chart. Dehomogenize at the last variable; with A = h(u',1),
    // R(u',v) = sum_j g_{m+j}(u',1) v^{j-1}, the divisor is
    //   x1 = z1 - w^{(m-2)/2} A^{m-1} sqrt(1 + w R(u', A^2 w)) = 0,  w = A^{-2} u'_r.
    const MultiPoly& h = *sq.root;
    std::vector<std::string> wvars;
    for (int i = 0; i + 1 < r; ++i) wvars.push_back(g.vars()[i]);
    wvars.push_back("w");
    auto dehom = [&](const MultiPoly& q) {
        std::vector<MultiPoly> images;
        for (int i = 0; i < r; ++i) {
            if (i + 1 < r)
                images.push_back(MultiPoly::variable(wvars, g.vars()[i]));
            else
                images.push_back(MultiPoly::constant(wvars, Coefficient(1)));
        }
        return q.substitute_poly(images, wvars);
    };
    MultiPoly A = dehom(h);
    MultiPoly A2w = dehom(h);  // placeholder, rebuilt below
    {
        MultiPoly w = MultiPoly::variable(wvars, "w");
        A2w = A * A * w;
    }
    // R(u', A^2 w) = sum_{j>=1} g_{m+j}(u',1) (A^2 w)^{j-1}
    MultiPoly RR(wvars);
    const int dg = g.total_degree();
    MultiPoly pw = MultiPoly::constant(wvars, Coefficient(1));
    for (int j = 1; m + j <= dg; ++j) {
        MultiPoly part = dehom(g.homogeneous_part(m + j));
        RR += part * pw;
        pw = truncate_total(pw * A2w, order);
    }
    MultiPoly P = truncate_total(MultiPoly::variable(wvars, "w") * RR, order);
    // sqrt(1 + P) by the binomial series
    MultiPoly S = MultiPoly::constant(wvars, Coefficient(1));
    MultiPoly Ppow = MultiPoly::constant(wvars, Coefficient(1));
    Rational binom(1);
    for (int k = 1; k <= order; ++k) {
        Ppow = truncate_total(Ppow * P, order);
        binom = binom * (Rational(1, 2) - Rational(k - 1)) / Rational(k);
        if (Ppow.is_zero()) break;
        S += Ppow * Coefficient(binom);
        S = truncate_total(S, order);
    }
    MultiPoly resid = truncate_total(S * S - MultiPoly::constant(wvars, Coefficient(1)) - P, order);
    if (!resid.is_zero())
        throw verification_error("square-root witness residual nonzero to the working order");

    SquareRootWitness wit;
    wit.h = h;
    wit.sqrt_series = S;
    wit.residual_order = order;
    {
        std::ostringstream os;
        os << "on the first blow-up chart: x1 = z1 - w^" << (m - 2) / 2 << " * A^" << (m - 1)
           << " * sqrt(1 + w R), A = " << A.str() << ", w = A^-2 u_r'";
        wit.divisor = os.str();
    }
    out.witness = wit;

    e2.verdict = Verdict::NonEssential;
    e2.witness_kind = "square-root-divisor";
    e2.witness_detail = wit.divisor;
    rep.divisors.push_back(e2);
    rep.nash_surjective = NashAnswer::Undecided;
    rep.note =
        "E2 is not essential, but divisors beyond E1 and E2 are not controlled in this "
        "dimension; the verdict stays undecided";
    return out;
}

}  // namespace arcnash
