#include "arcnash/arcspace.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace arcnash {

namespace {

const std::vector<std::string> kTS{"t", "s"};

// 0, 1, -1, 2, -2, ...
int small_int(int k) { return (k % 2 == 1) ? (k + 1) / 2 : -k / 2; }

// deterministic probe values for generic specialization
Rational probe_value(int k) {
    static const Rational seq[] = {Rational(1),     Rational(-1),    Rational(1, 2),
                                   Rational(-1, 2), Rational(2),     Rational(-2),
                                   Rational(1, 3),  Rational(-1, 3), Rational(3),
                                   Rational(-3),    Rational(1, 5),  Rational(5)};
    return seq[k % 12];
}

// all integer tuples of the given length ordered by max-norm level, then lex
std::vector<int> shear_tuple(int len, int index) {
    if (len == 0) return {};
    for (int level = 0;; ++level) {
        const int width = 2 * level + 1;
        long count = 1;
        for (int i = 0; i < len; ++i) {
            count *= width;
            if (count > 100000) break;
        }
        for (long c = 0; c < count; ++c) {
            long x = c;
            std::vector<int> tup(len);
            int maxabs = 0;
            for (int i = 0; i < len; ++i) {
                tup[i] = small_int(static_cast<int>(x % width));
                maxabs = std::max(maxabs, std::abs(tup[i]));
                x /= width;
            }
            if (maxabs != level) continue;  // already listed at a lower level
            if (index-- == 0) return tup;
        }
    }
}

Coefficient rat_like(bool approx, const Rational& v) {
    return approx ? Coefficient::approx({to_double(v), 0.0}) : Coefficient(v);
}

TruncSeries to_mode(const TruncSeries& s, bool approx) { return approx ? s.to_approx() : s; }

}  // namespace

SingularityModel make_model(const MultiPoly& f, int seed_index) {
    SingularityModel mod;
    mod.f = f;
    mod.n = static_cast<int>(f.vars().size());
    auto mu = f.multiplicity();
    if (!mu) throw precondition_error("model: f is identically zero");
    mod.m = *mu;
    if (mod.m < 2)
        throw precondition_error("model: multiplicity of f at the origin must be >= 2, got " +
                                 std::to_string(mod.m));
    mod.shear.assign(mod.n, Rational(0));
    MultiPoly fm = f.homogeneous_part(mod.m);
    auto z1m_coeff = [&](const std::vector<Rational>& lam) {
        std::vector<Coefficient> pt;
        pt.push_back(Coefficient(1));
        for (int j = 1; j < mod.n; ++j) pt.push_back(Coefficient(lam[j]));
        return fm.evaluate(pt);
    };
    if (!z1m_coeff(mod.shear).is_zero()) {
        mod.sheared = false;
        mod.f_normalized = f;
        return mod;
    }
    for (int k = seed_index;; ++k) {
        std::vector<int> tup = shear_tuple(mod.n - 1, k);
        std::vector<Rational> lam(mod.n, Rational(0));
        for (int j = 1; j < mod.n; ++j) lam[j] = Rational(tup[j - 1]);
        if (z1m_coeff(lam).is_zero()) continue;
        mod.shear = lam;
        mod.sheared = true;
        std::vector<MultiPoly> images;
        for (int j = 0; j < mod.n; ++j) {
            MultiPoly img = MultiPoly::variable(f.vars(), f.vars()[j]);
            if (j >= 1 && lam[j] != 0)
                img += MultiPoly::variable(f.vars(), f.vars()[0]) * Coefficient(lam[j]);
            images.push_back(img);
        }
        mod.f_normalized = f.substitute_poly(images, f.vars());
        if (mod.f_normalized.multiplicity() != mu)
            throw verification_error("model: shear changed the multiplicity");
        return mod;
    }
}

ValuationReport validate_arc(const Arc& arc, const SingularityModel& model) {
    if (static_cast<int>(arc.phi.size()) != model.n)
        throw precondition_error("arc: expected " + std::to_string(model.n) + " phi components");
    ValuationReport rep;
    rep.checked_order = arc.order;
    for (const auto& comp : {arc.psi1, arc.psi2}) {
        auto v = comp.valuation();
        if (v && *v < 1) throw precondition_error("arc: component has valuation 0, not through origin");
    }
    for (const auto& comp : arc.phi) {
        auto v = comp.valuation();
        if (v && *v < 1) throw precondition_error("arc: component has valuation 0, not through origin");
    }
    rep.a1 = arc.psi1.valuation();
    rep.a2 = arc.psi2.valuation();
    TruncSeries fphi = substitute(model.f, arc.phi);
    rep.D = fphi.valuation();
    TruncSeries resid = arc.psi1 * arc.psi2 - fphi;
    if (resid.is_zero_to_order()) {
        rep.valid = true;
    } else {
        rep.valid = false;
        rep.residual_valuation = resid.valuation();
    }
    return rep;
}

namespace {
ComponentLabel label_from(int m, const std::optional<int>& a1, const std::optional<int>& a2,
                          const std::optional<int>& D) {
    ComponentLabel lab;
    if (a1 && a2 && D && *D == m && *a1 >= 1 && *a1 <= m - 1 && *a2 == m - *a1) {
        lab.open_stratum = true;
        lab.index = *a1;
    }
    return lab;
}
}  // namespace

ComponentLabel classify(const Arc& arc, const SingularityModel& model) {
    ValuationReport rep = validate_arc(arc, model);
    if (!rep.valid)
        throw precondition_error("classify: not an arc on X (residual at order " +
                                 std::to_string(rep.residual_valuation.value_or(-1)) + ")");
    return label_from(model.m, rep.a1, rep.a2, rep.D);
}

namespace {

std::set<int> reachable_formula(int m, int a1, int a2) {
    std::set<int> out;
    int lo = std::max(1, m - a2);
    int hi = std::min(m - 1, a1);
    for (int i = lo; i <= hi; ++i) out.insert(i);
    return out;
}

std::vector<TruncSeries> shear_arc_phi(const Arc& arc, const SingularityModel& model) {
    // phi'_j = phi_j - lambda_j phi_1 lands on (xy = f_normalized)
    std::vector<TruncSeries> out = arc.phi;
    if (!model.sheared) return out;
    for (int j = 1; j < model.n; ++j)
        if (model.shear[j] != 0)
            out[j] = out[j] - arc.phi[0] * Coefficient(model.shear[j]);
    return out;
}

DeformationFamily unshear_family(DeformationFamily fam, const SingularityModel& model) {
    if (!model.sheared) return fam;
    for (int j = 1; j < model.n; ++j)
        if (model.shear[j] != 0)
            fam.Phi[j] = fam.Phi[j] + fam.Phi[0] * rat_like(fam.approx, model.shear[j]);
    return fam;
}

void verify_family(const DeformationFamily& fam, const SingularityModel& model, const Arc& source,
                   int check_order) {
    TruncSeries fPhi = substitute(fam.approx ? model.f.to_approx() : model.f, fam.Phi);
    TruncSeries resid = (fam.Psi1 * fam.Psi2 - fPhi).truncated(check_order);
    if (!resid.is_zero_to_order())
        throw verification_error("deformation family residual nonzero at order " +
                                 std::to_string(resid.valuation().value_or(-1)));
    Arc at0 = fam.restrict_at_zero();
    auto eq = [&](const TruncSeries& a, const TruncSeries& b) {
        return (a.truncated(check_order) - to_mode(b, fam.approx).truncated(check_order))
            .is_zero_to_order();
    };
    if (!eq(at0.psi1, source.psi1) || !eq(at0.psi2, source.psi2))
        throw verification_error("deformation family does not restrict to the source arc at s=0");
    for (size_t j = 0; j < at0.phi.size(); ++j)
        if (!eq(at0.phi[j], source.phi[j]))
            throw verification_error("deformation family does not restrict to the source arc at s=0");
}

DeformationFamily main_construction(const Arc& arc, const SingularityModel& model,
                                    const ValuationReport& rep, int target) {
    const int N = arc.order;
    std::vector<TruncSeries> phi_sh = shear_arc_phi(arc, model);

    // F(t,s) = f_norm(phi_1 + s t, phi_2, ..., phi_n)
    std::vector<TruncSeries> args;
    args.push_back(phi_sh[0].promoted(kTS) + TruncSeries::monomial(kTS, N, {1, 1}, Coefficient(1)));
    for (int j = 1; j < model.n; ++j) args.push_back(phi_sh[j].promoted(kTS));
    TruncSeries F = substitute(model.f_normalized, args);

    PuiseuxFactorization pf = puiseux_factor(F, N);
    const int D = *rep.D;
    const int a1 = *rep.a1, a2 = *rep.a2;
    if (pf.branch_count() != D)
        throw verification_error("deform: factorization produced " +
                                 std::to_string(pf.branch_count()) + " branches, expected D = " +
                                 std::to_string(D));
    if (pf.zero_count != model.m)
        throw verification_error("deform: " + std::to_string(pf.zero_count) +
                                 " zero branches, expected m = " + std::to_string(model.m));
    const bool ap = pf.approx_fallback;

    // A1 takes `target` zero branches first, then nonzero branches in
    // canonical order until |A1| = a1.
    std::vector<int> zeros, nonzeros;
    for (int i = 0; i < D; ++i)
        (pf.branches[i].is_zero_to_order() ? zeros : nonzeros).push_back(i);
    if (target > static_cast<int>(zeros.size()) ||
        a1 - target > static_cast<int>(nonzeros.size()))
        throw precondition_error("deform: component " + std::to_string(target) +
                                 " is not reachable from this arc");
    std::vector<bool> inA1(D, false);
    for (int i = 0; i < target; ++i) inA1[zeros[i]] = true;
    for (int i = 0; i < a1 - target; ++i) inA1[nonzeros[i]] = true;

    TruncSeries psi1 = to_mode(arc.psi1, ap);
    TruncSeries tpow_a1 =
        TruncSeries::monomial({"t"}, N, {a1, 0}, ap ? Coefficient::approx({1, 0}) : Coefficient(1));
    // v1 and u/v1 are padded back to order N: their unknown top coefficients
    // only ever multiply the valuation >= 1 branch factors below (|A1| >= 1
    // and |A2| >= 1 since both sides hold a zero branch).
    TruncSeries v1 = divide_exact(psi1, tpow_a1).padded(N);

    TruncSeries T = TruncSeries::monomial(kTS, N, {1, 0}, ap ? Coefficient::approx({1, 0})
                                                             : Coefficient(1));
    TruncSeries Psi1 = v1.promoted(kTS);
    TruncSeries Psi2 = divide_exact(pf.unit, v1.promoted(kTS)).padded(N);
    if (a1 < 1 || a2 < 1)
        throw verification_error("deform: both A1 and A2 must be nonempty");
    for (int i = 0; i < D; ++i) {
        TruncSeries factor = T - pf.branches[i].promoted(kTS);
        if (inA1[i])
            Psi1 = Psi1 * factor;
        else
            Psi2 = Psi2 * factor;
    }

    DeformationFamily fam;
    fam.approx = ap;
    fam.kind = "main";
    fam.r = pf.r;
    fam.target_component = target;
    fam.Psi1 = Psi1;
    fam.Psi2 = Psi2;
    fam.Phi.push_back(to_mode(phi_sh[0], ap).promoted(kTS) +
                      TruncSeries::monomial(kTS, N, {1, pf.r},
                                            ap ? Coefficient::approx({1, 0}) : Coefficient(1)));
    for (int j = 1; j < model.n; ++j) fam.Phi.push_back(to_mode(phi_sh[j], ap).promoted(kTS));
    bool stable_in_construction_frame = short_stability(fam);
    fam = unshear_family(std::move(fam), model);
    fam.residual_order = N;
    verify_family(fam, model, arc, fam.residual_order);
    fam.short_stable = stable_in_construction_frame || short_stability(fam);
    return fam;
}

// preliminary deformations for arcs with D = infinity
struct Preprocess {
    std::vector<DeformationFamily> stages;
    Arc final_arc;
    Rational probe = 1;
};

Preprocess preprocess_infinite(const Arc& arc0, const SingularityModel& model, int seed_index) {
    Preprocess pre;
    Arc cur = arc0;
    for (int round = 0; round < 4; ++round) {
        ValuationReport rep = validate_arc(cur, model);
        if (!rep.valid) throw precondition_error("deform: source arc fails its defining equation");
        if (rep.D) {
            pre.final_arc = cur;
            return pre;
        }
        const int N = cur.order;
        DeformationFamily fam;
        if (!rep.a1 && !rep.a2) {
            // (psi1, psi2) == (0, 0): deform to (s t, 0, phi)
            fam.kind = "preliminary-zero";
            fam.Psi1 = TruncSeries::monomial(kTS, N, {1, 1}, Coefficient(1));
            fam.Psi2 = TruncSeries::zero(kTS, N);
            for (const auto& p : cur.phi) fam.Phi.push_back(p.promoted(kTS));
            fam.residual_order = N;
            verify_family(fam, model, cur, N);
            fam.short_stable = short_stability(fam);
        } else {
            // one side vanishes; swap so that psi1 has finite valuation
            bool swapped = !rep.a1;
            TruncSeries psi_fin = swapped ? cur.psi2 : cur.psi1;
            int d = swapped ? *rep.a2 : *rep.a1;
            std::vector<TruncSeries> phi_sh = shear_arc_phi(cur, model);
            std::vector<TruncSeries> args;
            args.push_back(phi_sh[0].promoted(kTS) +
                           TruncSeries::monomial(kTS, N, {1, d + 1}, Coefficient(1)));
            for (int j = 1; j < model.n; ++j) args.push_back(phi_sh[j].promoted(kTS));
            TruncSeries F = substitute(model.f_normalized, args);
            TruncSeries psi_other = divide_exact(F, psi_fin.promoted(kTS).truncated(F.order()));
            fam.kind = "preliminary-divide";
            fam.Psi1 = swapped ? psi_other.truncated(N) : psi_fin.promoted(kTS);
            fam.Psi2 = swapped ? psi_fin.promoted(kTS).truncated(psi_other.order())
                               : psi_other.truncated(N);
            fam.Phi.push_back(args[0]);
            for (int j = 1; j < model.n; ++j) fam.Phi.push_back(phi_sh[j].promoted(kTS));
            fam = unshear_family(std::move(fam), model);
            fam.residual_order = std::min({N, fam.Psi1.order(), fam.Psi2.order()});
            verify_family(fam, model, cur, fam.residual_order);
            fam.short_stable = short_stability(fam);
        }
        // Specialize at a probe where D becomes visible. The phi and psi1
        // restrictions are exact (polynomial in s); psi2 is re-derived by
        // exact division so the specialized arc satisfies its equation on
        // the nose rather than through the truncated Psi2.
        bool advanced = false;
        for (int k = 0; k < 8 && !advanced; ++k) {
            Rational s0 = probe_value(seed_index + k);
            Arc next = fam.restrict_at(s0);
            next.order = cur.order;
            if (fam.kind == "preliminary-zero") {
                // f(phi) is still zero to order; the gain is a finite mult psi1
                next.psi2 = TruncSeries::zero({"t"}, next.order);
                if (next.psi1.is_zero_to_order()) continue;
            } else {
                TruncSeries fphi = substitute(model.f, next.phi);
                if (!fphi.valuation()) continue;  // D still invisible at this order
                if (next.psi1.is_zero_to_order()) continue;
                try {
                    next.psi2 = divide_exact(fphi, next.psi1);
                } catch (const precondition_error&) {
                    continue;
                }
            }
            ValuationReport nrep = validate_arc(next, model);
            if (!nrep.valid) continue;
            pre.stages.push_back(fam);
            pre.probe = s0;
            cur = next;
            advanced = true;
        }
        if (!advanced)
            throw precondition_error(
                "deform: D = infinity could not be resolved at this truncation order");
    }
    throw precondition_error("deform: preliminary deformation did not reach finite D");
}

}  // namespace

Arc DeformationFamily::restrict_at(const Rational& s0) const {
    Arc a;
    a.order = std::min({Psi1.order(), Psi2.order(), residual_order});
    a.psi1 = Psi1.restrict_var("s", s0);
    a.psi2 = Psi2.restrict_var("s", s0);
    for (const auto& p : Phi) a.phi.push_back(p.restrict_var("s", s0));
    return a;
}

Arc DeformationFamily::restrict_at_zero() const { return restrict_at(Rational(0)); }

std::set<int> reachable_components(const Arc& arc, const SingularityModel& model,
                                   bool verify_by_construction, int seed_index) {
    ValuationReport rep = validate_arc(arc, model);
    if (!rep.valid) throw precondition_error("reachable_components: not an arc on X");
    Arc work = arc;
    if (!rep.D) {
        Preprocess pre = preprocess_infinite(arc, model, seed_index);
        work = pre.final_arc;
        rep = validate_arc(work, model);
    }
    std::set<int> set = reachable_formula(model.m, *rep.a1, *rep.a2);
    if (verify_by_construction)
        for (int i : set) deform_to_component(work, model, i, seed_index);
    return set;
}

DeformationOutcome deform_to_component(const Arc& arc, const SingularityModel& model, int target,
                                       int seed_index) {
    if (target < 1 || target > model.m - 1)
        throw precondition_error("deform: component index out of range 1..m-1");
    DeformationOutcome out;
    ValuationReport rep = validate_arc(arc, model);
    if (!rep.valid) throw precondition_error("deform: not an arc on X");
    Arc work = arc;
    if (!rep.D) {
        Preprocess pre = preprocess_infinite(arc, model, seed_index);
        out.stages = pre.stages;
        out.probe_s = pre.probe;
        work = pre.final_arc;
        rep = validate_arc(work, model);
    }
    auto set = reachable_formula(model.m, *rep.a1, *rep.a2);
    if (!set.count(target))
        throw precondition_error("deform: component " + std::to_string(target) +
                                 " is not reachable (a1 = " + std::to_string(*rep.a1) +
                                 ", a2 = " + std::to_string(*rep.a2) + ")");
    DeformationFamily fam = main_construction(work, model, rep, target);

    // Generic-s restriction must land in the open stratum of the target.
    // Validity at s = s0 is inherited from the bivariate residual certificate;
    // the label is read from the valuations of the restricted components
    // (f(Phi|s0) is exact: the Phi are polynomial in s). A fresh residual of
    // the truncated restriction would double-count truncation error.
    bool classified = false;
    for (int k = 0; k < 8 && !classified; ++k) {
        Rational s0 = probe_value(seed_index + k);
        Arc at = fam.restrict_at(s0);
        auto a1p = at.psi1.valuation(), a2p = at.psi2.valuation();
        TruncSeries fphi = substitute(fam.approx ? model.f.to_approx() : model.f, at.phi);
        auto Dp = fphi.valuation();
        if (a1p && a2p && Dp && *a1p + *a2p != *Dp) continue;  // non-generic probe
        ComponentLabel lab = label_from(model.m, a1p, a2p, Dp);
        if (lab.open_stratum && lab.index == target) {
            out.generic_label = lab;
            out.probe_s = s0;
            classified = true;
        }
    }
    if (!classified)
        throw verification_error("deform: generic member did not classify to component " +
                                 std::to_string(target));
    out.stages.push_back(std::move(fam));
    return out;
}

bool short_stability(const DeformationFamily& fam) {
    auto s_independent_nonzero = [](const TruncSeries& g) {
        if (g.is_zero_to_order()) return false;
        for (const auto& [e, c] : g.terms())
            if (e[1] != 0) return false;
        return true;
    };
    if (s_independent_nonzero(fam.Psi1) || s_independent_nonzero(fam.Psi2)) return true;
    for (const auto& p : fam.Phi)
        if (s_independent_nonzero(p)) return true;
    return false;
}

int singular_codim_estimate(const MultiPoly& f, int order, int seed_index) {
    const auto eff = f.effective_vars();
    const int k = static_cast<int>(eff.size());
    if (k == 0) throw precondition_error("codim estimate: f has no variables");
    if (k == 1) return 2;  // Sing X = {x=y=z1=0} x C^{n-1}
    if (k == 2) {
        // reduced plane-curve germ <=> no repeated Puiseux branch
        std::vector<MultiPoly> images;
        for (const auto& v : f.vars()) {
            if (v == eff[0])
                images.push_back(MultiPoly::variable(eff, eff[0]));
            else if (v == eff[1])
                images.push_back(MultiPoly::variable(eff, eff[1]));
            else
                images.push_back(MultiPoly(eff));  // zero
        }
        MultiPoly g = f.substitute_poly(images, eff);
        PuiseuxFactorization pf = puiseux_factor(g, order);
        for (size_t i = 0; i < pf.branches.size(); ++i)
            for (size_t j = i + 1; j < pf.branches.size(); ++j)
                if (pf.branches[i].equal_to_order(pf.branches[j])) return 2;
        return 3;
    }
    // probe-line heuristic: an affine line misses Sing(f) entirely iff the
    // pulled-back generators have trivial gcd; dim <= k-2 makes that generic.
    std::vector<MultiPoly> gens{f};
    for (const auto& v : f.vars()) {
        MultiPoly d = f.derivative(v);
        if (!d.is_zero()) gens.push_back(d);
    }
    const std::vector<std::string> tauv{"tau"};
    int clean = 0;
    const int probes = 5;
    for (int p = 0; p < probes; ++p) {
        std::vector<MultiPoly> images;
        for (size_t j = 0; j < f.vars().size(); ++j) {
            int a = small_int(1 + (seed_index + p + static_cast<int>(j)) % 7);
            int w = small_int(1 + (seed_index + 2 * p + 3 * static_cast<int>(j) + 1) % 9);
            if (w == 0) w = 1;
            MultiPoly img = MultiPoly::constant(tauv, Coefficient(a)) +
                            MultiPoly::variable(tauv, "tau") * Coefficient(w);
            images.push_back(img);
        }
        UniPoly gcd_acc{Coefficient(0)};
        bool first = true;
        for (const auto& gpoly : gens) {
            MultiPoly rest = gpoly.substitute_poly(images, tauv);
            UniPoly up(static_cast<size_t>(std::max(rest.total_degree(), 0)) + 1, Coefficient(0));
            for (const auto& [e, c] : rest.terms()) up[e[0]] = c;
            if (upoly_degree(up) < 0) continue;
            gcd_acc = first ? up : upoly_gcd(gcd_acc, up);
            first = false;
        }
        if (!first && upoly_degree(gcd_acc) == 0) ++clean;
    }
    return clean >= probes - 1 ? 3 : 2;
}

SidewaysResult sideways_deform(const Arc& arc, const SingularityModel& model, int seed_index) {
    const int N = arc.order;
    ValuationReport vrep = validate_arc(arc, model);
    if (!vrep.valid) throw precondition_error("sideways: not an arc on X");
    // pick a coordinate of multiplicity one
    int jgen = -1;
    for (int j = 0; j < model.n; ++j) {
        auto v = arc.phi[j].valuation();
        if (v && *v == 1) {
            jgen = j;
            break;
        }
    }
    if (jgen < 0)
        throw precondition_error("sideways: arc not general, no phi_j of multiplicity 1");
    ComponentLabel lab = classify(arc, model);
    if (!lab.open_stratum)
        throw precondition_error("sideways: arc must lie in an open stratum");
    int codim = singular_codim_estimate(model.f, N, seed_index);
    if (codim < 3)
        throw precondition_error("sideways: singular locus has codimension " +
                                 std::to_string(codim) + " < 3 in X");

    const auto& zv = model.f.vars();
    // permutation: swap slot 0 and jgen
    std::vector<int> perm(model.n);
    for (int j = 0; j < model.n; ++j) perm[j] = j;
    std::swap(perm[0], perm[jgen]);
    std::vector<MultiPoly> perm_images;
    for (int j = 0; j < model.n; ++j)
        perm_images.push_back(MultiPoly::variable(zv, zv[perm[j]]));
    MultiPoly f_p = model.f.substitute_poly(perm_images, zv);
    std::vector<TruncSeries> phi_p(model.n, TruncSeries({"t"}, N));
    for (int j = 0; j < model.n; ++j) phi_p[j] = arc.phi[perm[j]];

    // reparametrize so phi_1(t) = t exactly
    TruncSeries tau = phi_p[0];
    TruncSeries inv = tau.reversion();
    auto reparam = [&](const TruncSeries& g) { return g.substitute_series({inv}); };
    TruncSeries psi1 = reparam(arc.psi1), psi2 = reparam(arc.psi2);
    for (auto& p : phi_p) p = reparam(p);

    // translate: z_i -> z_i + phi_i(z_1) for i >= 2 kills the tail components
    std::vector<MultiPoly> tr_images;
    for (int j = 0; j < model.n; ++j) {
        MultiPoly img = MultiPoly::variable(zv, zv[j]);
        if (j >= 1) {
            for (const auto& [e, c] : phi_p[j].terms()) {
                MultiPoly::Exponents ex(model.n, 0);
                ex[0] = e[0];
                img += MultiPoly::monomial(zv, ex, c);
            }
        }
        tr_images.push_back(img);
    }
    MultiPoly f2 = f_p.substitute_poly(tr_images, zv);

    // deterministic linear changes among z_2..z_n
    std::vector<std::vector<MultiPoly>> candidates;
    {
        std::vector<MultiPoly> id;
        for (int j = 0; j < model.n; ++j) id.push_back(MultiPoly::variable(zv, zv[j]));
        candidates.push_back(id);
        for (int i = 1; i < model.n; ++i)
            for (int k2 = 1; k2 < model.n; ++k2) {
                if (i == k2) continue;
                for (int cval : {1, -1, 2}) {
                    auto imgs = id;
                    imgs[i] = id[i] + id[k2] * Coefficient(cval);
                    candidates.push_back(imgs);
                }
            }
    }
    MultiPoly f3(zv);
    PuiseuxFactorization pf;
    std::vector<MultiPoly> chosen;
    bool found = false;
    std::string genericity_note;
    for (size_t ci = seed_index % std::max<size_t>(candidates.size(), 1);
         ci < candidates.size() && !found; ++ci) {
        MultiPoly cand = f2.substitute_poly(candidates[ci], zv);
        // g(z1,z2) = cand with z_j = 0 for j >= 3, renamed into (t,s)
        std::vector<MultiPoly> proj;
        proj.push_back(MultiPoly::variable(kTS, "t"));
        proj.push_back(model.n >= 2 ? MultiPoly::variable(kTS, "s") : MultiPoly(kTS));
        for (int j = 2; j < model.n; ++j) proj.push_back(MultiPoly(kTS));
        MultiPoly g = cand.substitute_poly(proj, kTS);
        if (g.is_zero()) continue;
        if (g.multiplicity() != model.m) continue;
        // divisible by neither t nor s
        bool div_t = true, div_s = true;
        for (const auto& [e, c] : g.terms()) {
            if (e[0] == 0) div_t = false;
            if (e[1] == 0) div_s = false;
        }
        if (div_t || div_s) continue;
        PuiseuxFactorization trial;
        try {
            trial = puiseux_factor(g, N);
        } catch (const precondition_error&) {
            continue;
        }
        if (trial.zero_count != 0 || trial.branch_count() != model.m) continue;
        bool repeated = false;
        for (int i = 0; i < trial.branch_count() && !repeated; ++i)
            for (int j = i + 1; j < trial.branch_count(); ++j)
                if (trial.branches[i].equal_to_order(trial.branches[j])) {
                    repeated = true;
                    break;
                }
        if (repeated) {
            genericity_note = "a candidate linear change produced a repeated branch; retried";
            continue;
        }
        pf = std::move(trial);
        f3 = std::move(cand);
        chosen = candidates[ci];
        found = true;
    }
    if (!found)
        throw precondition_error(
            "sideways: no deterministic linear change met the genericity conditions");

    const bool ap = pf.approx_fallback;
    const int a1 = *vrep.a1;
    TruncSeries psi1m = to_mode(psi1, ap);
    // padded as in the main construction: the unknown top coefficients only
    // multiply the valuation-1 branch factors (a1, a2 >= 1 in an open stratum)
    TruncSeries v1 = divide_exact(
        psi1m, TruncSeries::monomial({"t"}, N, {a1, 0},
                                     ap ? Coefficient::approx({1, 0}) : Coefficient(1)))
                         .padded(N);
    TruncSeries T = TruncSeries::monomial(kTS, N, {1, 0},
                                          ap ? Coefficient::approx({1, 0}) : Coefficient(1));
    TruncSeries Psi1 = v1.promoted(kTS);
    TruncSeries Psi2 = divide_exact(pf.unit, v1.promoted(kTS)).padded(N);
    for (int i = 0; i < pf.branch_count(); ++i) {
        TruncSeries factor = T - pf.branches[i].promoted(kTS);
        if (i < a1)
            Psi1 = Psi1 * factor;
        else
            Psi2 = Psi2 * factor;
    }

    // family in the transformed frame: (Psi1, Psi2, t, s^r, 0, ..., 0)
    std::vector<TruncSeries> Phi3;
    Phi3.push_back(T);
    if (model.n >= 2)
        Phi3.push_back(TruncSeries::monomial(kTS, N, {0, pf.r},
                                             ap ? Coefficient::approx({1, 0}) : Coefficient(1)));
    for (int j = 2; j < model.n; ++j) Phi3.push_back(TruncSeries::zero(kTS, N));

    // map back: linear change, then translation, then permutation, then the
    // reparametrization t -> tau(t).
    std::vector<TruncSeries> Phi2;
    for (int j = 0; j < model.n; ++j)
        Phi2.push_back(substitute(ap ? chosen[j].to_approx() : chosen[j], Phi3));
    std::vector<TruncSeries> PhiP;
    for (int j = 0; j < model.n; ++j) {
        MultiPoly img = ap ? tr_images[j].to_approx() : tr_images[j];
        PhiP.push_back(substitute(img, Phi2));
    }
    std::vector<TruncSeries> PhiO(model.n, TruncSeries(kTS, N));
    for (int j = 0; j < model.n; ++j) PhiO[perm[j]] = PhiP[j];

    DeformationFamily fam;
    fam.approx = ap;
    fam.kind = "main";
    fam.r = pf.r;
    fam.target_component = lab.index;
    TruncSeries tau_b = to_mode(tau, ap).promoted(kTS);
    TruncSeries s_b = TruncSeries::monomial(kTS, N, {0, 1},
                                            ap ? Coefficient::approx({1, 0}) : Coefficient(1));
    auto reparam_back = [&](const TruncSeries& g) {
        return g.substitute_series({tau_b, s_b});
    };
    fam.Psi1 = reparam_back(Psi1);
    fam.Psi2 = reparam_back(Psi2);
    for (auto& p : PhiO) fam.Phi.push_back(reparam_back(p));
    fam.residual_order = std::min({N, fam.Psi1.order(), fam.Psi2.order()});
    for (const auto& p : fam.Phi) fam.residual_order = std::min(fam.residual_order, p.order());
    verify_family(fam, model, arc, fam.residual_order);
    fam.short_stable = short_stability(fam);

    // sideways certificate: pull back generators of I_Sing along the family
    SidewaysResult res;
    res.codim_estimate = codim;
    res.notes = genericity_note;
    std::vector<std::pair<std::string, MultiPoly>> gens;
    gens.push_back({"f", model.f});
    for (const auto& v : model.f.vars()) {
        MultiPoly d = model.f.derivative(v);
        if (!d.is_zero()) gens.push_back({"df/d" + v, d});
    }
    std::vector<TruncSeries> pulls;
    std::vector<std::string> names{"x", "y"};
    pulls.push_back(fam.Psi1);
    pulls.push_back(fam.Psi2);
    for (auto& [nm, gp] : gens) {
        names.push_back(nm);
        pulls.push_back(substitute(ap ? gp.to_approx() : gp, fam.Phi));
    }
    res.certificate.generators = names;
    int minval = -1;
    for (const auto& P : pulls) {
        TruncSeries slice = P.restrict_var("t", Rational(0));
        auto v = slice.valuation();
        res.certificate.slice_valuation.push_back(v);
        if (v && (minval < 0 || *v < minval)) minval = *v;
    }
    res.certificate.ideal_slice_valuation = minval;
    if (minval < 1)
        throw verification_error("sideways: ideal pullback at t=0 has nonpositive s-valuation");
    // joint-unit check at a generic probe (exact mode only)
    if (!ap) {
        for (int k = 0; k < 8; ++k) {
            Rational s0 = probe_value(seed_index + k);
            UniPoly gcd_acc{Coefficient(0)};
            bool first = true;
            for (const auto& P : pulls) {
                TruncSeries rt = P.restrict_var("s", s0);
                if (rt.is_zero_to_order()) continue;
                UniPoly up(static_cast<size_t>(N) + 1, Coefficient(0));
                for (const auto& [e, c] : rt.terms()) up[e[0]] = c;
                gcd_acc = first ? up : upoly_gcd(gcd_acc, up);
                first = false;
            }
            if (!first && upoly_degree(gcd_acc) == 0) {
                res.certificate.joint_unit_at_probe = true;
                res.certificate.probe_s = s0;
                break;
            }
        }
        if (!res.certificate.joint_unit_at_probe)
            throw verification_error(
                "sideways: generator pullbacks share a zero at every probe value");
    }
    res.family = std::move(fam);
    return res;
}

}  // namespace arcnash
