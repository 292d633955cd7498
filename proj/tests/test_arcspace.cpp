#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arcnash/arcspace.hpp"
#include "arcnash/parser.hpp"
#include "oracles.hpp"

using namespace arcnash;

namespace {

TruncSeries ts(const std::vector<std::pair<int, Rational>>& coeffs, int order) {
    TruncSeries s({"t"}, order);
    for (auto& [e, c] : coeffs) s.set({e, 0}, Coefficient(c));
    return s;
}

Arc make_arc(TruncSeries psi1, TruncSeries psi2, std::vector<TruncSeries> phi, int order = 16) {
    Arc a;
    a.psi1 = std::move(psi1);
    a.psi2 = std::move(psi2);
    a.phi = std::move(phi);
    a.order = order;
    return a;
}

// fixture on xy = z1^m - z2^m with prescribed (a1, D >= m); psi2 is derived
// from f(phi) by exact division, so validate_arc acts as the oracle
Arc fixture_arc(const SingularityModel& model, int a1, int D, int order = 16) {
    const int m = model.m;
    REQUIRE(D >= m);
    TruncSeries phi1({"t"}, order), phi2({"t"}, order);
    if (D == m) {
        phi1.set({1, 0}, Coefficient(1));
        phi2.set({1, 0}, Coefficient(2));  // 1 - 2^m != 0
    } else {
        // f = z1^m - z2^m at (t, t + t^k) has valuation m + k - 1
        int k = D - m + 1;
        phi1.set({1, 0}, Coefficient(1));
        phi2.set({1, 0}, Coefficient(1));
        phi2.set({k, 0}, Coefficient(1));
    }
    TruncSeries fphi = substitute(model.f, {phi1, phi2});
    REQUIRE(fphi.valuation() == D);
    TruncSeries psi1({"t"}, order);
    psi1.set({a1, 0}, Coefficient(1));
    TruncSeries psi2 = divide_exact(fphi, psi1);
    return make_arc(psi1, psi2, {phi1, phi2}, order);
}

SingularityModel model_zm_minus(int m) {
    return make_model(
        parse_poly("z1^" + std::to_string(m) + " - z2^" + std::to_string(m), {"z1", "z2"}));
}

}  // namespace

TEST_CASE("make_model: multiplicity and shear record") {
    SingularityModel m1 = make_model(parse_poly("z1^2 - z2^5", {"z1", "z2"}));
    CHECK(m1.m == 2);
    CHECK(!m1.sheared);
    // z1^2 missing: f = z1 z2 + z2^2 needs a shear
    SingularityModel m2 = make_model(parse_poly("z1*z2 + z2^2", {"z1", "z2"}));
    CHECK(m2.m == 2);
    CHECK(m2.sheared);
    CHECK(!m2.f_normalized.coefficient({2, 0}).is_zero());
    CHECK_THROWS_AS(make_model(parse_poly("z1 + z2^2", {"z1", "z2"})), precondition_error);
    CHECK_THROWS_AS(make_model(MultiPoly({"z1"})), precondition_error);
}

TEST_CASE("validate_arc examples") {
    SUBCASE("(t, t, t, 0) on xy = z^2 - u^5") {
        SingularityModel mod = make_model(parse_poly("z^2 - u^5", {"z", "u"}));
        Arc arc = make_arc(ts({{1, 1}}, 16), ts({{1, 1}}, 16),
                           {ts({{1, 1}}, 16), TruncSeries::zero({"t"}, 16)});
        ValuationReport rep = validate_arc(arc, mod);
        CHECK(rep.valid);
        CHECK(*rep.a1 == 1);
        CHECK(*rep.a2 == 1);
        CHECK(*rep.D == 2);
    }
    SUBCASE("(t, t^2, t, 0) on xy = z^3 + w^3: a1=1, a2=2, D=3") {
        SingularityModel mod = make_model(parse_poly("z^3 + w^3", {"z", "w"}));
        // alpha^3 + beta^3 = 1 with (alpha, beta) = (1, 0)
        Arc arc = make_arc(ts({{1, 1}}, 16), ts({{2, 1}}, 16),
                           {ts({{1, 1}}, 16), TruncSeries::zero({"t"}, 16)});
        ValuationReport rep = validate_arc(arc, mod);
        CHECK(rep.valid);
        CHECK(*rep.a1 == 1);
        CHECK(*rep.a2 == 2);
        CHECK(*rep.D == 3);
    }
    SUBCASE("(t, t, t, t) on xy = z^2 - u^5 fails at order 5") {
        SingularityModel mod = make_model(parse_poly("z^2 - u^5", {"z", "u"}));
        Arc arc =
            make_arc(ts({{1, 1}}, 16), ts({{1, 1}}, 16), {ts({{1, 1}}, 16), ts({{1, 1}}, 16)});
        ValuationReport rep = validate_arc(arc, mod);
        CHECK(!rep.valid);
        CHECK(*rep.residual_valuation == 5);
        CHECK_THROWS_AS(classify(arc, mod), precondition_error);
    }
}

TEST_CASE("classify examples") {
    SUBCASE("component 1 on xy = z^2 - u^5") {
        SingularityModel mod = make_model(parse_poly("z^2 - u^5", {"z", "u"}));
        Arc arc = make_arc(ts({{1, 1}}, 16), ts({{1, 1}}, 16),
                           {ts({{1, 1}}, 16), TruncSeries::zero({"t"}, 16)});
        ComponentLabel lab = classify(arc, mod);
        CHECK(lab.open_stratum);
        CHECK(lab.index == 1);
    }
    SUBCASE("component 1 on xy = z^3 + w^3 via a1 = 1, D = 3 = m") {
        SingularityModel mod = make_model(parse_poly("z^3 + w^3", {"z", "w"}));
        Arc arc = make_arc(ts({{1, 1}}, 16), ts({{2, 1}}, 16),
                           {ts({{1, 1}}, 16), TruncSeries::zero({"t"}, 16)});
        CHECK(classify(arc, mod).index == 1);
    }
    SUBCASE("intersection stratum when D != m") {
        SingularityModel mod = make_model(parse_poly("z^3 + w^3", {"z", "w"}));
        // z = t, w = -t + t^2: f = 3t^4 - 3t^5 + t^6, D = 4
        TruncSeries w({"t"}, 16);
        w.set({1, 0}, Coefficient(-1));
        w.set({2, 0}, Coefficient(1));
        TruncSeries fphi = substitute(mod.f, {ts({{1, 1}}, 16), w});
        REQUIRE(*fphi.valuation() == 4);
        TruncSeries psi1 = ts({{2, 1}}, 16);
        Arc arc = make_arc(psi1, divide_exact(fphi, psi1), {ts({{1, 1}}, 16), w});
        ComponentLabel lab = classify(arc, mod);
        CHECK(!lab.open_stratum);
        CHECK(lab.str() == "intersection stratum");
    }
}

TEST_CASE("reachable_components: formula, oracle, examples") {
    SUBCASE("open stratum arc reaches exactly its component") {
        for (int m : {2, 3, 4}) {
            SingularityModel mod = model_zm_minus(m);
            for (int i = 1; i < m; ++i) {
                Arc arc = fixture_arc(mod, i, m);
                REQUIRE(classify(arc, mod).index == i);
                CHECK(reachable_components(arc, mod, false) == std::set<int>{i});
            }
        }
    }
    SUBCASE("m=3, a1=a2=2 (D=4) reaches {1,2}, verified by construction") {
        SingularityModel mod = model_zm_minus(3);
        Arc arc = fixture_arc(mod, 2, 4);
        auto set = reachable_components(arc, mod, true);
        CHECK(set == std::set<int>{1, 2});
        CHECK(set == oracles::reachable_by_partitions(3, 2, 2));
    }
    SUBCASE("a1, a2 >= m-1 reaches every component") {
        SingularityModel mod = model_zm_minus(4);
        Arc arc = fixture_arc(mod, 4, 8);
        CHECK(reachable_components(arc, mod, false) == std::set<int>{1, 2, 3});
    }
    SUBCASE("formula agrees with the partition oracle on a spot grid") {
        for (int m : {2, 3, 5}) {
            SingularityModel mod = model_zm_minus(m);
            for (int D : {m, m + 1, m + 3}) {
                if (D > 10) continue;
                for (int a1 = 1; a1 < D; ++a1) {
                    Arc arc = fixture_arc(mod, a1, D);
                    CHECK(reachable_components(arc, mod, false) ==
                          oracles::reachable_by_partitions(m, a1, D - a1));
                }
            }
        }
    }
}

TEST_CASE("deform_to_component: residual-zero families, generic label = target") {
    for (int m : {2, 3, 4}) {
        SingularityModel mod = model_zm_minus(m);
        for (int D : {m, m + 2}) {
            for (int a1 = 1; a1 < std::min(D, m + 1); ++a1) {
                Arc arc = fixture_arc(mod, a1, D);
                for (int i : reachable_components(arc, mod, false)) {
                    DeformationOutcome out = deform_to_component(arc, mod, i);
                    const DeformationFamily& fam = out.stages.back();
                    CHECK(fam.kind == "main");
                    CHECK(fam.residual_order >= arc.order - a1);
                    CHECK(out.generic_label.open_stratum);
                    CHECK(out.generic_label.index == i);
                }
            }
        }
    }
}

TEST_CASE("deform: unreachable target is a precondition error") {
    SingularityModel mod = model_zm_minus(3);
    Arc arc = fixture_arc(mod, 1, 3);
    CHECK_THROWS_AS(deform_to_component(arc, mod, 2, 0), precondition_error);
    CHECK_THROWS_AS(deform_to_component(arc, mod, 5, 0), precondition_error);
}

TEST_CASE("reference family on xy = z^m: (t^i (t+s)^{m-i}, t^{m-i} (t+s)^i, t(t+s))") {
    // this family satisfies xy = z^m identically at any order
    for (int m : {3, 4}) {
        for (int i = 1; i < m; ++i) {
            const int N = 12;
            TruncSeries t = TruncSeries::monomial({"t", "s"}, N, {1, 0}, Coefficient(1));
            TruncSeries tps = t + TruncSeries::monomial({"t", "s"}, N, {0, 1}, Coefficient(1));
            TruncSeries resid = t.pow(i) * tps.pow(m - i) * (t.pow(m - i) * tps.pow(i)) -
                                (t * tps).pow(m);
            CHECK(resid.is_zero_to_order());
        }
    }
}

TEST_CASE("deform from the intersection arc (t^m, t^m, t^2) on xy = z^m") {
    const int m = 3;
    SingularityModel mod = make_model(parse_poly("z^" + std::to_string(m), {"z"}));
    Arc arc = make_arc(ts({{m, 1}}, 16), ts({{m, 1}}, 16), {ts({{2, 1}}, 16)});
    REQUIRE(validate_arc(arc, mod).valid);
    auto reach = reachable_components(arc, mod, false);
    CHECK(reach == std::set<int>{1, 2});  // a1 = a2 = 3 >= m-1
    for (int i : reach) {
        DeformationOutcome out = deform_to_component(arc, mod, i);
        CHECK(out.generic_label.index == i);
    }
}

TEST_CASE("deform on a sheared model (no z1^m term in f)") {
    // f = z1 z2 + z2^2 has no z1^2 term; the model shears and the family is
    // still reported in the original coordinates
    SingularityModel mod = make_model(parse_poly("z1*z2 + z2^2", {"z1", "z2"}));
    REQUIRE(mod.sheared);
    TruncSeries t = ts({{1, 1}}, 16);
    TruncSeries fphi = substitute(mod.f, {t, t});  // 2 t^2
    Arc arc = make_arc(t, divide_exact(fphi, t), {t, t});
    REQUIRE(classify(arc, mod).index == 1);
    DeformationOutcome out = deform_to_component(arc, mod, 1);
    CHECK(out.stages.back().residual_order == 16);
    CHECK(out.generic_label.index == 1);
}

TEST_CASE("deform with branch coefficients in a quadratic layer stays exact") {
    // f = z1^3 - z2^3 - z2^5 at (t, t): F has nonzero branches +-sqrt(3) ...
    SingularityModel mod = make_model(parse_poly("z1^3 - z2^3 - z2^5", {"z1", "z2"}));
    TruncSeries t = ts({{1, 1}}, 16);
    TruncSeries fphi = substitute(mod.f, {t, t});
    REQUIRE(*fphi.valuation() == 5);
    Arc arc = make_arc(t, divide_exact(fphi, t), {t, t});
    auto reach = reachable_components(arc, mod, false);
    REQUIRE(reach == std::set<int>{1});
    DeformationOutcome out = deform_to_component(arc, mod, 1);
    CHECK(!out.stages.back().approx);
    CHECK(out.generic_label.index == 1);
}

TEST_CASE("deform falls back to approx when branches need a cube root") {
    // f = z1^4 - z2^4 - z2^7 at (t, t): nonzero branches have lead 4^{1/3}
    SingularityModel mod = make_model(parse_poly("z1^4 - z2^4 - z2^7", {"z1", "z2"}));
    TruncSeries t = ts({{1, 1}}, 16);
    TruncSeries fphi = substitute(mod.f, {t, t});
    REQUIRE(*fphi.valuation() == 7);
    Arc arc = make_arc(t, divide_exact(fphi, t), {t, t});
    auto reach = reachable_components(arc, mod, false);
    REQUIRE(reach == std::set<int>{1});
    DeformationOutcome out = deform_to_component(arc, mod, 1);
    CHECK(out.stages.back().approx);
    CHECK(out.generic_label.index == 1);
}

TEST_CASE("D = infinity: both psi zero emits (s t, 0, phi)") {
    SingularityModel mod = make_model(parse_poly("z1^2 - z2^2", {"z1", "z2"}));
    Arc arc = make_arc(TruncSeries::zero({"t"}, 16), TruncSeries::zero({"t"}, 16),
                       {ts({{1, 1}}, 16), ts({{1, 1}}, 16)});
    REQUIRE(validate_arc(arc, mod).valid);
    REQUIRE(!validate_arc(arc, mod).D);
    DeformationOutcome out = deform_to_component(arc, mod, 1);
    REQUIRE(out.stages.size() >= 2);
    const DeformationFamily& st0 = out.stages.front();
    CHECK(st0.kind == "preliminary-zero");
    CHECK(st0.Psi1.coefficient({1, 1}) == Coefficient(1));
    CHECK(st0.Psi1.terms().size() == 1);
    CHECK(st0.Psi2.is_zero_to_order());
    CHECK(st0.residual_order == 16);
    CHECK(out.stages.back().kind == "main");
    CHECK(out.generic_label.index == 1);
    CHECK(short_stability(st0));  // phi_1 = t is s-independent and nonzero
}

TEST_CASE("D = infinity: one-sided psi uses F / psi1") {
    SingularityModel mod = make_model(parse_poly("z1^2 - z2^2", {"z1", "z2"}));
    Arc arc = make_arc(ts({{1, 1}}, 16), TruncSeries::zero({"t"}, 16),
                       {ts({{1, 1}}, 16), ts({{1, 1}}, 16)});
    REQUIRE(validate_arc(arc, mod).valid);
    DeformationOutcome out = deform_to_component(arc, mod, 1);
    const DeformationFamily& st0 = out.stages.front();
    CHECK(st0.kind == "preliminary-divide");
    CHECK(st0.Psi1.coefficient({1, 0}) == Coefficient(1));  // psi1 = t untouched
    CHECK(out.stages.back().kind == "main");
    CHECK(out.generic_label.index == 1);
}

TEST_CASE("short_stability criterion") {
    const int N = 10;
    auto mono = [&](int a, int b, int c = 1) {
        return TruncSeries::monomial({"t", "s"}, N, {a, b}, Coefficient(c));
    };
    SUBCASE("reference family with the extra ts coordinate: criterion alone is false") {
        const int m = 3, i = 1;
        TruncSeries t = mono(1, 0), tps = mono(1, 0) + mono(0, 1);
        DeformationFamily fam;
        fam.Psi1 = t.pow(i) * tps.pow(m - i);
        fam.Psi2 = t.pow(m - i) * tps.pow(i);
        fam.Phi = {t * tps, mono(1, 1)};
        CHECK(!short_stability(fam));
    }
    SUBCASE("an s-independent nonzero coordinate flips it to true") {
        DeformationFamily fam;
        fam.Psi1 = mono(1, 1);
        fam.Psi2 = mono(2, 0) + mono(3, 1);
        fam.Phi = {mono(1, 1), mono(2, 0)};
        CHECK(short_stability(fam));
    }
    SUBCASE("(st, 0, phi) with phi_1 = t") {
        DeformationFamily fam;
        fam.Psi1 = mono(1, 1);
        fam.Psi2 = TruncSeries::zero({"t", "s"}, N);
        fam.Phi = {mono(1, 0)};
        CHECK(short_stability(fam));
    }
}

TEST_CASE("dim X >= 3 fixtures produce short-stable families by default") {
    for (int m : {2, 3}) {
        SingularityModel mod = model_zm_minus(m);  // n = 2, dim X = 3
        for (int i = 1; i < m; ++i) {
            Arc arc = fixture_arc(mod, i, m);
            DeformationOutcome out = deform_to_component(arc, mod, i);
            CHECK(out.stages.back().short_stable);
        }
    }
}

TEST_CASE("singular locus codimension estimates") {
    CHECK(singular_codim_estimate(parse_poly("z1^2 - z2^5", {"z1", "z2"}), 16) == 3);
    CHECK(singular_codim_estimate(parse_poly("z1^2 - z2^5", {"z1", "z2", "z3"}), 16) == 3);
    CHECK(singular_codim_estimate(parse_poly("z1^2", {"z1", "z2"}), 16) == 2);
    // non-reduced plane section
    CHECK(singular_codim_estimate(parse_poly("z1^2 - 2*z1*z2 + z2^2", {"z1", "z2"}), 16) == 2);
    // three effective variables: probe-line heuristic path
    CHECK(singular_codim_estimate(parse_poly("z1^2 + z2^3 + z3^3", {"z1", "z2", "z3"}), 16) == 3);
}

TEST_CASE("sideways deformation on xy = z1^2 - z2^5 in C^5") {
    SingularityModel mod = make_model(parse_poly("z1^2 - z2^5", {"z1", "z2", "z3"}));
    Arc arc = make_arc(ts({{1, 1}}, 16), ts({{1, 1}}, 16),
                       {ts({{1, 1}}, 16), TruncSeries::zero({"t"}, 16),
                        TruncSeries::zero({"t"}, 16)});
    SidewaysResult res = sideways_deform(arc, mod);
    CHECK(res.codim_estimate >= 3);
    CHECK(res.family.residual_order == 16);
    CHECK(res.family.r == 2);
    // family is (t + s^5, t - s^5, t, s^2, 0) up to branch ordering
    CHECK(res.family.Phi[0].coefficient({1, 0}) == Coefficient(1));
    CHECK(res.family.Phi[1].coefficient({0, 2}) == Coefficient(1));
    CHECK(res.family.Phi[2].is_zero_to_order());
    CHECK(res.certificate.ideal_slice_valuation == 5);
    CHECK(res.certificate.joint_unit_at_probe);
    Arc at0 = res.family.restrict_at_zero();
    CHECK(at0.psi1.equal_to_order(arc.psi1.truncated(at0.order)));
}

TEST_CASE("sideways preconditions") {
    SUBCASE("codim 2 singular locus is rejected") {
        SingularityModel mod = make_model(parse_poly("z1^2", {"z1", "z2"}));
        Arc arc = make_arc(ts({{1, 1}}, 16), ts({{1, 1}}, 16),
                           {ts({{1, 1}}, 16), TruncSeries::zero({"t"}, 16)});
        REQUIRE(classify(arc, mod).open_stratum);
        CHECK_THROWS_WITH_AS(sideways_deform(arc, mod), doctest::Contains("codimension"),
                             precondition_error);
    }
    SUBCASE("no unit-multiplicity phi_j: arc not general") {
        SingularityModel mod = make_model(parse_poly("z1^2 - z2^5", {"z1", "z2", "z3"}));
        Arc arc = make_arc(TruncSeries::zero({"t"}, 16), TruncSeries::zero({"t"}, 16),
                           {ts({{5, 1}}, 16), ts({{2, 1}}, 16), TruncSeries::zero({"t"}, 16)});
        REQUIRE(validate_arc(arc, mod).valid);
        CHECK_THROWS_WITH_AS(sideways_deform(arc, mod), doctest::Contains("not general"),
                             precondition_error);
    }
}

TEST_CASE("sideways handles a reparametrized and translated arc") {
    SingularityModel mod = make_model(parse_poly("z1^2 - z2^5", {"z1", "z2", "z3"}));
    TruncSeries phi1 = ts({{1, 1}, {2, 1}}, 16);  // multiplicity 1, not equal to t
    TruncSeries phi2 = ts({{3, 1}}, 16);
    TruncSeries zero = TruncSeries::zero({"t"}, 16);
    TruncSeries fphi = substitute(mod.f, {phi1, phi2, zero});
    REQUIRE(*fphi.valuation() == 2);
    TruncSeries psi1 = ts({{1, 1}}, 16);
    Arc arc = make_arc(psi1, divide_exact(fphi, psi1), {phi1, phi2, zero});
    REQUIRE(classify(arc, mod).open_stratum);
    SidewaysResult res = sideways_deform(arc, mod);
    CHECK(res.family.residual_order == 16);
    CHECK(res.certificate.joint_unit_at_probe);
    CHECK(res.certificate.ideal_slice_valuation >= 1);
    Arc at0 = res.family.restrict_at_zero();
    CHECK(at0.phi[0].equal_to_order(phi1.truncated(at0.order)));
    CHECK(at0.phi[1].equal_to_order(phi2.truncated(at0.order)));
}
