#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "arcnash/numberfield.hpp"
#include "arcnash/truncseries.hpp"
#include "oracles.hpp"

using namespace arcnash;

namespace {
TruncSeries ts(const std::vector<std::pair<int, Rational>>& coeffs, int order,
               const std::string& var = "t") {
    TruncSeries s({var}, order);
    for (auto& [e, c] : coeffs) s.set({e, 0}, Coefficient(c));
    return s;
}
}  // namespace

TEST_CASE("rational helpers") {
    CHECK(integer_kth_root(Int(27), 3) == 3);
    CHECK(integer_kth_root(Int(26), 3) == 2);
    CHECK(*perfect_kth_root(Rational(4, 9), 2) == Rational(2, 3));
    CHECK(!perfect_kth_root(Rational(2), 2));
    CHECK(*perfect_kth_root(Rational(-8), 3) == Rational(-2));
    CHECK(!perfect_kth_root(Rational(-4), 2));
    // lowest terms with positive denominator
    Rational q = Rational(6) / Rational(-4);
    CHECK(numerator(q) == -3);
    CHECK(denominator(q) == 2);
}

TEST_CASE("coefficient extension arithmetic") {
    FieldContext ctx;
    Coefficient a = ctx.sqrt_rational(Rational(2));
    CHECK((a * a) == Coefficient(2));
    CHECK((a / a) == Coefficient(1));
    CHECK((Coefficient(1) / a * a) == Coefficient(1));
    // zeta_3 satisfies z^2 + z + 1 = 0
    FieldContext c2;
    Coefficient w = c2.root_of_unity(3, 1);
    CHECK((w * w + w + Coefficient(1)).is_zero());
    CHECK(w.pow(3) == Coefficient(1));
}

TEST_CASE("coefficient mode mixing is an error") {
    Coefficient a(Rational(1, 2));
    Coefficient b = Coefficient::approx({0.5, 0});
    CHECK_THROWS_AS(a + b, mode_mix_error);
    CHECK_THROWS_AS(a * b, mode_mix_error);
    // explicit conversion is the sanctioned route
    CHECK((a.to_approx() + b).is_approx());
}

TEST_CASE("incompatible extensions raise needs_approx") {
    FieldContext c1, c2;
    Coefficient r2 = c1.sqrt_rational(Rational(2));
    Coefficient r3 = c2.sqrt_rational(Rational(3));
    CHECK_THROWS_AS(r2 + r3, needs_approx);
    // same field, sqrt(8) = 2 sqrt(2)
    Coefficient r8 = c1.sqrt_rational(Rational(8));
    CHECK((r8 - Coefficient(2) * r2).is_zero());
}

TEST_CASE("series mul: (t + t^2) * t = t^2 + t^3, valuation 2") {
    TruncSeries a = ts({{1, 1}, {2, 1}}, 6);
    TruncSeries b = ts({{1, 1}}, 6);
    TruncSeries p = a * b;
    CHECK(p.coefficient(2) == Coefficient(1));
    CHECK(p.coefficient(3) == Coefficient(1));
    CHECK(p.valuation() == 2);
    CHECK(p.order() == 6);
}

TEST_CASE("divide-exact: valuation order violation") {
    TruncSeries a = ts({{2, 1}}, 8);
    TruncSeries b = ts({{3, 1}}, 8);
    CHECK_THROWS_AS(divide_exact(a, b), precondition_error);
}

TEST_CASE("divide-exact: F(t,s) = t^3 + s t^4 by t^2, against the long-division oracle") {
    TruncSeries F({"t", "s"}, 8);
    F.set({3, 0}, Coefficient(1));
    F.set({4, 1}, Coefficient(1));
    TruncSeries b({"t", "s"}, 8);
    b.set({2, 0}, Coefficient(1));
    TruncSeries q = divide_exact(F, b);
    CHECK(q.valuation() == 1);
    CHECK(q.coefficient({1, 0}) == Coefficient(1));
    CHECK(q.coefficient({2, 1}) == Coefficient(1));
    CHECK(q.order() == 6);  // N - valuation(b)

    oracles::Dense2 a(5, std::vector<Rational>(2, Rational(0)));
    a[3][0] = 1;
    a[4][1] = 1;
    auto qo = oracles::long_division(a, {Rational(0), Rational(0), Rational(1)}, 4, 1);
    CHECK(qo[1][0] == 1);
    CHECK(qo[2][1] == 1);
    CHECK(qo[0][0] == 0);
    CHECK(qo[1][1] == 0);
}

TEST_CASE("divide-exact: non-divisible remainder is detected") {
    // (t^2 + s^2) / t has no series quotient
    TruncSeries a({"t", "s"}, 8);
    a.set({2, 0}, Coefficient(1));
    a.set({0, 2}, Coefficient(1));
    TruncSeries b({"t", "s"}, 8);
    b.set({1, 0}, Coefficient(1));
    CHECK_THROWS_AS(divide_exact(a, b), precondition_error);
}

TEST_CASE("substitute: f = z^2 - u^5 at arcs") {
    MultiPoly f({"z", "u"});
    f.set_term({2, 0}, Coefficient(1));
    f.set_term({0, 5}, Coefficient(-1));

    SUBCASE("(z,u) = (t, 0): t^2") {
        TruncSeries t = ts({{1, 1}}, 10);
        TruncSeries zero = TruncSeries::zero({"t"}, 10);
        TruncSeries r = substitute(f, {t, zero});
        CHECK(r.valuation() == 2);
        CHECK((r - ts({{2, 1}}, 10)).is_zero_to_order());
    }
    SUBCASE("(z,u) = (t + s t, t): t^2 (1+s)^2 - t^5, by the binomial expansion") {
        TruncSeries z({"t", "s"}, 10);
        z.set({1, 0}, Coefficient(1));
        z.set({1, 1}, Coefficient(1));
        TruncSeries u({"t", "s"}, 10);
        u.set({1, 0}, Coefficient(1));
        TruncSeries r = substitute(f, {z, u});
        CHECK(r.valuation() == 2);
        CHECK(r.coefficient({2, 0}) == Coefficient(1));
        CHECK(r.coefficient({2, 1}) == Coefficient(2));
        CHECK(r.coefficient({2, 2}) == Coefficient(1));
        CHECK(r.coefficient({5, 0}) == Coefficient(-1));
        CHECK(r.terms().size() == 4);
    }
    SUBCASE("valuation-0 argument is rejected") {
        TruncSeries bad = ts({{0, 1}, {1, 1}}, 10);
        TruncSeries t = ts({{1, 1}}, 10);
        CHECK_THROWS_AS(substitute(f, {bad, t}), precondition_error);
    }
}

TEST_CASE("substitute: f = x y at (t, t)") {
    MultiPoly f({"x", "y"});
    f.set_term({1, 1}, Coefficient(1));
    TruncSeries t = ts({{1, 1}}, 8);
    TruncSeries r = substitute(f, {t, t});
    CHECK((r - ts({{2, 1}}, 8)).is_zero_to_order());
}

TEST_CASE("homogeneous_part and multiplicity") {
    MultiPoly p({"u1", "u2"});
    p.set_term({2, 1}, Coefficient(1));
    p.set_term({4, 0}, Coefficient(1));
    MultiPoly h3 = p.homogeneous_part(3);
    CHECK(h3.terms().size() == 1);
    CHECK(h3.coefficient({2, 1}) == Coefficient(1));
    CHECK(*p.multiplicity() == 3);

    MultiPoly f({"z", "u"});
    f.set_term({2, 0}, Coefficient(1));
    f.set_term({0, 5}, Coefficient(-1));
    CHECK(*f.multiplicity() == 2);

    MultiPoly zero({"z", "u"});
    CHECK(!zero.multiplicity());  // infinity flag
}

TEST_CASE("property: ring axioms on random series triples, exact mode") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> dc(-5, 5), de(0, 7);
    auto rand_series = [&](int order) {
        TruncSeries s({"t", "s"}, order);
        for (int k = 0; k < 6; ++k) {
            int e1 = de(rng), e2 = de(rng);
            int c = dc(rng);
            if (c != 0 && e1 + e2 <= order)
                s.set({e1, e2}, s.coefficient({e1, e2}) + Coefficient(Rational(c, 1 + (k % 2))));
        }
        return s;
    };
    for (int it = 0; it < 30; ++it) {
        TruncSeries a = rand_series(9), b = rand_series(9), c = rand_series(9);
        CHECK(((a * b) * c - a * (b * c)).is_zero_to_order());
        CHECK((a * (b + c) - (a * b + a * c)).is_zero_to_order());
        CHECK(((a + b) - (b + a)).is_zero_to_order());
    }
}

TEST_CASE("property: substitute is a ring homomorphism") {
    std::mt19937 rng(777);
    const std::vector<std::string> vars{"z1", "z2"};
    TruncSeries arg1 = ts({{1, 1}, {3, Rational(1, 2)}}, 10);
    TruncSeries arg2 = ts({{1, -2}, {2, 1}}, 10);
    for (int it = 0; it < 20; ++it) {
        MultiPoly p = oracles::random_poly(rng, vars, 3, 4);
        MultiPoly q = oracles::random_poly(rng, vars, 3, 4);
        TruncSeries lhs = substitute(p * q, {arg1, arg2});
        TruncSeries rhs = substitute(p, {arg1, arg2}) * substitute(q, {arg1, arg2});
        CHECK((lhs - rhs).is_zero_to_order());
    }
}

TEST_CASE("property: multiplicity is additive under products") {
    std::mt19937 rng(4242);
    const std::vector<std::string> vars{"x", "y", "z"};
    for (int it = 0; it < 30; ++it) {
        MultiPoly p = oracles::random_poly(rng, vars, 4, 3);
        MultiPoly q = oracles::random_poly(rng, vars, 4, 3);
        CHECK(*(p * q).multiplicity() == *p.multiplicity() + *q.multiplicity());
    }
}

TEST_CASE("series reversion and composition") {
    TruncSeries f = ts({{1, 1}, {2, 1}}, 12);
    TruncSeries g = f.reversion();
    TruncSeries comp = f.substitute_series({g});
    CHECK(comp.coefficient(1) == Coefficient(1));
    for (int k = 2; k <= 12; ++k) CHECK(comp.coefficient(k).is_zero());
    CHECK_THROWS_AS(ts({{2, 1}}, 8).reversion(), precondition_error);
}

TEST_CASE("valuation flag: zero to working order") {
    TruncSeries z = TruncSeries::zero({"t"}, 9);
    CHECK(!z.valuation());
    CHECK(z.is_zero_to_order());
    TruncSeries s = ts({{4, 1}}, 9);
    CHECK(*s.valuation() == 4);
}

TEST_CASE("truncation order semantics: min of operands") {
    TruncSeries a = ts({{1, 1}}, 10);
    TruncSeries b = ts({{2, 3}}, 7);
    CHECK((a + b).order() == 7);
    CHECK((a * b).order() == 7);
}
