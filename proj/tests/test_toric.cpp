#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "arcnash/toric.hpp"

using namespace arcnash;

namespace {
// oracle: decomposition search by direct enumeration of all pairs (w, z)
// with w + z = v over the k/r grid, coded independently of is_minimal
bool minimal_by_pairs(const LatticeVector& v, const CyclicQuotient& q) {
    const int n = q.n();
    std::vector<long> cap(n);
    for (int i = 0; i < n; ++i) {
        Rational c = v.coords[i] * q.r;
        cap[i] = (numerator(c) / denominator(c)).convert_to<long>();
    }
    std::vector<long> k(n, 0);
    auto in_lattice = [&](const std::vector<long>& kk) {
        for (int c = 0; c < q.r; ++c) {
            bool ok = true;
            for (int i = 0; i < n; ++i)
                if ((kk[i] - static_cast<long>(c) * q.weights[i]) % q.r != 0) {
                    ok = false;
                    break;
                }
            if (ok) return true;
        }
        return false;
    };
    for (;;) {
        bool interior = true, equal = true, zero = true;
        for (int i = 0; i < n; ++i) {
            if (k[i] == 0) interior = false;
            if (k[i] != cap[i]) equal = false;
            if (k[i] != 0) zero = false;
        }
        if (interior && !equal && !zero && in_lattice(k)) {
            std::vector<long> z(n);
            for (int i = 0; i < n; ++i) z[i] = cap[i] - k[i];
            if (in_lattice(z)) return false;  // v = w + z decomposes
        }
        int pos = 0;
        while (pos < n) {
            if (++k[pos] <= cap[pos]) break;
            k[pos] = 0;
            ++pos;
        }
        if (pos == n) break;
    }
    return true;
}
}  // namespace

TEST_CASE("quotient validation") {
    CHECK_NOTHROW(make_quotient(2, {1, 1, 1}));
    CHECK_NOTHROW(make_quotient(5, {1, 2, 3}));
    // 3 | 1*3: not isolated
    CHECK_THROWS_AS(make_quotient(3, {1, 1, 3}), precondition_error);
    CHECK_THROWS_AS(make_quotient(4, {1, 2, 3}), precondition_error);  // gcd(2,4) = 2
    CHECK_THROWS_AS(make_quotient(1, {1, 1}), precondition_error);
    CHECK_THROWS_AS(make_quotient(3, {1}), precondition_error);
}

TEST_CASE("interior candidates") {
    SUBCASE("r=2, a=(1,1,1): single candidate (1/2,1/2,1/2)") {
        auto cands = interior_candidates(make_quotient(2, {1, 1, 1}));
        REQUIRE(cands.size() == 1);
        CHECK(cands[0].coords == std::vector<Rational>{{Rational(1, 2), Rational(1, 2),
                                                        Rational(1, 2)}});
        CHECK(cands[0].c == 1);
    }
    SUBCASE("r=3, a=(1,1,2): two candidates") {
        auto cands = interior_candidates(make_quotient(3, {1, 1, 2}));
        REQUIRE(cands.size() == 2);
        CHECK(cands[0].coords ==
              std::vector<Rational>{{Rational(1, 3), Rational(1, 3), Rational(2, 3)}});
        CHECK(cands[1].coords ==
              std::vector<Rational>{{Rational(2, 3), Rational(2, 3), Rational(1, 3)}});
    }
    SUBCASE("membership certificates: v - c a/r is integral") {
        for (auto& q : {make_quotient(5, {1, 2, 3}), make_quotient(7, {1, 3, 5, 6})}) {
            for (const auto& v : interior_candidates(q)) {
                for (size_t i = 0; i < v.coords.size(); ++i) {
                    Rational diff = v.coords[i] - Rational(v.c * q.weights[i], q.r);
                    CHECK(denominator(diff) == 1);
                }
            }
        }
    }
}

TEST_CASE("is_minimal examples") {
    CyclicQuotient q2 = make_quotient(2, {1, 1, 1});
    SUBCASE("(1,1,1) is not minimal: (1/2)*3 + (1/2)*3") {
        LatticeVector one;
        one.c = 0;
        one.coords.assign(3, Rational(1));
        std::optional<std::pair<LatticeVector, LatticeVector>> wit;
        CHECK(!is_minimal(one, q2, &wit));
        REQUIRE(wit);
        for (int i = 0; i < 3; ++i) {
            CHECK(wit->first.coords[i] + wit->second.coords[i] == Rational(1));
            CHECK(wit->first.coords[i] > 0);
        }
    }
    SUBCASE("(1/2,1/2,1/2) is minimal") {
        LatticeVector v;
        v.c = 1;
        v.coords.assign(3, Rational(1, 2));
        CHECK(is_minimal(v, q2));
    }
    SUBCASE("(1/3,1/3,2/3) is minimal for r=3, a=(1,1,2)") {
        CyclicQuotient q3 = make_quotient(3, {1, 1, 2});
        LatticeVector v;
        v.c = 1;
        v.coords = {Rational(1, 3), Rational(1, 3), Rational(2, 3)};
        CHECK(is_minimal(v, q3));
    }
    SUBCASE("vectors outside N are rejected") {
        LatticeVector bad;
        bad.c = 0;
        bad.coords = {Rational(1, 2), Rational(1, 2), Rational(1, 3)};
        CHECK_THROWS_AS(is_minimal(bad, q2), precondition_error);
    }
}

TEST_CASE("essential_divisors_quotient examples") {
    SUBCASE("r=2, a=(1,1,1)") {
        ToricReport rep = essential_divisors_quotient(make_quotient(2, {1, 1, 1}));
        CHECK(rep.identity_holds);
        CHECK(!rep.all_ones_minimal);
        REQUIRE(rep.candidates.size() == 1);
        CHECK(rep.minimal[0]);
        CHECK(rep.conclusion.find("nowhere dense") != std::string::npos);
    }
    SUBCASE("r=3, a=(1,1,2): (1,1,1) = v_1 + v_2") {
        ToricReport rep = essential_divisors_quotient(make_quotient(3, {1, 1, 2}));
        CHECK(rep.identity_holds);
        REQUIRE(rep.all_ones_witness);
    }
    SUBCASE("r=5, a=(1,2,3): minimal set agrees with the pair oracle") {
        CyclicQuotient q = make_quotient(5, {1, 2, 3});
        ToricReport rep = essential_divisors_quotient(q);
        for (size_t i = 0; i < rep.candidates.size(); ++i)
            CHECK(rep.minimal[i] == minimal_by_pairs(rep.candidates[i], q));
    }
}

TEST_CASE("property: random isolated quotients") {
    std::mt19937 rng(555);
    std::uniform_int_distribution<int> dr(2, 10), dn(2, 4), da(1, 11);
    int done = 0;
    while (done < 15) {
        int r = dr(rng), n = dn(rng);
        std::vector<int> a;
        for (int i = 0; i < n; ++i) a.push_back(da(rng));
        bool isolated = true;
        for (int x : a) isolated = isolated && std::gcd(x % r == 0 ? r : x % r, r) == 1;
        if (!isolated) {
            CHECK_THROWS_AS(make_quotient(r, a), precondition_error);
            continue;
        }
        CyclicQuotient q = make_quotient(r, a);
        ToricReport rep = essential_divisors_quotient(q);
        // v_1 + v_{r-1} = (1,...,1) exactly
        CHECK(rep.identity_holds);
        CHECK(!rep.all_ones_minimal);
        // every rejected candidate carries a witness, minimality matches oracle
        for (size_t i = 0; i < rep.candidates.size(); ++i) {
            CHECK(rep.minimal[i] == minimal_by_pairs(rep.candidates[i], q));
            if (!rep.minimal[i]) {
                REQUIRE(rep.witnesses[i]);
                auto& [w, z] = *rep.witnesses[i];
                for (size_t k = 0; k < w.coords.size(); ++k) {
                    CHECK(w.coords[k] + z.coords[k] == rep.candidates[i].coords[k]);
                    CHECK(w.coords[k] > 0);
                    CHECK(z.coords[k] >= 0);
                }
            }
        }
        ++done;
    }
}
