#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arcnash/errors.hpp"
#include "arcnash/rational.hpp"

namespace arcnash {

// Isolated cyclic quotient C^n / (1/r)(a_1,...,a_n): the generator acts by
// x_i -> eps^{a_i} x_i. Isolated forces gcd(a_i, r) = 1 for every i.
struct CyclicQuotient {
    int r = 2;
    std::vector<int> weights;  // reduced mod r
    int n() const { return static_cast<int>(weights.size()); }
};

CyclicQuotient make_quotient(int r, std::vector<int> weights);

// Point of N = Z^n + Z (a_1/r, ..., a_n/r) inside the cone Delta = R_{>=0}^n.
// c is the membership certificate: v - c*(a/r) is integral.
struct LatticeVector {
    std::vector<Rational> coords;
    int c = 0;

    bool interior() const {
        for (const auto& x : coords)
            if (x <= 0) return false;
        return true;
    }
};

// v_c = (c a_1 mod r, ..., c a_n mod r)/r for c = 1..r-1; all interior.
std::vector<LatticeVector> interior_candidates(const CyclicQuotient& q);

// Exhaustive decomposition search over lattice points of N cap Delta that are
// coordinate-wise <= v: minimal iff no interior lattice point w != v fits.
bool is_minimal(const LatticeVector& v, const CyclicQuotient& q,
                std::optional<std::pair<LatticeVector, LatticeVector>>* witness = nullptr);

struct ToricReport {
    CyclicQuotient quotient;
    std::vector<LatticeVector> candidates;
    std::vector<bool> minimal;
    std::vector<std::optional<std::pair<LatticeVector, LatticeVector>>> witnesses;
    bool identity_holds = false;  // v_1 + v_{r-1} == (1,...,1)
    LatticeVector all_ones;
    bool all_ones_minimal = true;
    std::optional<std::pair<LatticeVector, LatticeVector>> all_ones_witness;
    std::string conclusion;
};

ToricReport essential_divisors_quotient(const CyclicQuotient& q);

}  // namespace arcnash
