#include "arcnash/toric.hpp"

#include <numeric>

namespace arcnash {

CyclicQuotient make_quotient(int r, std::vector<int> weights) {
    if (r < 2) throw precondition_error("quotient: order r >= 2 required");
    if (weights.size() < 2) throw precondition_error("quotient: n >= 2 required");
    CyclicQuotient q;
    q.r = r;
    for (int a : weights) q.weights.push_back(((a % r) + r) % r);
    // isolated action: r does not divide c*a_i for any c in 1..r-1
    for (size_t i = 0; i < q.weights.size(); ++i) {
        for (int c = 1; c < r; ++c)
            if ((static_cast<long>(c) * q.weights[i]) % r == 0)
                throw precondition_error("quotient: action not isolated, r | " + std::to_string(c) +
                                         "*a_" + std::to_string(i + 1) + " (gcd(a_i, r) = " +
                                         std::to_string(std::gcd(q.weights[i], r)) + ")");
    }
    return q;
}

std::vector<LatticeVector> interior_candidates(const CyclicQuotient& q) {
    std::vector<LatticeVector> out;
    for (int c = 1; c < q.r; ++c) {
        LatticeVector v;
        v.c = c;
        for (int a : q.weights)
            v.coords.push_back(Rational((static_cast<long>(c) * a) % q.r, q.r));
        if (!v.interior())
            throw verification_error("candidate v_c not interior; isolatedness check is broken");
        bool dup = false;
        for (const auto& w : out) dup = dup || w.coords == v.coords;
        if (!dup) out.push_back(std::move(v));
    }
    return out;
}

namespace {

// modular inverse of a mod r, gcd(a, r) = 1
int inv_mod(int a, int r) {
    int t = 0, nt = 1, rr = r, nr = ((a % r) + r) % r;
    while (nr != 0) {
        int qq = rr / nr;
        int tmp = t - qq * nt;
        t = nt;
        nt = tmp;
        tmp = rr - qq * nr;
        rr = nr;
        nr = tmp;
    }
    return ((t % r) + r) % r;
}

// enumerate lattice points of N cap Delta coordinate-wise <= v, reporting
// each as integer numerators over r
template <typename F>
void enumerate_below(const CyclicQuotient& q, const std::vector<Rational>& v, F&& visit) {
    const int n = static_cast<int>(q.weights.size());
    std::vector<long> cap(n);
    for (int i = 0; i < n; ++i) {
        Rational c = v[i] * q.r;
        cap[i] = (numerator(c) / denominator(c)).convert_to<long>();
    }
    // points with k_i == c*a_i (mod r), 0 <= k_i <= cap_i, one class per c
    for (int c = 0; c < q.r; ++c) {
        std::vector<long> base(n), count(n);
        bool feasible = true;
        for (int i = 0; i < n; ++i) {
            base[i] = (static_cast<long>(c) * q.weights[i]) % q.r;
            if (base[i] > cap[i]) {
                feasible = false;
                break;
            }
            count[i] = (cap[i] - base[i]) / q.r + 1;
        }
        if (!feasible) continue;
        std::vector<long> idx(n, 0);
        for (;;) {
            std::vector<long> k(n);
            for (int i = 0; i < n; ++i) k[i] = base[i] + idx[i] * q.r;
            visit(k, c);
            int pos = 0;
            while (pos < n) {
                if (++idx[pos] < count[pos]) break;
                idx[pos] = 0;
                ++pos;
            }
            if (pos == n) break;
        }
    }
}

}  // namespace

bool is_minimal(const LatticeVector& v, const CyclicQuotient& q,
                std::optional<std::pair<LatticeVector, LatticeVector>>* witness) {
    if (!v.interior()) throw precondition_error("is_minimal: vector must be interior");
    // membership: v in N
    {
        std::vector<long> num(q.weights.size());
        for (size_t i = 0; i < v.coords.size(); ++i) {
            Rational s = v.coords[i] * q.r;
            if (denominator(s) != 1)
                throw precondition_error("is_minimal: coordinate denominator does not divide r");
            num[i] = numerator(s).convert_to<long>();
        }
        int c0 = static_cast<int>((num[0] % q.r) * inv_mod(q.weights[0], q.r) % q.r);
        for (size_t i = 0; i < num.size(); ++i)
            if ((num[i] - static_cast<long>(c0) * q.weights[i]) % q.r != 0)
                throw precondition_error("is_minimal: vector is not in the lattice N");
    }
    bool minimal = true;
    enumerate_below(q, v.coords, [&](const std::vector<long>& k, int c) {
        if (!minimal) return;
        bool inter = true, equal = true;
        for (size_t i = 0; i < k.size(); ++i) {
            if (k[i] == 0) inter = false;
            if (Rational(k[i], q.r) != v.coords[i]) equal = false;
        }
        if (!inter || equal) return;
        minimal = false;
        if (witness) {
            LatticeVector w, z;
            w.c = c;
            z.c = ((v.c - c) % q.r + q.r) % q.r;
            for (size_t i = 0; i < k.size(); ++i) {
                w.coords.push_back(Rational(k[i], q.r));
                z.coords.push_back(v.coords[i] - Rational(k[i], q.r));
            }
            *witness = std::make_pair(w, z);
        }
    });
    return minimal;
}

ToricReport essential_divisors_quotient(const CyclicQuotient& q) {
    ToricReport rep;
    rep.quotient = q;
    rep.candidates = interior_candidates(q);
    for (const auto& v : rep.candidates) {
        std::optional<std::pair<LatticeVector, LatticeVector>> wit;
        bool mn = is_minimal(v, q, &wit);
        rep.minimal.push_back(mn);
        rep.witnesses.push_back(wit);
    }
    // identity (1,...,1) = v_1 + v_{r-1}
    LatticeVector v1, vr1;
    for (int a : q.weights) {
        v1.coords.push_back(Rational(a % q.r, q.r));
        vr1.coords.push_back(Rational((static_cast<long>(q.r - 1) * a) % q.r, q.r));
    }
    v1.c = 1;
    vr1.c = q.r - 1;
    rep.identity_holds = true;
    for (size_t i = 0; i < v1.coords.size(); ++i)
        if (v1.coords[i] + vr1.coords[i] != 1) rep.identity_holds = false;
    if (!rep.identity_holds)
        throw verification_error("toric identity v_1 + v_{r-1} = (1,...,1) failed");

    rep.all_ones.c = 0;
    rep.all_ones.coords.assign(q.weights.size(), Rational(1));
    rep.all_ones_minimal = is_minimal(rep.all_ones, q, &rep.all_ones_witness);
    rep.conclusion =
        rep.all_ones_minimal
            ? "unexpected: (1,...,1) is minimal"
            : "arcs lifting to C^n correspond to (1,...,1), which is not minimal: they are "
              "nowhere dense in the arc space and do not form a whole component";
    if (rep.all_ones_minimal)
        throw verification_error("(1,...,1) must decompose as v_1 + v_{r-1}");
    return rep;
}

}  // namespace arcnash
