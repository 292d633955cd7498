#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arcnash/multipoly.hpp"

namespace arcnash {

// Chart at level c of the blow-up sequence of X_m = (xy = z^2 - t^m):
// (x, y, z, t) = (x_c t^c, y_c t^c, z_c t^c, t), local equation
// x_c y_c = z_c^2 - t^{m-2c}, exceptional divisor E_c = (t = 0).
struct BlowupChart {
    int level = 1;
    MultiPoly equation;                 // over chart vars (x, y, z, t)
    std::vector<MultiPoly> substitution;  // images of the previous (x,y,z,t)
    MultiPoly exceptional;              // t
    bool smooth = false;
    bool substitution_verified = false;  // pullback identity checked symbolically
};

std::vector<BlowupChart> blowup_sequence(int m);

struct DiscrepancyLedger {
    std::string family;  // "Xm" | "higher"
    std::vector<std::pair<std::string, int>> entries;
    int min_discrepancy = 0;
};

DiscrepancyLedger discrepancies_xm(int m);
// higher family xy = z^2 - g(u_1..u_r), mult g >= 4: a(E1) = r, a(E2) = r+1
DiscrepancyLedger discrepancies_higher(int r);

// Essentiality by discrepancy alone (canonical singularities):
// essential iff a(E) < 1 + min-discrep.
bool min_discrep_essential(int aE, int min_discrep);

// Composition g(a,b,m)^{-1} o h(c,m) together with its symbolic certificate.
struct MonomialMap {
    std::string name;
    int c = 0, m = 0, a = 0, b = 0;
    std::vector<std::string> source_vars, target_vars;
    std::vector<MultiPoly> images;  // one per target variable, monomials in source vars
    MultiPoly source_equation, target_equation;
    std::vector<int> unit_exponents;  // target o images = monomial * source
    bool verified = false;
    bool composition_verified = false;  // images agree with g^{-1} o h monomially
    bool exceptional_to_v_axis = false;
    std::string reading;  // which exponent bookkeeping validated
};

MonomialMap witness_nonessential(int c, int m);

enum class Verdict { Essential, NonEssential, Undecided };
enum class NashAnswer { Yes, No, Undecided };

struct DivisorVerdict {
    std::string name;
    Verdict verdict = Verdict::Undecided;
    int discrepancy = 0;
    std::string witness_kind;    // "min-discrepancy" | "monomial-map" | "small-resolution" |
                                 // "smooth-blowup" | "factoriality" | "perfect-square" | ...
    std::string witness_detail;
};

struct EssentialReport {
    std::string family;
    int component_count = 1;
    std::vector<DivisorVerdict> divisors;
    NashAnswer nash_surjective = NashAnswer::Undecided;
    std::string note;

    int essential_count() const {
        int k = 0;
        for (const auto& d : divisors)
            if (d.verdict == Verdict::Essential) ++k;
        return k;
    }
    bool all_decided() const {
        for (const auto& d : divisors)
            if (d.verdict == Verdict::Undecided) return false;
        return true;
    }
};

EssentialReport essential_divisors_xm(int m);
EssentialReport nash_verdict_xm(int m);

// Exact polynomial square root by leading-term recursion in graded lex.
// `root` empty means no square root exists over the working field;
// field_obstruction distinguishes "leading coefficient is not a square
// in the working field" from structural non-squareness.
struct SquareResult {
    std::optional<MultiPoly> root;
    bool field_obstruction = false;
    std::string detail;
};

SquareResult perfect_square(const MultiPoly& p);

// Remark-style witness for a non-essential E2 in the higher family:
// truncated sqrt(1 + w R(u', h^2 w)) with its residual certificate.
struct SquareRootWitness {
    MultiPoly h;            // sqrt of g_m
    MultiPoly sqrt_series;  // truncated series in (u'_1..u'_{r-1}, w)
    int residual_order = 0;
    std::string divisor;    // description of the analytic divisor blown up
};

struct HigherVerdict {
    EssentialReport report;
    std::optional<SquareRootWitness> witness;
};

HigherVerdict nash_verdict_higher(const MultiPoly& g, int order);

}  // namespace arcnash
