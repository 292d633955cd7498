#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arcnash/puiseux.hpp"

namespace arcnash {

// X = (xy = f(z_1,...,z_n)), multiplicity m >= 2 at the origin. The stored
// shear record makes z_1^m appear in f with nonzero coefficient; arcs and
// families are always reported in the original coordinates.
struct SingularityModel {
    int n = 0;
    MultiPoly f;             // original coordinates
    MultiPoly f_normalized;  // after z_j -> z_j + lambda_j z_1
    int m = 0;
    std::vector<Rational> shear;  // lambda_j per variable, entry 0 for z_1
    bool sheared = false;

    const std::vector<std::string>& zvars() const { return f.vars(); }
};

SingularityModel make_model(const MultiPoly& f, int seed_index = 0);

struct Arc {
    TruncSeries psi1, psi2;         // univariate in t
    std::vector<TruncSeries> phi;   // n entries, univariate in t
    int order = 16;
};

struct ValuationReport {
    std::optional<int> a1, a2, D;   // nullopt = vanishes to working order
    bool valid = false;
    int checked_order = 0;
    std::optional<int> residual_valuation;  // first failing order when invalid
};

ValuationReport validate_arc(const Arc& arc, const SingularityModel& model);

struct ComponentLabel {
    bool open_stratum = false;
    int index = 0;  // 1..m-1 when open_stratum

    std::string str() const {
        return open_stratum ? "component " + std::to_string(index) : "intersection stratum";
    }
};

ComponentLabel classify(const Arc& arc, const SingularityModel& model);

// {i : max(1, m - a2) <= i <= min(m - 1, a1)}; with verify_by_construction a
// deformation family is built for every member.
std::set<int> reachable_components(const Arc& arc, const SingularityModel& model,
                                   bool verify_by_construction = false, int seed_index = 0);

struct DeformationFamily {
    TruncSeries Psi1, Psi2;          // bivariate (t, s)
    std::vector<TruncSeries> Phi;    // bivariate (t, s)
    int r = 1;                       // family lives in s^{1/r}, realized as s -> s^r
    int target_component = 0;
    int residual_order = 0;
    bool short_stable = false;
    bool approx = false;
    std::string kind;  // "main" | "preliminary-zero" | "preliminary-divide"

    Arc restrict_at(const Rational& s0) const;
    Arc restrict_at_zero() const;
};

// Stage 0 always restricts to the source arc at s = 0. Arcs with D = infinity
// get preliminary stages first (each verified); later stages deform the
// previous stage's specialization at probe_s.
struct DeformationOutcome {
    std::vector<DeformationFamily> stages;
    Rational probe_s = 1;
    ComponentLabel generic_label;
};

DeformationOutcome deform_to_component(const Arc& arc, const SingularityModel& model, int target,
                                       int seed_index = 0);

// Sufficient condition for short-arc stability: some coordinate of
// the family is independent of s and not identically zero.
bool short_stability(const DeformationFamily& fam);

struct SidewaysCertificate {
    std::vector<std::string> generators;              // nonzero generators of I_Sing pulled back
    std::vector<std::optional<int>> slice_valuation;  // s-valuation of each pullback at t = 0
    int ideal_slice_valuation = -1;  // min of the finite entries; must be >= 1
    bool joint_unit_at_probe = false;  // gcd of the pullbacks at s = probe is constant
    Rational probe_s = 1;
};

struct SidewaysResult {
    DeformationFamily family;  // original coordinates
    SidewaysCertificate certificate;
    int codim_estimate = 0;
    std::string notes;
};

// Estimated codimension of Sing X in X; exact for f effectively in <= 2
// variables, probe-line heuristic above that.
int singular_codim_estimate(const MultiPoly& f, int order, int seed_index = 0);

SidewaysResult sideways_deform(const Arc& arc, const SingularityModel& model, int seed_index = 0);

}  // namespace arcnash
