#pragma once

#include <json.hpp>

#include "arcnash/arcspace.hpp"
#include "arcnash/nash.hpp"
#include "arcnash/puiseux.hpp"
#include "arcnash/toric.hpp"

namespace arcnash {

using json = nlohmann::json;

json coeff_to_json(const Coefficient& c);
json series_to_json(const TruncSeries& s);
json poly_to_json(const MultiPoly& p);

json to_json(const NewtonPolygon& np);
json to_json(const PuiseuxFactorization& pf);
json to_json(const AnalyticFactorization& af);
json to_json(const ClassGroupReport& cg);

json to_json(const ValuationReport& rep);
json to_json(const ComponentLabel& lab);
json to_json(const DeformationFamily& fam);
json to_json(const DeformationOutcome& out);
json to_json(const SidewaysResult& res);

json to_json(const BlowupChart& ch);
json to_json(const DiscrepancyLedger& led);
json to_json(const MonomialMap& map);
json to_json(const EssentialReport& rep);
json to_json(const HigherVerdict& hv);

json to_json(const LatticeVector& v);
json to_json(const ToricReport& rep);

// Arc input: {"model": "<expr>", "N": 16, "psi1": {"1": "1"}, "psi2": {...},
// "phi": [{...}, ...], optional "variables": [...]}.
struct ArcInput {
    SingularityModel model;
    Arc arc;
};
ArcInput arc_from_json(const json& j, int default_order, int seed_index);

// {"3": "-1/2", ...} -> univariate series in `var`
TruncSeries series_from_table(const json& table, const std::string& var, int order);

}  // namespace arcnash
