#include "arcnash/json_io.hpp"

#include "arcnash/parser.hpp"

namespace arcnash {

json coeff_to_json(const Coefficient& c) {
    if (c.is_approx()) return json{{"re", c.approx_value().real()}, {"im", c.approx_value().imag()}};
    if (c.is_rational()) return rational_str(c.rat());
    json j;
    j["ext"] = {{"base", rational_str(c.ext()->base())},
                {"degree", c.ext()->degree()},
                {"root_index", c.ext()->root_index()}};
    json coords = json::array();
    for (const auto& x : c.coords()) coords.push_back(rational_str(x));
    j["coords"] = coords;
    return j;
}

json series_to_json(const TruncSeries& s) {
    json coeffs = json::object();
    for (const auto& [e, c] : s.terms()) {
        std::string key = s.nvars() == 1 ? std::to_string(e[0])
                                         : std::to_string(e[0]) + "," + std::to_string(e[1]);
        coeffs[key] = coeff_to_json(c);
    }
    json vj = json::array();
    for (const auto& v : s.vars()) vj.push_back(v);
    return json{{"vars", vj}, {"order", s.order()}, {"coeffs", coeffs}, {"text", s.str()}};
}

json poly_to_json(const MultiPoly& p) {
    json terms = json::object();
    for (const auto& [e, c] : p.terms()) {
        std::string key;
        for (size_t i = 0; i < e.size(); ++i) {
            if (i) key += ",";
            key += std::to_string(e[i]);
        }
        terms[key] = coeff_to_json(c);
    }
    json vj = json::array();
    for (const auto& v : p.vars()) vj.push_back(v);
    return json{{"vars", vj}, {"terms", terms}, {"text", p.str()}};
}

json to_json(const NewtonPolygon& np) {
    json j;
    j["support"] = json::array();
    for (auto [a, b] : np.support) j["support"].push_back(json::array({a, b}));
    j["vertices"] = json::array();
    for (auto [a, b] : np.vertices) j["vertices"].push_back(json::array({a, b}));
    j["slopes"] = json::array();
    for (const auto& s : np.slopes) j["slopes"].push_back(rational_str(s));
    return j;
}

json to_json(const PuiseuxFactorization& pf) {
    json j;
    j["r"] = pf.r;
    j["unit"] = series_to_json(pf.unit);
    j["branches"] = json::array();
    for (const auto& b : pf.branches) j["branches"].push_back(series_to_json(b));
    j["branch_count"] = pf.branch_count();
    j["zero_count"] = pf.zero_count;
    j["residual_order"] = pf.residual_order;
    j["approx_fallback"] = pf.approx_fallback;
    j["shear_lambda"] = pf.shear_lambda;
    j["x_var"] = pf.x_var;
    j["s_var"] = pf.s_var;
    return j;
}

json to_json(const AnalyticFactorization& af) {
    json j;
    j["factorization"] = to_json(af.factorization);
    j["cycles"] = json::array();
    for (const auto& c : af.cycles)
        j["cycles"].push_back(json{{"length", c.length}, {"branches", c.branch_indices}});
    j["factor_count"] = af.factor_count();
    return j;
}

json to_json(const ClassGroupReport& cg) {
    json j;
    j["factor_count"] = cg.factor_count;
    j["rank"] = cg.rank;
    j["torsion"] = json::array();
    j["factorial"] = cg.factorial;
    j["cycle_lengths"] = cg.cycle_lengths;
    j["group"] = cg.rank == 0 ? "trivial" : "Z^" + std::to_string(cg.rank);
    return j;
}

namespace {
json opt_int(const std::optional<int>& v, int order) {
    if (v) return *v;
    return ">=" + std::to_string(order + 1);
}
}  // namespace

json to_json(const ValuationReport& rep) {
    json j;
    j["a1"] = opt_int(rep.a1, rep.checked_order);
    j["a2"] = opt_int(rep.a2, rep.checked_order);
    j["D"] = opt_int(rep.D, rep.checked_order);
    j["valid"] = rep.valid;
    j["checked_order"] = rep.checked_order;
    if (rep.residual_valuation) j["residual_valuation"] = *rep.residual_valuation;
    return j;
}

json to_json(const ComponentLabel& lab) {
    json j;
    j["open_stratum"] = lab.open_stratum;
    if (lab.open_stratum) j["component"] = lab.index;
    j["label"] = lab.str();
    return j;
}

json to_json(const DeformationFamily& fam) {
    json j;
    j["Psi1"] = series_to_json(fam.Psi1);
    j["Psi2"] = series_to_json(fam.Psi2);
    j["Phi"] = json::array();
    for (const auto& p : fam.Phi) j["Phi"].push_back(series_to_json(p));
    j["r"] = fam.r;
    j["target_component"] = fam.target_component;
    j["residual_order"] = fam.residual_order;
    j["short_stable"] = fam.short_stable;
    j["approx"] = fam.approx;
    j["kind"] = fam.kind;
    return j;
}

json to_json(const DeformationOutcome& out) {
    json j;
    j["stages"] = json::array();
    for (const auto& s : out.stages) j["stages"].push_back(to_json(s));
    j["probe_s"] = rational_str(out.probe_s);
    j["generic_label"] = to_json(out.generic_label);
    return j;
}

json to_json(const SidewaysResult& res) {
    json j;
    j["family"] = to_json(res.family);
    json cert;
    cert["generators"] = res.certificate.generators;
    cert["slice_valuation"] = json::array();
    for (const auto& v : res.certificate.slice_valuation)
        cert["slice_valuation"].push_back(v ? json(*v) : json("zero-slice"));
    cert["ideal_slice_valuation"] = res.certificate.ideal_slice_valuation;
    cert["joint_unit_at_probe"] = res.certificate.joint_unit_at_probe;
    cert["probe_s"] = rational_str(res.certificate.probe_s);
    j["certificate"] = cert;
    j["codim_estimate"] = res.codim_estimate;
    if (!res.notes.empty()) j["notes"] = res.notes;
    return j;
}

json to_json(const BlowupChart& ch) {
    json j;
    j["level"] = ch.level;
    j["equation"] = ch.equation.str();
    j["substitution"] = json::array();
    for (const auto& s : ch.substitution) j["substitution"].push_back(s.str());
    j["exceptional"] = ch.exceptional.str() + " = 0";
    j["smooth"] = ch.smooth;
    j["substitution_verified"] = ch.substitution_verified;
    return j;
}

json to_json(const DiscrepancyLedger& led) {
    json j;
    j["family"] = led.family;
    json entries = json::object();
    for (const auto& [k, v] : led.entries) entries[k] = v;
    j["discrepancies"] = entries;
    j["min_discrepancy"] = led.min_discrepancy;
    return j;
}

json to_json(const MonomialMap& map) {
    json j;
    j["name"] = map.name;
    j["c"] = map.c;
    j["m"] = map.m;
    j["a"] = map.a;
    j["b"] = map.b;
    json images = json::object();
    for (size_t i = 0; i < map.target_vars.size(); ++i)
        images[map.target_vars[i]] = map.images[i].str();
    j["images"] = images;
    j["source_equation"] = map.source_equation.str();
    j["target_equation"] = map.target_equation.str();
    j["unit_exponents"] = map.unit_exponents;
    j["verified"] = map.verified;
    j["composition_verified"] = map.composition_verified;
    j["exceptional_to_v_axis"] = map.exceptional_to_v_axis;
    j["reading"] = map.reading;
    return j;
}

namespace {
std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Essential: return "essential";
        case Verdict::NonEssential: return "non-essential";
        default: return "undecided";
    }
}
std::string nash_str(NashAnswer a) {
    switch (a) {
        case NashAnswer::Yes: return "yes";
        case NashAnswer::No: return "no";
        default: return "undecided";
    }
}
}  // namespace

json to_json(const EssentialReport& rep) {
    json j;
    j["family"] = rep.family;
    j["component_count"] = rep.component_count;
    j["divisors"] = json::array();
    for (const auto& d : rep.divisors)
        j["divisors"].push_back(json{{"name", d.name},
                                     {"verdict", verdict_str(d.verdict)},
                                     {"discrepancy", d.discrepancy},
                                     {"witness_kind", d.witness_kind},
                                     {"witness", d.witness_detail}});
    j["essential_count"] = rep.essential_count();
    j["nash_surjective"] = nash_str(rep.nash_surjective);
    if (!rep.note.empty()) j["note"] = rep.note;
    return j;
}

json to_json(const HigherVerdict& hv) {
    json j = to_json(hv.report);
    if (hv.witness) {
        j["square_root_witness"] = json{{"h", hv.witness->h.str()},
                                        {"sqrt_series", poly_to_json(hv.witness->sqrt_series)},
                                        {"residual_order", hv.witness->residual_order},
                                        {"divisor", hv.witness->divisor}};
    }
    return j;
}

json to_json(const LatticeVector& v) {
    json j;
    j["coords"] = json::array();
    for (const auto& x : v.coords) j["coords"].push_back(rational_str(x));
    j["certificate_c"] = v.c;
    return j;
}

json to_json(const ToricReport& rep) {
    json j;
    j["r"] = rep.quotient.r;
    j["weights"] = rep.quotient.weights;
    j["candidates"] = json::array();
    for (size_t i = 0; i < rep.candidates.size(); ++i) {
        json cand = to_json(rep.candidates[i]);
        cand["minimal"] = rep.minimal[i];
        if (rep.witnesses[i])
            cand["decomposition"] = json::array(
                {to_json(rep.witnesses[i]->first), to_json(rep.witnesses[i]->second)});
        j["candidates"].push_back(cand);
    }
    j["identity_v1_plus_vr1_is_ones"] = rep.identity_holds;
    j["all_ones_minimal"] = rep.all_ones_minimal;
    if (rep.all_ones_witness)
        j["all_ones_decomposition"] = json::array(
            {to_json(rep.all_ones_witness->first), to_json(rep.all_ones_witness->second)});
    j["conclusion"] = rep.conclusion;
    return j;
}

TruncSeries series_from_table(const json& table, const std::string& var, int order) {
    TruncSeries s({var}, order);
    if (table.is_null()) return s;
    if (!table.is_object())
        throw parse_error("series table must be an object {exponent: coefficient}", 0, 0);
    for (auto it = table.begin(); it != table.end(); ++it) {
        int e = std::stoi(it.key());
        Rational v = rational_from_str(it.value().is_string()
                                           ? it.value().get<std::string>()
                                           : it.value().dump());
        if (e <= order) s.set({e, 0}, Coefficient(v));
    }
    return s;
}

ArcInput arc_from_json(const json& j, int default_order, int seed_index) {
    if (!j.contains("model")) throw parse_error("arc JSON needs a \"model\" expression", 0, 0);
    int order = j.value("N", default_order);
    MultiPoly f;
    if (j.contains("variables")) {
        std::vector<std::string> vars = j["variables"].get<std::vector<std::string>>();
        f = parse_poly(j["model"].get<std::string>(), vars);
    } else {
        f = parse_poly(j["model"].get<std::string>());
    }
    ArcInput in;
    in.model = make_model(f, seed_index);
    in.arc.order = order;
    in.arc.psi1 = series_from_table(j.value("psi1", json()), "t", order);
    in.arc.psi2 = series_from_table(j.value("psi2", json()), "t", order);
    if (!j.contains("phi") || !j["phi"].is_array() ||
        static_cast<int>(j["phi"].size()) != in.model.n)
        throw parse_error("arc JSON needs a \"phi\" array with one table per model variable", 0, 0);
    for (const auto& tbl : j["phi"]) in.arc.phi.push_back(series_from_table(tbl, "t", order));
    return in;
}

}  // namespace arcnash
