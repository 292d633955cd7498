#include "arcnash/cli.hpp"

#include <CLI11.hpp>

#include <unistd.h>

#include <atomic>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "arcnash/json_io.hpp"
#include "arcnash/parser.hpp"

namespace arcnash {

void RunConfig::validate() const {
    if (order < 4) throw precondition_error("config: truncation order N must be >= 4");
    if (mode != "exact" && mode != "approx")
        throw precondition_error("config: mode must be exact or approx");
    if (eps <= 0 || eps > 1e-3)
        throw precondition_error("config: eps must lie in (0, 1e-3]");
}

namespace {

json config_json(const RunConfig& cfg) {
    return json{{"order", cfg.order},     {"mode", cfg.mode},
                {"eps", cfg.eps},         {"format", cfg.format},
                {"seed_index", cfg.seed_index}, {"monomial_order", cfg.monomial_order}};
}

void emit(const RunConfig& cfg, const std::string& payload) {
    if (cfg.out.empty()) {
        std::cout << payload << "\n";
    } else {
        std::ofstream f(cfg.out);
        if (!f) throw precondition_error("cannot open output file " + cfg.out);
        f << payload << "\n";
    }
}

void flatten(const json& j, const std::string& prefix, std::ostringstream& os) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
    } else if (j.is_array()) {
        for (size_t i = 0; i < j.size(); ++i)
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
    } else {
        os << prefix << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

void emit_report(const RunConfig& cfg, json report) {
    json envelope;
    envelope["config"] = config_json(cfg);
    envelope["report"] = std::move(report);
    if (cfg.format == "text") {
        std::ostringstream os;
        flatten(envelope["report"], "", os);
        os << "config: N=" << cfg.order << " mode=" << cfg.mode << " seed=" << cfg.seed_index;
        emit(cfg, os.str());
        return;
    }
    emit(cfg, envelope.dump(2));
}

FieldContext make_ctx(const RunConfig& cfg) {
    FieldContext ctx;
    ctx.approx = cfg.mode == "approx";
    ctx.eps = cfg.eps;
    return ctx;
}

json load_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw precondition_error("cannot open " + path);
    json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw parse_error(std::string("invalid JSON in ") + path + ": " + e.what(), 0, 0);
    }
    return j;
}

std::string resolve_dot(int m) {
    auto charts = blowup_sequence(m);
    auto led = discrepancies_xm(m);
    std::ostringstream os;
    os << "digraph resolution {\n";
    os << "  node [shape=box];\n";
    os << "  X [label=\"X_" << m << ": x*y = z^2 - t^" << m << "\"];\n";
    std::string prev = "X";
    for (const auto& ch : charts) {
        std::string id = "c" + std::to_string(ch.level);
        os << "  " << id << " [label=\"level " << ch.level << ": " << ch.equation.str() << " = 0"
           << "\\nE" << ch.level << ": t = 0, a(E" << ch.level << ") = "
           << led.entries[ch.level - 1].second << (ch.smooth ? "\\nsmooth" : "") << "\"];\n";
        os << "  " << prev << " -> " << id << " [label=\"blow up origin\"];\n";
        prev = id;
    }
    os << "}";
    return os.str();
}

std::string xm_csv(const std::vector<int>& ms) {
    std::ostringstream os;
    os << "m,components,essential_count,essential_divisors,nash_surjective,note\n";
    for (int m : ms) {
        EssentialReport rep = nash_verdict_xm(m);
        std::string divs;
        for (const auto& d : rep.divisors)
            if (d.verdict == Verdict::Essential) divs += (divs.empty() ? "" : " ") + d.name;
        os << m << "," << rep.component_count << "," << rep.essential_count() << "," << divs << ","
           << (rep.nash_surjective == NashAnswer::Yes
                   ? "yes"
                   : rep.nash_surjective == NashAnswer::No ? "no" : "undecided")
           << ",\"" << rep.note << "\"\n";
    }
    return os.str();
}

// dotted-path lookup for corpus expectations
const json* lookup_path(const json& j, const std::string& path) {
    const json* cur = &j;
    std::stringstream ss(path);
    std::string part;
    while (std::getline(ss, part, '.')) {
        if (cur->is_array()) {
            size_t idx = std::stoul(part);
            if (idx >= cur->size()) return nullptr;
            cur = &(*cur)[idx];
        } else if (cur->is_object() && cur->contains(part)) {
            cur = &(*cur)[part];
        } else {
            return nullptr;
        }
    }
    return cur;
}

json run_command_json(const std::vector<std::string>& args);  // forward

int run_corpus(const RunConfig& cfg, const std::string& path) {
    json corpus = load_json_file(path);
    if (!corpus.is_array()) throw parse_error("corpus must be a JSON array of cases", 0, 0);
    struct Result {
        std::string name;
        bool pass;
        std::string message;
    };
    std::vector<std::future<Result>> futs;
    for (const auto& c : corpus) {
        futs.push_back(std::async(std::launch::async, [c]() -> Result {
            Result r{c.value("name", "unnamed"), true, ""};
            try {
                std::vector<std::string> args = c.at("command").get<std::vector<std::string>>();
                json rep = run_command_json(args);
                for (auto it = c.at("expect").begin(); it != c.at("expect").end(); ++it) {
                    const json* got = lookup_path(rep, it.key());
                    if (!got) {
                        r.pass = false;
                        r.message += "missing field " + it.key() + "; ";
                    } else if (*got != it.value()) {
                        r.pass = false;
                        r.message +=
                            it.key() + ": expected " + it.value().dump() + ", got " + got->dump() + "; ";
                    }
                }
            } catch (const std::exception& e) {
                r.pass = false;
                r.message = e.what();
            }
            return r;
        }));
    }
    int failures = 0;
    std::ostringstream os;
    for (auto& f : futs) {
        Result r = f.get();
        os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
        if (!r.pass) {
            os << "  " << r.message;
            ++failures;
        }
        os << "\n";
    }
    os << (failures == 0 ? "all cases passed" : std::to_string(failures) + " case(s) failed");
    emit(cfg, os.str());
    return failures == 0 ? 0 : 4;
}

struct CliState {
    RunConfig cfg;
    // per-subcommand inputs
    std::vector<int> m_values;
    std::string expr_f, expr_g;
    std::string arc_path, corpus_path;
    int component = 0;
    bool no_verify = false;
    int toric_r = 0;
    std::string toric_weights;
    std::vector<std::string> declared_vars;
};

void add_common(CLI::App* sub, CliState& st) {
    sub->add_option("--order", st.cfg.order, "truncation order N (default 16)");
    sub->add_option("--mode", st.cfg.mode, "coefficient mode: exact | approx");
    sub->add_option("--eps", st.cfg.eps, "approx tolerance");
    sub->add_option("--format", st.cfg.format, "output format: json | text | dot | csv");
    sub->add_option("--seed-index", st.cfg.seed_index, "deterministic choice seed index");
    sub->add_option("--out", st.cfg.out, "write the report to this file");
}

int dispatch(CliState& st, const std::string& cmd) {
    st.cfg.validate();
    Coefficient::approx_eps = st.cfg.eps;
    if (cmd == "puiseux") {
        std::vector<std::string> vars =
            st.declared_vars.empty() ? std::vector<std::string>{} : st.declared_vars;
        MultiPoly g = vars.empty() ? parse_poly(st.expr_g) : parse_poly(st.expr_g, vars);
        if (g.vars().size() != 2)
            throw precondition_error("puiseux: expression must use exactly 2 variables");
        json rep;
        rep["polygon"] = to_json(newton_polygon(g));
        rep["factorization"] = to_json(puiseux_factor(g, st.cfg.order, make_ctx(st.cfg)));
        emit_report(st.cfg, rep);
        return 0;
    }
    if (cmd == "divclass") {
        std::vector<std::string> vars =
            st.declared_vars.empty() ? std::vector<std::string>{"z", "t"} : st.declared_vars;
        MultiPoly f = parse_poly(st.expr_f, vars);
        json rep;
        ClassGroupReport cg = class_group(f, st.cfg.order, make_ctx(st.cfg));
        rep["class_group"] = to_json(cg);
        rep["analytic_factors"] = cg.factor_count;
        emit_report(st.cfg, rep);
        return 0;
    }
    if (cmd == "classify") {
        ArcInput in = arc_from_json(load_json_file(st.arc_path), st.cfg.order, st.cfg.seed_index);
        json rep;
        rep["valuations"] = to_json(validate_arc(in.arc, in.model));
        rep["label"] = to_json(classify(in.arc, in.model));
        rep["m"] = in.model.m;
        emit_report(st.cfg, rep);
        return 0;
    }
    if (cmd == "reachable") {
        ArcInput in = arc_from_json(load_json_file(st.arc_path), st.cfg.order, st.cfg.seed_index);
        auto set = reachable_components(in.arc, in.model, !st.no_verify, st.cfg.seed_index);
        json rep;
        rep["reachable"] = std::vector<int>(set.begin(), set.end());
        rep["verified_by_construction"] = !st.no_verify;
        rep["m"] = in.model.m;
        emit_report(st.cfg, rep);
        return 0;
    }
    if (cmd == "deform") {
        ArcInput in = arc_from_json(load_json_file(st.arc_path), st.cfg.order, st.cfg.seed_index);
        DeformationOutcome out =
            deform_to_component(in.arc, in.model, st.component, st.cfg.seed_index);
        emit_report(st.cfg, to_json(out));
        return 0;
    }
    if (cmd == "sideways") {
        ArcInput in = arc_from_json(load_json_file(st.arc_path), st.cfg.order, st.cfg.seed_index);
        SidewaysResult res = sideways_deform(in.arc, in.model, st.cfg.seed_index);
        emit_report(st.cfg, to_json(res));
        return 0;
    }
    if (cmd == "nash-xm") {
        if (st.m_values.empty()) throw precondition_error("nash-xm: provide --m");
        if (st.cfg.format == "csv") {
            emit(st.cfg, xm_csv(st.m_values));
            return 0;
        }
        if (st.m_values.size() == 1) {
            emit_report(st.cfg, to_json(nash_verdict_xm(st.m_values[0])));
        } else {
            json arr = json::array();
            for (int m : st.m_values) arr.push_back(to_json(nash_verdict_xm(m)));
            emit_report(st.cfg, arr);
        }
        return 0;
    }
    if (cmd == "nash-higher") {
        MultiPoly g = st.declared_vars.empty() ? parse_poly(st.expr_g)
                                               : parse_poly(st.expr_g, st.declared_vars);
        emit_report(st.cfg, to_json(nash_verdict_higher(g, st.cfg.order)));
        return 0;
    }
    if (cmd == "resolve") {
        if (st.m_values.empty()) throw precondition_error("resolve: provide --m");
        int m = st.m_values[0];
        if (st.cfg.format == "dot") {
            emit(st.cfg, resolve_dot(m));
            return 0;
        }
        json rep;
        rep["charts"] = json::array();
        for (const auto& ch : blowup_sequence(m)) rep["charts"].push_back(to_json(ch));
        rep["ledger"] = to_json(discrepancies_xm(m));
        emit_report(st.cfg, rep);
        return 0;
    }
    if (cmd == "toric") {
        std::vector<int> weights;
        std::stringstream ss(st.toric_weights);
        std::string part;
        while (std::getline(ss, part, ',')) weights.push_back(std::stoi(part));
        CyclicQuotient q = make_quotient(st.toric_r, weights);
        emit_report(st.cfg, to_json(essential_divisors_quotient(q)));
        return 0;
    }
    if (cmd == "verify-corpus") {
        return run_corpus(st.cfg, st.corpus_path);
    }
    throw precondition_error("unknown subcommand " + cmd);
}

int run_impl(const std::vector<std::string>& args) {
    CLI::App app{"exact arc-space toolkit for cA-type singularities xy = f(z_1,...,z_n)"};
    app.require_subcommand(1);
    CliState st;

    auto* puiseux = app.add_subcommand("puiseux", "Newton-Puiseux factorization of g(x,y)");
    puiseux->add_option("--g", st.expr_g, "bivariate expression")->required();
    puiseux->add_option("--vars", st.declared_vars, "declared variable order");
    add_common(puiseux, st);

    auto* divclass = app.add_subcommand("divclass", "local divisor class group of xy = f(z,t)");
    divclass->add_option("--f", st.expr_f, "expression in z, t")->required();
    divclass->add_option("--vars", st.declared_vars, "declared variable order");
    add_common(divclass, st);

    auto* classify_cmd = app.add_subcommand("classify", "component label of an arc");
    classify_cmd->add_option("--arc", st.arc_path, "arc JSON file")->required();
    add_common(classify_cmd, st);

    auto* reachable_cmd = app.add_subcommand("reachable", "reachable component indices of an arc");
    reachable_cmd->add_option("--arc", st.arc_path, "arc JSON file")->required();
    reachable_cmd->add_flag("--no-verify", st.no_verify,
                            "skip the per-component family construction");
    add_common(reachable_cmd, st);

    auto* deform = app.add_subcommand("deform", "deformation family into a chosen component");
    deform->add_option("--arc", st.arc_path, "arc JSON file")->required();
    deform->add_option("--component", st.component, "target component index")->required();
    add_common(deform, st);

    auto* sideways = app.add_subcommand("sideways", "sideways deformation off the singular locus");
    sideways->add_option("--arc", st.arc_path, "arc JSON file")->required();
    add_common(sideways, st);

    auto* nashxm = app.add_subcommand("nash-xm", "essential divisors and Nash verdict for X_m");
    nashxm->add_option("--m", st.m_values, "one or more m values")->required();
    add_common(nashxm, st);

    auto* nashh = app.add_subcommand("nash-higher",
                                     "Nash verdict for xy = z^2 - g(u_1..u_r), mult g >= 4");
    nashh->add_option("--g", st.expr_g, "expression in u_1..u_r")->required();
    nashh->add_option("--vars", st.declared_vars, "declared variable order");
    add_common(nashh, st);

    auto* resolve = app.add_subcommand("resolve", "blow-up chart sequence for X_m");
    resolve->add_option("--m", st.m_values, "m value")->required();
    add_common(resolve, st);

    auto* toric = app.add_subcommand("toric", "minimal interior vectors of a cyclic quotient");
    toric->add_option("--r", st.toric_r, "group order")->required();
    toric->add_option("--weights", st.toric_weights, "comma-separated weights a_1,..,a_n")
        ->required();
    add_common(toric, st);

    auto* corpus = app.add_subcommand("verify-corpus", "run a corpus of named cases in parallel");
    corpus->add_option("--corpus", st.corpus_path, "corpus JSON file")->required();
    add_common(corpus, st);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help() << std::endl;
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << std::endl;
        return 3;
    }
    std::string cmd;
    for (auto* sub : {puiseux, divclass, classify_cmd, reachable_cmd, deform, sideways, nashxm,
                      nashh, resolve, toric, corpus})
        if (sub->parsed()) cmd = sub->get_name();
    try {
        return dispatch(st, cmd);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << std::endl;
        return 3;
    } catch (const precondition_error& e) {
        std::cerr << "precondition violated: " << e.what() << std::endl;
        return 2;
    } catch (const mode_mix_error& e) {
        std::cerr << "coefficient mode error: " << e.what() << std::endl;
        return 2;
    } catch (const verification_error& e) {
        std::cerr << "internal verification failed (bug or N too small): " << e.what()
                  << std::endl;
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 4;
    }
}

json run_command_json(const std::vector<std::string>& args) {
    // in-process invocation used by verify-corpus: capture via a temp file
    static std::atomic<unsigned> counter{0};
    std::string tmp = std::string("/tmp/arcnash_corpus_") + std::to_string(::getpid()) + "_" +
                      std::to_string(counter.fetch_add(1)) + ".json";
    std::vector<std::string> full = args;
    full.push_back("--out");
    full.push_back(tmp);
    int code = run_impl(full);
    if (code != 0) throw std::runtime_error("command exited with code " + std::to_string(code));
    json j = load_json_file(tmp);
    std::remove(tmp.c_str());
    return j;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) { return run_impl(args); }

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
    return run_impl(args);
}

}  // namespace arcnash
