#include "ainfty/report.hpp"

#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ainfty/fixtures.hpp"
#include "ainfty/io.hpp"
#include "ainfty/oracle.hpp"
#include "ainfty/rearrangement.hpp"

namespace ainfty {

namespace {

using ordered = nlohmann::ordered_json;

ordered cube_json(const Cube& q, int dim) {
    ordered j;
    j["anchor"] = dim == 1 ? ordered::array({q.anchor[0]})
                           : ordered::array({q.anchor[0], q.anchor[1]});
    j["side"] = q.side;
    return j;
}

ordered constant_json(const ConstantReport& rep, int dim) {
    ordered j;
    j["name"] = rep.name;
    j["value"] = rep.value;
    if (!rep.params.empty()) j["params"] = rep.params;
    ordered witness;
    if (rep.witness_cube) witness["cube"] = cube_json(*rep.witness_cube, dim);
    if (rep.witness_cell) witness["cell"] = *rep.witness_cell;
    if (rep.witness_threshold) witness["t"] = *rep.witness_threshold;
    if (!witness.empty()) j["witness"] = witness;
    return j;
}

ordered verdict_json(const CriterionVerdict& v, int dim) {
    ordered j;
    j["criterion"] = to_string(v.criterion);
    j["measured"] = v.measured;
    j["pass"] = v.pass;
    ordered witness;
    if (v.witness_cube) witness["cube"] = cube_json(*v.witness_cube, dim);
    if (v.witness_cell) witness["cell"] = *v.witness_cell;
    if (!witness.empty()) j["witnesses"] = witness;
    return j;
}

std::string family_name(FamilyMode mode) {
    return mode == FamilyMode::all ? "all" : "dyadic";
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

int exit_code_for(const Error& e) {
    return e.code() == errc::oracle_refused ? 3 : 2;
}

}  // namespace

std::string analyze_weight(const WeightGrid& w, const RunConfig& config,
                           const std::string& weight_id) {
    const CubeFamilySpec family = config.family();
    const Grid& g = w.grid();

    ordered j;
    j["tool"] = "ainfty";
    j["version"] = kToolVersion;

    ordered jw;
    jw["id"] = weight_id;
    jw["dim"] = g.dim();
    jw["cells"] = g.cells_per_axis();
    ordered box = ordered::array();
    for (int a = 0; a < g.dim(); ++a) box.push_back(ordered::array({g.lo(a), g.hi(a)}));
    jw["box"] = box;
    j["weight"] = jw;

    ordered jc;
    jc["family"] = family_name(config.family_mode);
    jc["max_side"] = config.max_side ? ordered(*config.max_side) : ordered(nullptr);
    jc["lambda"] = config.lambda;
    jc["p"] = config.p;
    jc["r"] = config.r;
    jc["s"] = config.s;
    jc["delta"] = config.delta;
    jc["weak_r"] = config.weak_r;
    jc["rhi_r"] = config.rhi_r;
    jc["K"] = config.truncation;
    jc["kmax"] = config.kmax;
    jc["thresholds"] = {{"b_max", config.thresholds.b_max},
                        {"c0_max", config.thresholds.c0_max},
                        {"chain_slack", config.thresholds.chain_slack}};
    j["config"] = jc;

    const MaximalResult mu = maximal(w, family);

    ordered constants = ordered::array();
    constants.push_back(constant_json(a1_constant(w, family), g.dim()));
    constants.push_back(constant_json(ap_constant(w, config.p, family), g.dim()));
    {
        ConstantReport a1mu = a1_constant(mu.output, family);
        a1mu.name = "A1_of_Mu";
        constants.push_back(constant_json(a1mu, g.dim()));
    }
    constants.push_back(constant_json(rhi_constant(w, config.rhi_r, family), g.dim()));
    constants.push_back(constant_json(ainf_sublevel_beta(w, 0.5, family), g.dim()));
    for (int which = 0; which < 2; ++which) {
        try {
            constants.push_back(constant_json(
                which == 0 ? doubling_constant(w, family)
                           : weak_ainf_constant(w, config.delta, family),
                g.dim()));
        } catch (const Error& e) {
            ordered err;
            err["name"] = which == 0 ? "doubling" : "weak_Ainf";
            err["error"] = to_string(e.code());
            constants.push_back(err);
        }
    }
    j["constants"] = constants;

    CriteriaConfig cc;
    cc.lambda = config.lambda;
    cc.p = config.p;
    cc.r = config.r;
    cc.s = config.s;
    cc.kmax = config.kmax;
    cc.thresholds = config.thresholds;
    ordered criteria = ordered::array();
    for (const CriterionVerdict& v : run_all(w, cc, family))
        criteria.push_back(verdict_json(v, g.dim()));
    try {
        criteria.push_back(
            verdict_json(weak_ainf_rhi(w, config.delta, config.weak_r, family,
                                       config.thresholds),
                         g.dim()));
    } catch (const Error& e) {
        ordered err;
        err["criterion"] = "WEAK_AINF_RHI";
        err["error"] = to_string(e.code());
        criteria.push_back(err);
    }
    j["criteria"] = criteria;

    ordered series;
    series["u"] = w.values();
    series["Mu"] = mu.output.values();
    series["mlambda_Mu"] = local_maximal(mu.output, config.lambda, family).values();
    series["M_Mu"] = maximal(mu.output, family).output.values();
    series["fsharp"] = sharp_maximal(w, family).values();
    j["series"] = series;

    return j.dump(2) + "\n";
}

std::string plotdata_csv(const std::string& report_json) {
    ordered j;
    try {
        j = ordered::parse(report_json);
    } catch (const nlohmann::json::exception& e) {
        throw Error(errc::invalid_spec, std::string("bad report JSON: ") + e.what());
    }
    if (!j.contains("series") || !j.contains("weight"))
        throw Error(errc::invalid_spec, "report lacks a series block");
    const auto& s = j["series"];
    const int dim = j["weight"]["dim"].get<int>();
    const auto n = static_cast<std::int64_t>(j["weight"]["cells"].get<std::int64_t>());
    const double lo0 = j["weight"]["box"][0][0].get<double>();
    const double hi0 = j["weight"]["box"][0][1].get<double>();
    const double h = (hi0 - lo0) / static_cast<double>(n);
    const double lo1 = dim == 2 ? j["weight"]["box"][1][0].get<double>() : 0.0;

    auto num = [](double x) { return nlohmann::json(x).dump(); };
    std::string csv = dim == 1 ? "cell,x,u,Mu,mlambda_Mu,M_Mu,fsharp\n"
                               : "cell,x,y,u,Mu,mlambda_Mu,M_Mu,fsharp\n";
    const auto cells = static_cast<std::int64_t>(s["u"].size());
    for (std::int64_t i = 0; i < cells; ++i) {
        csv += std::to_string(i);
        if (dim == 1) {
            csv += "," + num(lo0 + (static_cast<double>(i) + 0.5) * h);
        } else {
            const std::int64_t row = i / n, col = i % n;
            csv += "," + num(lo0 + (static_cast<double>(row) + 0.5) * h);
            csv += "," + num(lo1 + (static_cast<double>(col) + 0.5) * h);
        }
        for (const char* key : {"u", "Mu", "mlambda_Mu", "M_Mu", "fsharp"})
            csv += "," + num(s[key][static_cast<std::size_t>(i)].get<double>());
        csv += "\n";
    }
    return csv;
}

std::string construction_to_json(const A1Construction& c) {
    ordered j;
    j["output"] = c.output.values();
    j["a1"] = constant_json(c.a1, c.output.grid().dim());
    j["ingredients"] = c.ingredients;
    if (!c.certificates.empty()) j["certificates"] = c.certificates;
    if (c.corrector) j["corrector"] = c.corrector->values();
    j["degenerate"] = c.degenerate;
    return j.dump(2) + "\n";
}

namespace {

int cmd_gen(const std::string& spec_path, const std::string& out_path) {
    const WeightSpec spec = load_weight_spec(spec_path);
    bool floored = false;
    const WeightGrid w = generate(spec, &floored);
    if (floored)
        std::cerr << "warning: generator floored values at " << kWeightFloor << "\n";
    save_weight(w, out_path);
    return 0;
}

int cmd_analyze(const std::string& in_path, const std::string& out_path, RunConfig config) {
    bool floored = false;
    const WeightGrid w = load_weight(in_path, config.apply_floor, &floored);
    if (floored)
        std::cerr << "warning: loader floored values at " << kWeightFloor << "\n";
    std::string id = in_path;
    const auto slash = id.find_last_of('/');
    if (slash != std::string::npos) id = id.substr(slash + 1);
    id += "-" + std::to_string(fnv1a(weight_to_json(w)));
    const std::string report = analyze_weight(w, config, id);
    if (out_path.empty())
        std::cout << report;
    else
        write_file(out_path, report);
    return 0;
}

int cmd_plotdata(const std::string& report_path, const std::string& out_path) {
    const std::string csv = plotdata_csv(read_file(report_path));
    if (out_path.empty())
        std::cout << csv;
    else
        write_file(out_path, csv);
    return 0;
}

struct OracleArgs {
    std::string op;
    std::string in_path;
    double lambda = 0.5;
    double p = 2.0;
    double r = 2.0;
    double s = 2.0;
    double alpha = 0.5;
    double delta = 0.5;
    double t = 0.0;
    int k = 2;
    std::string family = "all";
    std::int64_t anchor = 0, anchor2 = 0, side = 1;
};

int cmd_oracle(const OracleArgs& a) {
    const WeightGrid w = load_weight(a.in_path, false, nullptr);
    const CubeFamilySpec family{a.family == "dyadic" ? FamilyMode::dyadic : FamilyMode::all, {}};
    ordered out;
    out["op"] = a.op;
    auto grid_of = [&](const WeightGrid& g) { return ordered(g.values()); };
    if (a.op == "maximal") {
        out["result"] = grid_of(oracle::maximal(w, family).output);
    } else if (a.op == "maximal_power") {
        out["result"] = grid_of(oracle::maximal_power(w, a.s, family));
    } else if (a.op == "maximal_iterate") {
        out["result"] = grid_of(oracle::maximal_iterate(w, a.k, family));
    } else if (a.op == "local_maximal") {
        out["result"] = grid_of(oracle::local_maximal(w, a.lambda, family));
    } else if (a.op == "sharp_maximal") {
        out["result"] = grid_of(oracle::sharp_maximal(w, family));
    } else if (a.op == "local_sharp_maximal") {
        out["result"] = grid_of(oracle::local_sharp_maximal(w, a.lambda, family));
    } else if (a.op == "rearrangement") {
        oracle::check_size(w.grid());
        out["result"] = oracle::rearrangement(w, Cube{{a.anchor, a.anchor2}, a.side}, a.t);
    } else if (a.op == "a1") {
        out["result"] = oracle::a1_constant(w, family).value;
    } else if (a.op == "ap") {
        out["result"] = oracle::ap_constant(w, a.p, family).value;
    } else if (a.op == "rhi") {
        out["result"] = oracle::rhi_constant(w, a.r, family).value;
    } else if (a.op == "sublevel_beta") {
        out["result"] = oracle::ainf_sublevel_beta(w, a.alpha, family).value;
    } else if (a.op == "weak_ainf") {
        out["result"] = oracle::weak_ainf_constant(w, a.delta, family).value;
    } else {
        throw Error(errc::invalid_spec, "unknown oracle op: " + a.op);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"discrete Muckenhoupt weight laboratory"};
    app.require_subcommand(1);

    std::string spec_path, in_path, out_path, report_path;
    RunConfig config;
    std::string family = "all";
    std::int64_t max_side = 0;

    auto* gen = app.add_subcommand("gen", "generate a weight file from a spec");
    gen->add_option("--spec", spec_path, "generator spec JSON")->required();
    gen->add_option("--out", out_path, "output weight file")->required();

    auto* analyze = app.add_subcommand("analyze", "constants, criteria and series");
    analyze->add_option("--in", in_path, "weight file (JSON, or CSV in 1D)")->required();
    analyze->add_option("--out", out_path, "report path (stdout when omitted)");
    analyze->add_option("--family", family, "all|dyadic")
        ->check(CLI::IsMember({"all", "dyadic"}));
    analyze->add_option("--max-side", max_side, "cap on cube side, in cells")
        ->check(CLI::PositiveNumber);
    analyze->add_option("--lambda", config.lambda, "local maximal parameter");
    analyze->add_option("--p", config.p, "Ap exponent");
    analyze->add_option("--r", config.r, "prop1 chain power in (0,1)");
    analyze->add_option("--s", config.s, "Neugebauer exponent");
    analyze->add_option("--delta", config.delta, "weak-Ainfty exponent");
    analyze->add_option("--weak-r", config.weak_r, "weak-Ainfty RHI exponent");
    analyze->add_option("--rhi-r", config.rhi_r, "reported RHI exponent");
    analyze->add_option("--K", config.truncation, "Rubio de Francia truncation");
    analyze->add_option("--kmax", config.kmax, "iterate bound depth");
    analyze->add_option("--b-max", config.thresholds.b_max, "pass threshold on B");
    analyze->add_option("--c0-max", config.thresholds.c0_max, "pass threshold on C0");
    analyze->add_option("--slack", config.thresholds.chain_slack, "chain slack");
    analyze->add_flag("--floor", config.apply_floor, "clamp non-positive values");

    auto* plotdata = app.add_subcommand("plotdata", "CSV series from a report");
    plotdata->add_option("--report", report_path, "analysis report JSON")->required();
    plotdata->add_option("--out", out_path, "CSV path (stdout when omitted)");

    OracleArgs oracle_args;
    auto* orc = app.add_subcommand("oracle", "brute-force reference results (debug)");
    orc->add_option("--op", oracle_args.op, "operator name")->required();
    orc->add_option("--in", oracle_args.in_path, "weight file")->required();
    orc->add_option("--family", oracle_args.family, "all|dyadic")
        ->check(CLI::IsMember({"all", "dyadic"}));
    orc->add_option("--lambda", oracle_args.lambda, "lambda");
    orc->add_option("--p", oracle_args.p, "p");
    orc->add_option("--r", oracle_args.r, "r");
    orc->add_option("--s", oracle_args.s, "s");
    orc->add_option("--alpha", oracle_args.alpha, "alpha");
    orc->add_option("--delta", oracle_args.delta, "delta");
    orc->add_option("--t", oracle_args.t, "rearrangement position");
    orc->add_option("--k", oracle_args.k, "iterate count");
    orc->add_option("--anchor", oracle_args.anchor, "cube anchor (axis 0)");
    orc->add_option("--anchor2", oracle_args.anchor2, "cube anchor (axis 1)");
    orc->add_option("--side", oracle_args.side, "cube side in cells");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) return cmd_gen(spec_path, out_path);
        if (analyze->parsed()) {
            config.family_mode = family == "dyadic" ? FamilyMode::dyadic : FamilyMode::all;
            if (max_side > 0) config.max_side = max_side;
            return cmd_analyze(in_path, out_path, config);
        }
        if (plotdata->parsed()) return cmd_plotdata(report_path, out_path);
        if (orc->parsed()) return cmd_oracle(oracle_args);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace ainfty
