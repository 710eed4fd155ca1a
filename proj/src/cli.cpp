#include "kst/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>

#include "CLI11.hpp"

#include "kst/acceptance.hpp"

namespace kst {

namespace {

const std::vector<std::string> kPlanParams = {"kind", "s", "mode", "m", "r", "Z", "T", "q", "n", "a", "c"};

std::uint64_t parse_u64(const std::map<std::string, std::string>& p, const std::string& key) {
    const std::string& v = p.at(key);
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    require(ec == std::errc() && ptr == v.data() + v.size(), ErrorCode::invalid_argument,
            "--" + key + " expects a nonnegative integer, got '" + v + "'");
    return out;
}

std::uint32_t parse_u32(const std::map<std::string, std::string>& p, const std::string& key) {
    const std::uint64_t v = parse_u64(p, key);
    require(v <= UINT32_MAX, ErrorCode::invalid_argument, "--" + key + " is too large");
    return static_cast<std::uint32_t>(v);
}

template <class T, class F>
std::optional<T> opt(const std::map<std::string, std::string>& p, const std::string& key, F parse) {
    if (!p.count(key)) return std::nullopt;
    return parse(p, key);
}

std::string param_or(const CommandConfig& c, const std::string& key, const std::string& dflt) {
    auto it = c.params.find(key);
    return it == c.params.end() ? dflt : it->second;
}

Orientation parse_orientation(const std::string& v) {
    require(v == "both" || v == "left_only", ErrorCode::invalid_argument, "--orientation must be both or left_only");
    return v == "both" ? Orientation::both : Orientation::left_only;
}

ConstructOptions construct_options(const CommandConfig& c) {
    ConstructOptions o;
    o.variety.point_cap = c.budget_points;
    o.variety.probe_cap = c.budget_points;
    o.search.budget = c.budget_subsets;
    o.search.workers = c.workers;
    return o;
}

std::filesystem::path report_path(const std::filesystem::path& graph) {
    std::filesystem::path p = graph;
    p.replace_extension();
    p += ".report.json";
    return p;
}

void emit(const CommandConfig& c, const json& doc, std::ostream& out) {
    if (c.out.empty()) {
        out << dump(doc);
    } else {
        write_file_atomic(c.out, dump(doc));
    }
}

bool is_uncertified(const Error& e) {
    return e.code() == ErrorCode::uncertified || e.code() == ErrorCode::budget_exceeded ||
           e.code() == ErrorCode::cap_exceeded;
}

json trial_entry(std::uint64_t seed) { return json{{"seed", seed}}; }

int run_plan(const CommandConfig& c, std::ostream& out) {
    const ConstructionPlan plan = plan_from_config(c);
    json doc = to_json(plan);
    json checks;
    if (plan.kind == PlanKind::turan) {
        const std::uint64_t s2 = static_cast<std::uint64_t>(plan.s) * plan.s;
        checks["binomial_vs_s2"] = binomial(plan.m + 1 + plan.r, plan.m) >= s2;
        checks["z_condition"] = to_json(z_condition(plan.b, plan.m, *plan.Z, plan.s));
    } else {
        checks["T_vs_binomial"] = *plan.T <= binomial(plan.r + 1 + plan.m, plan.m);
    }
    if (plan.headline_t_log10) {
        // ledger threshold against the closed-form headline, both as log10
        const double ledger = std::log10(plan.t_threshold.convert_to<double>());
        checks["statistics"] = {{"ledger_t_log10", stat_string(ledger)}};
        checks["ledger_below_headline"] = ledger < *plan.headline_t_log10;
    }
    doc["checks"] = checks;
    emit(c, doc, out);
    return kExitPass;
}

int run_construct(const CommandConfig& c, std::ostream& out, std::ostream& err) {
    require(c.seed.has_value(), ErrorCode::invalid_argument, "--seed is required");
    const ConstructionPlan plan = plan_from_config(c);
    const ConstructOptions opts = construct_options(c);
    json trials = json::array();
    std::optional<TrialResult> chosen;
    std::optional<std::size_t> chosen_index;
    for (std::uint32_t i = 0; i < c.trials; ++i) {
        const std::uint64_t seed = *c.seed + i;
        json entry = trial_entry(seed);
        try {
            TrialResult r = construct(plan, seed, opts);
            entry["outcome"] = r.report.pass ? "pass" : "fail";
            entry["edges"] = r.report.edges;
            trials.push_back(entry);
            chosen = std::move(r);
            chosen_index = trials.size() - 1;
            if (chosen->report.pass) break;
        } catch (const Error& e) {
            if (!is_uncertified(e)) throw;
            entry["outcome"] = "uncertified";
            entry["reason"] = e.what();
            trials.push_back(entry);
        }
    }
    const bool pass = chosen && chosen->report.pass;
    json doc;
    doc["config"] = to_json(c);
    doc["plan"] = to_json(plan);
    doc["trials"] = trials;
    doc["selected"] = chosen_index ? json(*chosen_index) : json(nullptr);
    doc["report"] = chosen ? to_json(chosen->report) : json(nullptr);
    doc["status"] = pass ? "pass" : "uncertified";
    if (c.out.empty()) {
        out << dump(doc);
    } else {
        if (chosen) write_file_atomic(c.out, dump(to_json(chosen->graph)));
        write_file_atomic(report_path(c.out), dump(doc));
    }
    if (!pass) err << "no trial certified within " << c.trials << " seeds\n";
    return pass ? kExitPass : kExitUncertified;
}

int run_verify(const CommandConfig& c, std::ostream& out) {
    require(c.params.count("graph"), ErrorCode::invalid_argument, "--graph is required");
    const json gj = json::parse(read_file(c.params.at("graph")));
    const SidedGraph g = graph_from_json(gj);
    const auto& plan = g.plan;
    require(plan || (c.params.count("s") && c.params.count("t")), ErrorCode::invalid_argument,
            "graph has no plan; pass --s and --t");
    const std::size_t s = c.params.count("s") ? parse_u32(c.params, "s") : plan->s;
    const BigInt t = c.params.count("t") ? BigInt(parse_u64(c.params, "t")) : plan->t_threshold;
    const Orientation orient = parse_orientation(param_or(
        c, "orientation", plan && plan->kind == PlanKind::zarankiewicz ? "left_only" : "both"));
    SearchOptions so;
    so.budget = c.budget_subsets;
    so.workers = c.workers;
    const KstVerdict v = kst_verdict(g, s, t, orient, so);
    json doc;
    doc["config"] = to_json(c);
    doc["kst"] = {{"s", s},
                  {"t", bigint_json(t)},
                  {"orientation", orient == Orientation::both ? "both" : "left_only"},
                  {"free", to_string(v.free)},
                  {"side", v.side == Side::left ? "left" : "right"},
                  {"subset", v.subset},
                  {"neighbors", v.neighbors},
                  {"left_anchored", to_json(v.left)},
                  {"right_anchored", v.right ? to_json(*v.right) : json(nullptr)}};
    if (plan && plan->q > 0) {
        doc["density"] = to_json(density_report(g, *plan));
        doc["report"] = verdicts_json(evaluate_trial(g, *plan, so));
    }
    emit(c, doc, out);
    return v.free == Tristate::yes ? kExitPass : kExitUncertified;
}

int run_indep(const CommandConfig& c, std::ostream& out) {
    for (const char* k : {"points", "q", "m"})
        require(c.params.count(k), ErrorCode::invalid_argument, std::string("--") + k + " is required");
    const Field f = make_field_of_order(parse_u64(c.params, "q"));
    const auto pts = parse_points(f, read_file(c.params.at("points")));
    const std::uint32_t m = parse_u32(c.params, "m");
    json doc;
    doc["config"] = to_json(c);
    doc["points"] = pts.size();
    if (pts.size() >= 2) doc["dependence"] = to_json(f, dependence_classify(f, pts, m));
    int code = kExitPass;
    if (c.params.count("s")) {
        const auto sw = s_wise_independent(f, pts, parse_u32(c.params, "s"), m, c.budget_subsets);
        doc["s_wise"] = to_json(sw);
        if (sw.verdict == SearchVerdict::budget_exceeded) code = kExitUncertified;
    }
    emit(c, doc, out);
    return code;
}

int run_sweep(const CommandConfig& c, std::ostream& out) {
    require(c.seed.has_value(), ErrorCode::invalid_argument, "--seed is required");
    const ConstructionPlan plan = plan_from_config(c);
    const ConstructOptions opts = construct_options(c);
    json rows = json::array();
    std::uint64_t passed = 0, uncertified = 0;
    double edge_sum = 0, ratio_sum = 0;
    std::uint64_t built = 0;
    for (std::uint32_t i = 0; i < c.trials; ++i) {
        const std::uint64_t seed = *c.seed + i;
        json row = trial_entry(seed);
        try {
            const TrialResult r = construct(plan, seed, opts);
            const TrialReport& rep = r.report;
            row["outcome"] = rep.pass ? "pass" : "fail";
            row["left"] = rep.left_size;
            row["right"] = rep.right_size;
            row["edges"] = rep.edges;
            row["max_cn_left"] = rep.left_cn.size;
            row["max_cn_right"] = rep.right_cn ? json(rep.right_cn->size) : json(nullptr);
            row["verdicts"] = verdicts_json(rep)["verdicts"];
            passed += rep.pass;
            ++built;
            edge_sum += static_cast<double>(rep.edges);
            ratio_sum += plan.kind == PlanKind::turan ? rep.density.turan_ratio : rep.density.zar_ratio;
        } catch (const Error& e) {
            if (!is_uncertified(e)) throw;
            row["outcome"] = "uncertified";
            row["reason"] = e.what();
            ++uncertified;
        }
        rows.push_back(row);
    }
    json doc;
    doc["config"] = to_json(c);
    doc["plan"] = to_json(plan);
    doc["trials"] = rows;
    doc["summary"] = {
        {"trials", c.trials},
        {"passed", passed},
        {"uncertified", uncertified},
        {"statistics",
         {{"success_rate", stat_string(c.trials ? static_cast<double>(passed) / c.trials : 0.0)},
          {"mean_edges", stat_string(built ? edge_sum / built : 0.0)},
          {"mean_density_ratio", stat_string(built ? ratio_sum / built : 0.0)}}}};
    emit(c, doc, out);
    return passed > 0 ? kExitPass : kExitUncertified;
}

int run_selftest(const CommandConfig& c, std::ostream& out) {
    AcceptanceOptions ao;
    if (c.params.count("only")) ao.only = {static_cast<int>(parse_u32(c.params, "only"))};
    ao.workers = c.workers;
    const auto results = run_acceptance(ao, out);
    const bool ok = std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.pass; });
    return ok ? kExitPass : kExitUncertified;
}

int run(const CommandConfig& c, std::ostream& out, std::ostream& err) {
    if (c.subcommand == "plan") return run_plan(c, out);
    if (c.subcommand == "construct") return run_construct(c, out, err);
    if (c.subcommand == "verify") return run_verify(c, out);
    if (c.subcommand == "indep") return run_indep(c, out);
    if (c.subcommand == "sweep") return run_sweep(c, out);
    if (c.subcommand == "selftest") return run_selftest(c, out);
    fail(ErrorCode::invalid_argument, "unknown subcommand '" + c.subcommand + "'");
}

}  // namespace

const std::vector<std::string>& allowed_params(const std::string& sub) {
    static const std::map<std::string, std::vector<std::string>> table = {
        {"plan", kPlanParams},
        {"construct", kPlanParams},
        {"sweep", kPlanParams},
        {"verify", {"graph", "s", "t", "orientation"}},
        {"indep", {"points", "q", "m", "s"}},
        {"selftest", {"only"}},
    };
    auto it = table.find(sub);
    require(it != table.end(), ErrorCode::invalid_argument, "unknown subcommand '" + sub + "'");
    return it->second;
}

json to_json(const CommandConfig& c) {
    json j;
    j["subcommand"] = c.subcommand;
    j["params"] = c.params;
    j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
    j["out"] = c.out;
    j["budgets"] = {{"subsets", c.budget_subsets}, {"points", c.budget_points}, {"trials", c.trials}};
    j["workers"] = c.workers;
    return j;
}

CommandConfig config_from_json(const json& j) {
    require(j.is_object(), ErrorCode::invalid_argument, "config must be an object");
    CommandConfig c;
    try {
        c.subcommand = j.at("subcommand").get<std::string>();
        c.params = j.at("params").get<std::map<std::string, std::string>>();
        if (!j.at("seed").is_null()) c.seed = j.at("seed").get<std::uint64_t>();
        c.out = j.at("out").get<std::string>();
        const json& b = j.at("budgets");
        c.budget_subsets = b.at("subsets").get<std::uint64_t>();
        c.budget_points = b.at("points").get<std::uint64_t>();
        c.trials = b.at("trials").get<std::uint32_t>();
        c.workers = j.at("workers").get<unsigned>();
    } catch (const json::exception& e) {
        fail(ErrorCode::invalid_argument, std::string("malformed config: ") + e.what());
    }
    const auto& allowed = allowed_params(c.subcommand);
    for (const auto& [k, v] : c.params)
        require(std::find(allowed.begin(), allowed.end(), k) != allowed.end(), ErrorCode::invalid_argument,
                "parameter '" + k + "' is not valid for " + c.subcommand);
    return c;
}

ConstructionPlan plan_from_config(const CommandConfig& c) {
    const auto& p = c.params;
    require(p.count("kind"), ErrorCode::invalid_argument, "plan kind (turan or zarankiewicz) is required");
    require(p.count("s"), ErrorCode::invalid_argument, "--s is required");
    const std::string kind = p.at("kind");
    require(kind == "turan" || kind == "zarankiewicz", ErrorCode::invalid_argument,
            "kind must be turan or zarankiewicz, got '" + kind + "'");
    const std::string mode = param_or(c, "mode", "desk");
    require(mode == "desk" || mode == "theorem", ErrorCode::invalid_argument, "--mode must be desk or theorem");
    PlanOverrides ov;
    ov.m = opt<std::uint32_t>(p, "m", parse_u32);
    ov.r = opt<std::uint32_t>(p, "r", parse_u32);
    ov.Z = opt<std::uint32_t>(p, "Z", parse_u32);
    ov.T = opt<std::uint64_t>(p, "T", parse_u64);
    ov.q = opt<std::uint64_t>(p, "q", parse_u64);
    ov.n = opt<std::uint64_t>(p, "n", parse_u64);
    ov.a = opt<std::uint32_t>(p, "a", parse_u32);
    if (p.count("c")) ov.c = parse_rational(p.at("c"));
    return plan_construction(kind == "turan" ? PlanKind::turan : PlanKind::zarankiewicz, parse_u32(p, "s"),
                             mode == "desk" ? PlanMode::desk : PlanMode::theorem, ov);
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Random algebraic K_{s,t}-free graph constructions over finite fields", "kstgen"};
    app.require_subcommand(1);

    CommandConfig cfg;
    std::map<std::string, std::string> raw;
    std::map<std::string, CLI::Option*> bound;
    std::uint64_t seed = 0;
    CLI::Option* seed_opt = nullptr;

    auto add_param = [&](CLI::App* sub, const std::string& name, const std::string& help) {
        bound[sub->get_name() + ":" + name] = sub->add_option("--" + name, raw[name], help);
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out, "Output path (stdout when omitted)");
        sub->add_option("--budget-subsets", cfg.budget_subsets, "Subset budget for exhaustive searches");
        sub->add_option("--budget-points", cfg.budget_points, "Cap on enumerated projective points");
        sub->add_option("--workers", cfg.workers, "Worker threads for common-neighbourhood search")
            ->check(CLI::PositiveNumber);
    };
    auto add_plan_flags = [&](CLI::App* sub) {
        sub->add_option("kind", raw["kind"], "turan or zarankiewicz")->required();
        add_param(sub, "s", "Size of the forbidden K_{s,t} left part");
        add_param(sub, "mode", "desk (default) or theorem");
        add_param(sub, "m", "Degree of the cutting and adjacency polynomials");
        add_param(sub, "r", "Number of right-side cutting polynomials");
        add_param(sub, "Z", "Number of variety generators (turan)");
        add_param(sub, "T", "Left exponent numerator (zarankiewicz)");
        add_param(sub, "q", "Field order");
        add_param(sub, "n", "Target vertex count; picks q when --q is absent");
        add_param(sub, "a", "Left ambient dimension (zarankiewicz)");
        add_param(sub, "c", "Truncation constant, e.g. 1/4");
        bound[sub->get_name() + ":kind"] = sub->get_option("kind");
    };

    auto* plan = app.add_subcommand("plan", "Print a construction plan");
    add_plan_flags(plan);
    add_common(plan);

    for (const char* name : {"construct", "sweep"}) {
        auto* sub = app.add_subcommand(name, std::string(name) == "construct"
                                                 ? "Build a graph, retrying seeds until one certifies"
                                                 : "Run a seed grid and aggregate statistics");
        add_plan_flags(sub);
        add_common(sub);
        sub->add_option("--seed", seed, "Master seed (required)");
        sub->add_option("--trials", cfg.trials, "Number of seeds to try");
    }

    auto* verify = app.add_subcommand("verify", "Re-check a graph file");
    add_param(verify, "graph", "Graph JSON file");
    add_param(verify, "s", "Anchored side size");
    add_param(verify, "t", "Forbidden common-neighbourhood size");
    add_param(verify, "orientation", "both or left_only");
    add_common(verify);

    auto* indep = app.add_subcommand("indep", "Dependence report for a point file");
    add_param(indep, "points", "One canonical point per line");
    add_param(indep, "q", "Field order");
    add_param(indep, "m", "Degree");
    add_param(indep, "s", "Subset size for the s-wise search");
    add_common(indep);

    auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
    add_param(selftest, "only", "Run a single criterion");
    add_common(selftest);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    CLI::App* active = app.get_subcommands().front();
    cfg.subcommand = active->get_name();
    for (const auto& [key, option] : bound) {
        const auto colon = key.find(':');
        if (key.substr(0, colon) != cfg.subcommand || option->count() == 0) continue;
        const std::string name = key.substr(colon + 1);
        cfg.params[name] = raw[name];
    }
    seed_opt = active->get_option_no_throw("--seed");
    if (seed_opt && seed_opt->count() > 0) cfg.seed = seed;

    try {
        return run(cfg, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return is_uncertified(e) ? kExitUncertified : kExitUsage;
    } catch (const json::exception& e) {
        err << "error: malformed JSON: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace kst
