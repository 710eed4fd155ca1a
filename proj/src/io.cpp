#include "kst/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace kst {

std::string rational_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(std::string_view text) {
    auto bad = [&] { fail(ErrorCode::invalid_argument, "not a rational number: '" + std::string(text) + "'"); };
    auto parse_int = [&](std::string_view t) -> std::int64_t {
        if (t.empty()) bad();
        std::size_t pos = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(std::string(t), &pos);
        } catch (const std::exception&) {
            bad();
        }
        if (pos != t.size()) bad();
        return v;
    };
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto den = parse_int(text.substr(slash + 1));
        if (den == 0) bad();
        return Rational(parse_int(text.substr(0, slash)), den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        const auto frac = text.substr(dot + 1);
        if (frac.size() > 15) bad();
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        const std::string_view whole = text.substr(0, dot);
        const bool neg = !whole.empty() && whole[0] == '-';
        const std::int64_t w = (whole.empty() || whole == "-") ? 0 : parse_int(whole);
        const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
        if (!frac.empty() && (frac[0] == '-' || frac[0] == '+')) bad();
        const std::int64_t mag = (w < 0 ? -w : w) * den + f;
        return Rational(neg ? -mag : mag, den);
    }
    return Rational(parse_int(text));
}

std::string stat_string(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", x);
    return buf;
}

json bigint_json(const BigInt& v) {
    if (v >= 0 && v <= BigInt(INT64_MAX)) return v.convert_to<std::int64_t>();
    return v.str();
}

BigInt bigint_from_json(const json& j) {
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    require(j.is_string(), ErrorCode::invalid_argument, "expected an integer");
    return BigInt(j.get<std::string>());
}

namespace {

template <class T>
T field(const json& j, const char* key) {
    require(j.is_object() && j.contains(key), ErrorCode::invalid_argument, std::string("missing key '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        fail(ErrorCode::invalid_argument, std::string("bad value for '") + key + "'");
    }
}

std::string tristate_string(Tristate t) { return to_string(t); }

std::string verdict_string(SearchVerdict v) {
    switch (v) {
        case SearchVerdict::independent: return "independent";
        case SearchVerdict::dependent: return "dependent";
        default: return "budget_exceeded";
    }
}

}  // namespace

json to_json(const ConstructionPlan& p) {
    json j;
    j["kind"] = to_string(p.kind);
    j["mode"] = to_string(p.mode);
    j["s"] = p.s;
    j["m"] = p.m;
    j["r"] = p.r;
    if (p.Z) j["Z"] = *p.Z;
    j["b"] = p.b;
    if (p.a) j["a"] = *p.a;
    if (p.T) j["T"] = *p.T;
    j["q"] = p.q;
    j["delta"] = p.delta;
    j["t_threshold"] = bigint_json(p.t_threshold);
    j["c"] = rational_string(p.c);
    if (p.headline_t_log10) j["statistics"] = {{"headline_t_log10", stat_string(*p.headline_t_log10)}};
    return j;
}

ConstructionPlan plan_from_json(const json& j) {
    ConstructionPlan p;
    const auto kind = field<std::string>(j, "kind");
    require(kind == "turan" || kind == "zarankiewicz", ErrorCode::invalid_argument, "unknown plan kind '" + kind + "'");
    p.kind = kind == "turan" ? PlanKind::turan : PlanKind::zarankiewicz;
    const auto mode = field<std::string>(j, "mode");
    require(mode == "theorem" || mode == "desk", ErrorCode::invalid_argument, "unknown plan mode '" + mode + "'");
    p.mode = mode == "theorem" ? PlanMode::theorem : PlanMode::desk;
    p.s = field<std::uint32_t>(j, "s");
    p.m = field<std::uint32_t>(j, "m");
    p.r = field<std::uint32_t>(j, "r");
    if (j.contains("Z")) p.Z = field<std::uint32_t>(j, "Z");
    p.b = field<std::uint32_t>(j, "b");
    if (j.contains("a")) p.a = field<std::uint32_t>(j, "a");
    if (j.contains("T")) p.T = field<std::uint64_t>(j, "T");
    p.q = field<std::uint64_t>(j, "q");
    p.delta = field<std::vector<std::uint32_t>>(j, "delta");
    p.t_threshold = bigint_from_json(j.at("t_threshold"));
    p.c = parse_rational(field<std::string>(j, "c"));
    if (p.kind == PlanKind::turan && p.mode == PlanMode::theorem) p.headline_t_log10 = turan_headline_log10(p.s);
    require(p.kind == PlanKind::turan ? p.Z.has_value() : p.T.has_value(), ErrorCode::invalid_argument,
            "plan is missing its Z (turan) or T (zarankiewicz)");
    return p;
}

json to_json(const SidedGraph& g) {
    json j;
    j["kind"] = "sided";
    j["field"] = {{"p", g.field_p}, {"k", g.field_k}};
    j["plan"] = g.plan ? to_json(*g.plan) : json(nullptr);
    j["seed"] = g.seed;
    j["left"] = g.left();
    j["right"] = g.right();
    json edges = json::array();
    for (std::size_t l = 0; l < g.left_size(); ++l)
        for (std::size_t r = 0; r < g.right_size(); ++r)
            if (g.has_edge(l, r)) edges.push_back({l, r});
    j["edges"] = std::move(edges);
    return j;
}

SidedGraph graph_from_json(const json& j) {
    require(j.is_object(), ErrorCode::invalid_argument, "graph file is not a JSON object");
    require(field<std::string>(j, "kind") == "sided", ErrorCode::invalid_argument, "graph kind must be 'sided'");
    SidedGraph g(field<std::vector<std::string>>(j, "left"), field<std::vector<std::string>>(j, "right"));
    const json& fj = j.at("field");
    g.field_p = field<std::uint32_t>(fj, "p");
    g.field_k = field<std::uint32_t>(fj, "k");
    g.seed = field<std::uint64_t>(j, "seed");
    if (j.contains("plan") && !j.at("plan").is_null()) g.plan = plan_from_json(j.at("plan"));
    const json& edges = j.at("edges");
    require(edges.is_array(), ErrorCode::invalid_argument, "edges must be an array");
    for (const auto& e : edges) {
        require(e.is_array() && e.size() == 2 && e[0].is_number_unsigned() && e[1].is_number_unsigned(),
                ErrorCode::invalid_argument, "edge must be a pair of indices");
        g.set_edge(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    return g;
}

json to_json(const CommonNeighborhood& cn) {
    return {{"size", cn.size},
            {"subset", cn.subset},
            {"certifying", cn.certifying},
            {"checked", cn.checked},
            {"total", cn.total}};
}

json to_json(const DensityReport& d) {
    return {{"edges", d.edges},
            {"statistics",
             {{"turan_ratio", stat_string(d.turan_ratio)},
              {"zar_ratio", stat_string(d.zar_ratio)},
              {"kst_ratio", stat_string(d.kst_ratio)}}}};
}

json to_json(const SwiseResult& r) {
    return {{"verdict", verdict_string(r.verdict)},
            {"witness", r.witness},
            {"subsets_checked", r.subsets_checked},
            {"subsets_total", r.subsets_total},
            {"sampled", r.sampled}};
}

json to_json(const DimensionEstimate& d) {
    json counts = json::array();
    for (auto [e, c] : d.counts) counts.push_back({e, c});
    return {{"counts", counts},
            {"empty", d.empty},
            {"estimate", d.estimate},
            {"high_confidence", d.high_confidence},
            {"statistics", {{"slope", stat_string(d.slope)}}}};
}

json to_json(const CertReport& r) {
    json j;
    j["certified"] = r.certified;
    j["attempts"] = r.attempts;
    j["certified_attempt"] = r.certified_attempt ? json(*r.certified_attempt) : json(nullptr);
    j["attempt_seed"] = r.attempt_seed;
    j["z_condition"] = tristate_string(r.z_condition);
    j["z_condition_waived"] = r.z_condition_waived;
    j["point_count"] = r.point_count;
    j["point_threshold"] = rational_string(r.point_threshold);
    j["independence"] = to_json(r.independence);
    j["probe"] = to_json(r.probe);
    j["failures"] = {{"point_count", r.failures_point_count},
                     {"independence", r.failures_independence},
                     {"dimension", r.failures_dimension}};
    return j;
}

json verdicts_json(const TrialReport& r) {
    json j;
    j["seed"] = r.seed;
    j["sizes"] = {{"left", r.left_size}, {"right", r.right_size}};
    j["edges"] = r.edges;
    j["left_anchored"] = to_json(r.left_cn);
    j["right_anchored"] = r.right_cn ? to_json(*r.right_cn) : json(nullptr);
    j["density"] = to_json(r.density);
    j["bezout_ledger"] = bigint_json(r.bezout_ledger);
    j["verdicts"] = {{"sizes", r.sizes_ok},
                     {"edges", r.edges_ok},
                     {"kst_free", tristate_string(r.kst_free)},
                     {"pass", r.pass}};
    return j;
}

json to_json(const TrialReport& r) {
    json j = verdicts_json(r);
    if (r.variety) j["variety"] = to_json(*r.variety);
    if (r.power_rank_crosscheck) j["power_rank_crosscheck"] = *r.power_rank_crosscheck;
    return j;
}

json to_json(const ZConditionReport& z) {
    json rows = json::array();
    for (const auto& row : z.rows) {
        const char* kind = row.phi.kind == PhiKind::empty ? "empty" : row.phi.kind == PhiKind::bound ? "bound" : "not_covered";
        rows.push_back({{"t", row.t},
                        {"phi", {{"kind", kind}, {"value", rational_string(row.phi.value)}}},
                        {"ratio", rational_string(row.ratio)},
                        {"satisfied", row.satisfied}});
    }
    return {{"verdict", tristate_string(z.verdict)},
            {"offending_t", z.offending_t ? json(*z.offending_t) : json(nullptr)},
            {"rows", rows}};
}

json to_json(const ConcentrationStats& st) {
    return {{"population", st.population},
            {"r", st.r},
            {"trials", st.trials},
            {"counts", st.counts},
            {"statistics",
             {{"mean", stat_string(st.mean)},
              {"variance", stat_string(st.variance)},
              {"expected_mean", stat_string(st.expected_mean)},
              {"predicted_variance", stat_string(st.predicted_variance)},
              {"standard_error", stat_string(st.standard_error)},
              {"low_frequency", stat_string(st.low_frequency)},
              {"low_ceiling", stat_string(st.low_ceiling)}}}};
}

json to_json(const UniformityResult& u) {
    json tests = json::array();
    for (const auto& t : u.tests)
        tests.push_back({{"label", t.label},
                         {"cells", t.cells},
                         {"pass", t.pass},
                         {"statistics", {{"statistic", stat_string(t.statistic)}, {"critical", stat_string(t.critical)}}}});
    return {{"mode", u.mode == UniformityMode::exhaustive ? "exhaustive" : "sampled"},
            {"uniform", u.uniform},
            {"polynomials", u.polynomials},
            {"outcomes_possible", u.outcomes_possible},
            {"outcomes_seen", u.outcomes_seen},
            {"min_count", u.min_count},
            {"max_count", u.max_count},
            {"tests", tests}};
}

json to_json(const Field& f, const DependenceReport& r) {
    json kernel = json::array();
    for (const auto& v : r.kernel_basis) {
        json row = json::array();
        for (auto e : v) row.push_back(f.format(e));
        kernel.push_back(std::move(row));
    }
    const char* minimal = r.minimal == Minimality::yes ? "yes" : r.minimal == Minimality::no ? "no" : "undetermined";
    return {{"t", r.t},
            {"m", r.m},
            {"hilbert_rank", r.hilbert_rank},
            {"dependent", r.dependent},
            {"minimal", minimal},
            {"kernel_basis", kernel}};
}

json to_json(const Field& f, const HomPoly& p) {
    const auto mons = enumerate_multiindices(p.b, p.m);
    json terms = json::array();
    for (std::size_t i = 0; i < mons.size(); ++i)
        if (p.coeffs[i].value) terms.push_back({mons[i].beta, f.format(p.coeffs[i])});
    return {{"b", p.b}, {"m", p.m}, {"terms", terms}};
}

HomPoly hom_from_json(const Field& f, const json& j) {
    HomPoly p = zero_hom(field<std::uint32_t>(j, "b"), field<std::uint32_t>(j, "m"));
    const auto mons = enumerate_multiindices(p.b, p.m);
    const json& terms = j.at("terms");
    require(terms.is_array(), ErrorCode::invalid_argument, "terms must be an array");
    for (const auto& t : terms) {
        require(t.is_array() && t.size() == 2, ErrorCode::invalid_argument, "term must be [multiindex, coefficient]");
        MultiIndex beta{t[0].get<std::vector<std::uint32_t>>()};
        auto it = std::find(mons.begin(), mons.end(), beta);
        require(it != mons.end() && *it == beta, ErrorCode::invalid_argument, "multiindex does not match (b, m)");
        p.coeffs[it - mons.begin()] = f.parse(t[1].get<std::string>());
    }
    return p;
}

json to_json(const Field& f, const VarietySpec& vs) {
    json gens = json::array();
    for (const auto& g : vs.generators()) gens.push_back(to_json(f, g));
    return {{"ambient_dim", vs.ambient_dim()}, {"generators", gens}, {"degree_ledger", vs.degree_ledger()}};
}

VarietySpec variety_from_json(const Field& f, const json& j) {
    VarietySpec vs(field<std::uint32_t>(j, "ambient_dim"));
    for (const auto& g : j.at("generators")) vs.add_generator(hom_from_json(f, g));
    return vs;
}

std::vector<ProjPoint> parse_points(const Field& f, std::string_view text) {
    std::vector<ProjPoint> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        try {
            out.push_back(parse_point(f, std::string_view(line).substr(b, e - b + 1)));
        } catch (const Error& err) {
            fail(ErrorCode::invalid_argument, "line " + std::to_string(lineno) + ": " + err.what());
        }
    }
    return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorCode::io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(static_cast<bool>(out), ErrorCode::io, "cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        require(static_cast<bool>(out), ErrorCode::io, "write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        fail(ErrorCode::io, "cannot rename into " + path.string() + ": " + ec.message());
    }
}

}  // namespace kst
