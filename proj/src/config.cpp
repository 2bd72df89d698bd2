#include "tobin/config.hpp"

#include "tobin/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace tobin {

namespace {

std::string join(const std::string& prefix, const std::string& key)
{
    return prefix.empty() ? key : prefix + "." + key;
}

std::string line_of(const YAML::Node& node)
{
    const auto mark = node.Mark();
    if (mark.is_null()) {
        return "";
    }
    return " (line " + std::to_string(mark.line + 1) + ")";
}

[[noreturn]] void fail(const std::string& field, const std::string& what, const YAML::Node& node)
{
    throw ConfigError(field + ": " + what + line_of(node));
}

double to_number(const YAML::Node& node, const std::string& field)
{
    if (!node.IsScalar()) {
        fail(field, "expected a number", node);
    }
    double v = 0.0;
    try {
        v = node.as<double>();
    } catch (const YAML::BadConversion&) {
        fail(field, "expected a number, got '" + node.Scalar() + "'", node);
    }
    if (!std::isfinite(v)) {
        fail(field, "must be finite", node);
    }
    return v;
}

std::vector<double> to_numbers(const YAML::Node& node, const std::string& field)
{
    if (!node.IsSequence()) {
        fail(field, "expected a list of numbers", node);
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
        out.push_back(to_number(node[i], field + "[" + std::to_string(i) + "]"));
    }
    return out;
}

/// A mapping node whose keys must all be consumed before finish().
class Section {
public:
    Section(YAML::Node node, std::string path)
        : node_(std::move(node))
        , path_(std::move(path))
    {
        if (node_.IsDefined() && !node_.IsNull() && !node_.IsMap()) {
            fail(path_.empty() ? "document" : path_, "expected a mapping", node_);
        }
    }

    bool has(const std::string& key) const { return present() && node_[key].IsDefined() && !node_[key].IsNull(); }

    YAML::Node get(const std::string& key)
    {
        seen_.insert(key);
        return present() ? node_[key] : YAML::Node();
    }

    double number(const std::string& key, double fallback)
    {
        const YAML::Node n = get(key);
        return n.IsDefined() && !n.IsNull() ? to_number(n, field(key)) : fallback;
    }

    double required_number(const std::string& key)
    {
        const YAML::Node n = get(key);
        if (!n.IsDefined() || n.IsNull()) {
            fail(field(key), "is required", node_);
        }
        return to_number(n, field(key));
    }

    std::optional<std::string> text(const std::string& key)
    {
        const YAML::Node n = get(key);
        if (!n.IsDefined() || n.IsNull()) {
            return std::nullopt;
        }
        if (!n.IsScalar()) {
            fail(field(key), "expected a string", n);
        }
        return n.Scalar();
    }

    void finish() const
    {
        if (!present()) {
            return;
        }
        for (const auto& kv : node_) {
            const auto key = kv.first.as<std::string>();
            if (!seen_.count(key)) {
                fail(field(key), "unknown key", kv.first);
            }
        }
    }

    std::string field(const std::string& key) const { return join(path_, key); }
    const YAML::Node& node() const { return node_; }

private:
    bool present() const { return node_.IsDefined() && node_.IsMap(); }

    YAML::Node node_;
    std::string path_;
    std::set<std::string> seen_;
};

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

struct ScheduleDefaults {
    double base;                   ///< level before any change
    std::optional<double> to;      ///< default post-change level, if any
    Schedule::Kind kind = Schedule::Kind::Constant;
};

Schedule parse_schedule(const YAML::Node& node, const std::string& path, const ScheduleDefaults& defaults)
{
    if (!node.IsDefined() || node.IsNull()) {
        if (defaults.kind == Schedule::Kind::Step && defaults.to) {
            return Schedule::step(0.0, defaults.base, *defaults.to);
        }
        return Schedule::constant(defaults.base);
    }
    if (node.IsScalar()) {
        return Schedule::constant(to_number(node, path));
    }
    Section s(node, path);
    std::string kind = std::string(to_string(defaults.kind));
    if (auto k = s.text("kind")) {
        kind = lower(*k);
    }
    auto to_level = [&](const char* key) {
        if (s.has(key) || !defaults.to) {
            return s.required_number(key);
        }
        s.get(key);
        return *defaults.to;
    };

    Schedule out;
    try {
        if (kind == "constant") {
            out = Schedule::constant(s.number("value", defaults.base));
        } else if (kind == "step") {
            const double t0 = s.number("t0", 0.0);
            const double from = s.number("from", defaults.base);
            out = Schedule::step(t0, from, to_level("to"));
        } else if (kind == "ramp") {
            const double t0 = s.number("t0", 0.0);
            const double t1 = s.required_number("t1");
            const double from = s.number("from", defaults.base);
            out = Schedule::ramp(t0, t1, from, to_level("to"));
        } else if (kind == "piecewise") {
            const double initial = s.number("initial", defaults.base);
            const YAML::Node times = s.get("times");
            const YAML::Node values = s.get("values");
            if (!times.IsDefined() || !values.IsDefined()) {
                fail(path, "piecewise schedule needs 'times' and 'values'", node);
            }
            out = Schedule::piecewise(initial, to_numbers(times, path + ".times"), to_numbers(values, path + ".values"));
        } else {
            fail(s.field("kind"), "expected one of constant, step, ramp, piecewise (got '" + kind + "')", node);
        }
    } catch (const InputError& e) {
        fail(path, e.what(), node);
    }
    s.finish();
    return out;
}

DemandSpec parse_demand(Section& d)
{
    const std::string kind = lower(d.text("kind").value_or("affine"));
    ReferencePoint ref;
    ref.Y_star0 = d.number("Ystar0", ref.Y_star0);
    ref.p0 = d.number("p0", ref.p0);
    ref.r0 = d.number("r0", ref.r0);
    ref.G0 = d.number("G0", ref.G0);

    if (kind == "affine") {
        AffineDemandSpec a;
        a.ref = ref;
        a.e_Y = d.number("e_Y", a.e_Y);
        a.e_Ystar = d.number("e_Ystar", a.e_Ystar);
        a.e_p = d.number("e_p", a.e_p);
        a.e_x = d.number("e_x", a.e_x);
        a.e_r = d.number("e_r", a.e_r);
        a.e_G = d.number("e_G", a.e_G);
        return a;
    }
    if (kind == "structural") {
        StructuralCoefficients c;
        c.c_Y = d.number("c_Y", c.c_Y);
        c.c_Ystar = d.number("c_Ystar", c.c_Ystar);
        c.M = d.number("M", c.M);
        c.wealth_coef = d.number("wealth_coef", c.wealth_coef);
        c.q = d.number("q", c.q);
        c.K = d.number("K", c.K);
        c.c_x = d.number("c_x", c.c_x);
        c.c_r = d.number("c_r", c.c_r);
        c.T = d.number("T", c.T);
        c.c_T = d.number("c_T", c.c_T);
        return make_structural_demand(ref, c);
    }
    fail(d.field("kind"), "expected 'affine' or 'structural' (got '" + kind + "')", d.node());
}

void parse_params(Section& p, ScenarioSpec& spec)
{
    auto& a = spec.tmia;
    a.A = p.number("A", a.A);
    a.B = p.number("B", a.B);
    a.C_exp = p.number("C", a.C_exp);
    a.D1 = p.number("D1", a.D1);
    a.D2 = p.number("D2", a.D2);
    auto& b = spec.tmiia;
    b.A_p = p.number("A'", b.A_p);
    b.B_p = p.number("B'", b.B_p);
    b.C_p = p.number("C'", b.C_p);
    b.D1_p = p.number("D1'", b.D1_p);
    b.D2_p = p.number("D2'", b.D2_p);
    const double pi0 = p.number("pi0", 0.0);
    a.pi0 = pi0;
    b.pi0 = pi0;

    for (const ModelParams& m : {ModelParams{a}, ModelParams{b}}) {
        if (auto bad = first_invalid_param(m)) {
            fail(p.field(*bad), "must be strictly positive and finite", p.node());
        }
    }
}

MacroState parse_initial_state(Section& s, double r_star)
{
    MacroState st;
    st.Y = s.required_number("Y");
    st.p = s.required_number("p");
    st.x = s.number("x", 0.0);
    st.r = s.number("r", r_star);
    if (!(st.Y > 0.0)) fail(s.field("Y"), "must be > 0", s.node());
    if (!(st.p > 0.0)) fail(s.field("p"), "must be > 0", s.node());
    s.finish();
    return st;
}

bool positive_levels(const Schedule& s)
{
    return std::all_of(s.values.begin(), s.values.end(), [](double v) { return v > 0.0; });
}

int to_int(double v, const std::string& field, const YAML::Node& node, int min_value)
{
    if (v != std::floor(v) || v < min_value || v > 1e9) {
        fail(field, "must be an integer >= " + std::to_string(min_value), node);
    }
    return static_cast<int>(v);
}

void parse_sweep(Section& s, SweepSpec& sw)
{
    sw.draws = to_int(s.number("draws", sw.draws), s.field("draws"), s.node(), 0);
    if (s.has("seed")) {
        const YAML::Node n = s.get("seed");
        try {
            sw.seed = n.as<std::uint64_t>();
        } catch (const YAML::BadConversion&) {
            fail(s.field("seed"), "expected a non-negative integer", n);
        }
    } else {
        s.get("seed");
    }
    sw.shock_ratio = s.number("shock_ratio", sw.shock_ratio);
    if (!(sw.shock_ratio > 0.0)) fail(s.field("shock_ratio"), "must be > 0", s.node());
    sw.structural_share = s.number("structural_share", sw.structural_share);
    if (sw.structural_share < 0.0 || sw.structural_share > 1.0) {
        fail(s.field("structural_share"), "must lie in [0, 1]", s.node());
    }
    sw.threads = to_int(s.number("threads", sw.threads), s.field("threads"), s.node(), 0);

    Section ranges(s.get("ranges"), s.field("ranges"));
    for (auto& [key, range] : sw.ranges) {
        const YAML::Node n = ranges.get(key);
        if (!n.IsDefined() || n.IsNull()) {
            continue;
        }
        const auto bounds = to_numbers(n, ranges.field(key));
        if (bounds.size() != 2 || bounds[0] > bounds[1]) {
            fail(ranges.field(key), "expected [lo, hi] with lo <= hi", n);
        }
        range = {bounds[0], bounds[1]};
    }
    ranges.finish();
    s.finish();
}

} // namespace

ModelChoice parse_model_choice(std::string_view name)
{
    const std::string n = lower(std::string(name));
    if (n == "tmia") return ModelChoice::Tmia;
    if (n == "tmiia") return ModelChoice::Tmiia;
    if (n == "both") return ModelChoice::Both;
    throw ConfigError("model: expected TMIA, TMIIA or both (got '" + std::string(name) + "')");
}

RunConfig parse_config(std::string_view text)
{
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ConfigError("syntax error at line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }

    RunConfig cfg;
    ScenarioSpec& sc = cfg.scenario;
    Section top(root, "");

    if (auto model = top.text("model")) {
        try {
            sc.model = parse_model_choice(*model);
        } catch (const ConfigError& e) {
            throw ConfigError(e.what() + line_of(top.get("model")));
        }
    } else {
        sc.model = ModelChoice::Both;
    }

    Section demand(top.get("demand"), "demand");
    sc.demand = parse_demand(demand);
    demand.finish();
    const ReferencePoint& ref = reference_point(sc.demand);
    for (const auto& issue : validate_demand_signs(sc.demand)) {
        const std::string msg = "demand." + issue.field + ": " + issue.message;
        if (issue.severity == IssueSeverity::Violation) {
            throw ConfigError(msg + line_of(demand.node()));
        }
        cfg.warnings.push_back(msg);
    }

    Section params(top.get("params"), "params");
    parse_params(params, sc);
    params.finish();

    sc.r_star = top.number("r_star", ref.r0);

    sc.Ystar = parse_schedule(top.get("shock"), "shock",
                              {ref.Y_star0, 0.9 * ref.Y_star0, Schedule::Kind::Step});
    if (!positive_levels(sc.Ystar.terms.front())) {
        fail("shock", "full-employment output must stay > 0", top.get("shock"));
    }

    Section policy(top.get("policy"), "policy");
    sc.G = parse_schedule(policy.get("G"), "policy.G", {ref.G0, std::nullopt, Schedule::Kind::Constant});
    sc.mu = parse_schedule(policy.get("mu"), "policy.mu", {0.0, std::nullopt, Schedule::Kind::Constant});
    policy.finish();

    Section run(top.get("run"), "run");
    sc.horizon = run.number("horizon", 200.0);
    sc.dt = run.number("dt", 0.01);
    sc.sample_every = to_int(run.number("sample_every", 10), "run.sample_every", run.node(), 1);
    if (!(sc.horizon > 0.0)) fail("run.horizon", "must be > 0", run.node());
    if (!(sc.dt > 0.0) || sc.dt > sc.horizon) fail("run.dt", "must satisfy 0 < dt <= horizon", run.node());
    run.finish();

    const YAML::Node initial = top.get("initial");
    if (initial.IsDefined() && !initial.IsNull()) {
        if (initial.IsScalar()) {
            const std::string v = lower(initial.Scalar());
            if (v != "old-equilibrium" && v != "old_equilibrium") {
                fail("initial", "expected 'old-equilibrium' or a mapping {Y, p, x, r}", initial);
            }
        } else {
            Section s(initial, "initial");
            sc.initial = parse_initial_state(s, sc.r_star);
        }
    }

    Section output(top.get("output"), "output");
    cfg.output.csv = output.text("csv");
    cfg.output.json = output.text("json");
    output.finish();

    Section compare(top.get("compare"), "compare");
    cfg.compare.fiscal_dG = compare.number("fiscal_dG", cfg.compare.fiscal_dG);
    cfg.compare.monetary_mu = compare.number("monetary_mu", cfg.compare.monetary_mu);
    compare.finish();

    Section sweep(top.get("sweep"), "sweep");
    parse_sweep(sweep, cfg.sweep);

    top.finish();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void apply_overrides(RunConfig& config, const std::optional<std::string>& model, const std::optional<double>& horizon)
{
    if (model) {
        config.scenario.model = parse_model_choice(*model);
    }
    if (horizon) {
        if (!(*horizon > 0.0) || !std::isfinite(*horizon)) {
            throw ConfigError("--horizon must be > 0");
        }
        if (config.scenario.dt > *horizon) {
            throw ConfigError("--horizon must be >= run.dt");
        }
        config.scenario.horizon = *horizon;
    }
}

} // namespace tobin
