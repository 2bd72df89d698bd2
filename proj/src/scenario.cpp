#include "tobin/scenario.hpp"

#include "tobin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tobin {

namespace {

void require_finite(double v, const char* what)
{
    if (!std::isfinite(v)) {
        throw InputError(std::string("schedule ") + what + " must be finite");
    }
}

void require_time(double t)
{
    if (!std::isfinite(t) || t < 0.0) {
        std::ostringstream msg;
        msg << "schedule evaluated outside its domain t >= 0 (t = " << t << ")";
        throw DomainError(msg.str());
    }
}

double fmt_tolerance(double v) { return std::abs(v) < 1e-12 ? 0.0 : v; }

} // namespace

Schedule Schedule::constant(double value)
{
    require_finite(value, "level");
    return Schedule{Kind::Constant, {}, {value}};
}

Schedule Schedule::step(double t0, double from, double to)
{
    require_finite(from, "level");
    require_finite(to, "level");
    if (!std::isfinite(t0) || t0 < 0.0) {
        throw InputError("step time must be >= 0");
    }
    return Schedule{Kind::Step, {t0}, {from, to}};
}

Schedule Schedule::ramp(double t_start, double t_end, double from, double to)
{
    require_finite(from, "level");
    require_finite(to, "level");
    if (!std::isfinite(t_start) || !std::isfinite(t_end) || t_start < 0.0 || !(t_end > t_start)) {
        throw InputError("ramp needs 0 <= t_start < t_end");
    }
    return Schedule{Kind::Ramp, {t_start, t_end}, {from, to}};
}

Schedule Schedule::piecewise(double initial, std::vector<double> times, std::vector<double> levels)
{
    if (times.size() != levels.size()) {
        throw InputError("piecewise schedule needs one level per breakpoint");
    }
    require_finite(initial, "level");
    for (std::size_t i = 0; i < times.size(); ++i) {
        require_finite(levels[i], "level");
        if (!std::isfinite(times[i]) || times[i] < 0.0 || (i > 0 && !(times[i] > times[i - 1]))) {
            throw InputError("piecewise breakpoints must be >= 0 and strictly increasing");
        }
    }
    Schedule s{Kind::Piecewise, std::move(times), {initial}};
    s.values.insert(s.values.end(), levels.begin(), levels.end());
    return s;
}

std::string_view to_string(Schedule::Kind kind)
{
    switch (kind) {
    case Schedule::Kind::Constant:
        return "constant";
    case Schedule::Kind::Step:
        return "step";
    case Schedule::Kind::Ramp:
        return "ramp";
    case Schedule::Kind::Piecewise:
        return "piecewise";
    }
    return "constant";
}

double eval_schedule(const Schedule& s, double t)
{
    require_time(t);
    if (s.kind == Schedule::Kind::Ramp) {
        const double t0 = s.breakpoints[0];
        const double t1 = s.breakpoints[1];
        if (t < t0) return s.values[0];
        if (t >= t1) return s.values[1];
        return s.values[0] + (s.values[1] - s.values[0]) * (t - t0) / (t1 - t0);
    }
    const auto idx = std::upper_bound(s.breakpoints.begin(), s.breakpoints.end(), t) - s.breakpoints.begin();
    return s.values[static_cast<std::size_t>(idx)];
}

double eval_schedule_left(const Schedule& s, double t)
{
    require_time(t);
    if (s.kind == Schedule::Kind::Ramp) {
        return t == 0.0 ? s.values[0] : eval_schedule(s, t);
    }
    const auto idx = std::lower_bound(s.breakpoints.begin(), s.breakpoints.end(), t) - s.breakpoints.begin();
    return s.values[static_cast<std::size_t>(idx)];
}

Path Path::plus(Schedule overlay) const
{
    Path out = *this;
    out.terms.push_back(std::move(overlay));
    return out;
}

double Path::at(double t, Side side) const
{
    double sum = 0.0;
    for (const auto& s : terms) {
        sum += side == Side::Right ? eval_schedule(s, t) : eval_schedule_left(s, t);
    }
    return sum;
}

std::vector<double> Path::breakpoints() const
{
    std::vector<double> out;
    for (const auto& s : terms) {
        out.insert(out.end(), s.breakpoints.begin(), s.breakpoints.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string_view to_string(ModelChoice choice)
{
    switch (choice) {
    case ModelChoice::Tmia:
        return "TMIA";
    case ModelChoice::Tmiia:
        return "TMIIA";
    case ModelChoice::Both:
        return "both";
    }
    return "both";
}

std::vector<ModelKind> expand(ModelChoice choice)
{
    switch (choice) {
    case ModelChoice::Tmia:
        return {ModelKind::Tmia};
    case ModelChoice::Tmiia:
        return {ModelKind::Tmiia};
    case ModelChoice::Both:
        break;
    }
    return {ModelKind::Tmia, ModelKind::Tmiia};
}

ModelParams ScenarioSpec::params_for(ModelKind kind) const
{
    return kind == ModelKind::Tmia ? ModelParams{tmia} : ModelParams{tmiia};
}

ExogenousPoint ScenarioSpec::exog_at(double t, Side side) const
{
    return {Ystar.at(t, side), G.at(t, side), mu.at(t, side)};
}

ExogenousPoint ScenarioSpec::exog_before_start() const { return exog_at(0.0, Side::Left); }

char to_char(Sign s)
{
    switch (s) {
    case Sign::Negative:
        return '-';
    case Sign::Zero:
        return '0';
    case Sign::Positive:
        return '+';
    }
    return '0';
}

SignTuple signs_of(const Vec4& rates, const MacroState& scale_state)
{
    const Vec4 scale_vec = scale_state.to_vec();
    SignTuple out{};
    for (std::size_t i = 0; i < 4; ++i) {
        const double scale = std::max(1.0, std::abs(scale_vec[i]));
        const double v = rates[i];
        if (std::abs(v) < kSignZeroTolerance * scale) {
            out[i] = Sign::Zero;
        } else {
            out[i] = v > 0.0 ? Sign::Positive : Sign::Negative;
        }
    }
    return out;
}

SignTuple short_run_signs(const ModelParams& params, const DemandSpec& demand, const MacroState& state_at_0,
                          const ExogenousPoint& exog_at_0plus)
{
    return signs_of(vector_field(state_at_0, params, demand, exog_at_0plus), state_at_0);
}

MacroState initial_state(const ScenarioSpec& spec, ModelKind kind)
{
    if (spec.initial) {
        return *spec.initial;
    }
    const ExogenousPoint before = spec.exog_before_start();
    return find_equilibrium(spec.params_for(kind), spec.demand, before.Ystar, before.G, spec.r_star);
}

Trajectory simulate_model(const ScenarioSpec& spec, ModelKind kind, const std::vector<double>& extra_breakpoints)
{
    const ModelParams params = spec.params_for(kind);
    OdeSystem sys;
    sys.field = [&](double t, Side side, const MacroState& s) {
        return vector_field(s, params, spec.demand, spec.exog_at(t, side));
    };
    sys.exogenous = [&](double t) { return spec.exog_at(t); };
    sys.inflation = [&](double t, const MacroState& s) {
        return inflation_rate(s, params, spec.demand, spec.exog_at(t));
    };
    for (const Path* path : {&spec.Ystar, &spec.G, &spec.mu}) {
        const auto b = path->breakpoints();
        sys.breakpoints.insert(sys.breakpoints.end(), b.begin(), b.end());
    }
    sys.breakpoints.insert(sys.breakpoints.end(), extra_breakpoints.begin(), extra_breakpoints.end());
    std::sort(sys.breakpoints.begin(), sys.breakpoints.end());
    sys.breakpoints.erase(std::unique(sys.breakpoints.begin(), sys.breakpoints.end()), sys.breakpoints.end());

    IntegrationOptions opt;
    opt.t0 = 0.0;
    opt.t1 = spec.horizon;
    opt.dt = spec.dt;
    opt.sample_every = spec.sample_every;
    return integrate(sys, initial_state(spec, kind), opt);
}

namespace {

PredictionReport predict(const ScenarioSpec& spec, ModelKind kind, const MacroState& initial, const Trajectory& traj)
{
    const ModelParams params = spec.params_for(kind);
    PredictionReport rep;
    const ExogenousPoint after = spec.exog_at(0.0);
    rep.short_run_rates = vector_field(initial, params, spec.demand, after);
    rep.short_run_signs = signs_of(rep.short_run_rates, initial);

    rep.terminal = traj.states.back();
    rep.terminal_time = traj.times.back();
    rep.terminal_Ystar = traj.exog_series.back().Ystar;
    rep.terminal_gap = std::abs(rep.terminal.Y - rep.terminal_Ystar);
    rep.terminal_pi = traj.pi_series.back();
    rep.terminal_x = rep.terminal.x;
    rep.converged = rep.terminal_gap < kConvergenceTolerance * rep.terminal_Ystar;

    auto& notes = rep.policy_notes;
    if (kind == ModelKind::Tmia) {
        notes.emplace_back("output follows excess demand: spending (e_G > 0) or easing (mu > 0, e_r < 0) "
                           "raises demand and cushions the fall in Y, at the cost of higher inflation");
    } else {
        notes.emplace_back("output follows Y* alone: G, mu and demand coefficients move prices, "
                           "expectations and the real rate but not Y");
    }
    if (!rep.converged) {
        notes.emplace_back("output has not reached Y* within the horizon");
    }
    if (std::abs(rep.terminal_x) > 1e-6) {
        std::ostringstream msg;
        msg << "terminal expected inflation x = " << fmt_tolerance(rep.terminal_x)
            << " is nonzero; every rest point of the dynamics has x = 0";
        notes.push_back(msg.str());
    }
    return rep;
}

} // namespace

std::vector<ModelRun> run_scenario(const ScenarioSpec& spec)
{
    std::vector<ModelRun> runs;
    for (ModelKind kind : expand(spec.model)) {
        ModelRun run;
        run.model = kind;
        run.initial = initial_state(spec, kind);
        run.trajectory = simulate_model(spec, kind);
        run.prediction = predict(spec, kind, run.initial, run.trajectory);
        runs.push_back(std::move(run));
    }
    return runs;
}

std::vector<PolicyEffect> policy_effect(const ScenarioSpec& spec, const PolicyPaths& baseline,
                                        const PolicyPaths& alternative)
{
    ScenarioSpec base = spec;
    base.G = baseline.G;
    base.mu = baseline.mu;
    ScenarioSpec alt = spec;
    alt.G = alternative.G;
    alt.mu = alternative.mu;

    // Align both variants to the union of their breakpoints so the grids coincide.
    std::vector<double> union_breaks;
    for (const Path* p : {&baseline.G, &baseline.mu, &alternative.G, &alternative.mu}) {
        const auto b = p->breakpoints();
        union_breaks.insert(union_breaks.end(), b.begin(), b.end());
    }

    std::vector<PolicyEffect> out;
    for (ModelKind kind : expand(spec.model)) {
        const Trajectory a = simulate_model(base, kind, union_breaks);
        const Trajectory b = simulate_model(alt, kind, union_breaks);
        if (a.times != b.times) {
            throw PreconditionError("policy variants produced different sample grids");
        }
        PolicyEffect eff;
        eff.model = kind;
        eff.times = a.times;
        eff.dY.reserve(a.size());
        eff.dp.reserve(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            eff.dY.push_back(b.states[i].Y - a.states[i].Y);
            eff.dp.push_back(b.states[i].p - a.states[i].p);
            eff.max_abs_dY = std::max(eff.max_abs_dY, std::abs(eff.dY.back()));
            eff.max_abs_dp = std::max(eff.max_abs_dp, std::abs(eff.dp.back()));
        }
        out.push_back(std::move(eff));
    }
    return out;
}

const ComparisonRow& ComparisonTable::row(std::string_view quantity) const
{
    for (const auto& r : rows) {
        if (r.quantity == quantity) {
            return r;
        }
    }
    throw PreconditionError("comparison table has no row '" + std::string(quantity) + "'");
}

ComparisonTable compare_models(const ScenarioSpec& spec, const CompareOptions& options)
{
    ScenarioSpec both = spec;
    both.model = ModelChoice::Both;

    ComparisonTable table;
    auto runs = run_scenario(both);
    table.runs = {std::move(runs[0]), std::move(runs[1])};

    const PolicyPaths baseline{both.G, both.mu};
    const PolicyPaths fiscal{both.G.plus(Schedule::step(0.0, 0.0, options.fiscal_dG)), both.mu};
    const PolicyPaths monetary{both.G, both.mu.plus(Schedule::step(0.0, 0.0, options.monetary_mu))};
    auto f = policy_effect(both, baseline, fiscal);
    auto m = policy_effect(both, baseline, monetary);
    table.fiscal = {std::move(f[0]), std::move(f[1])};
    table.monetary = {std::move(m[0]), std::move(m[1])};

    const double threshold = kPolicyEffectThreshold * reference_point(both.demand).Y_star0;
    auto sign_cell = [&](std::size_t model, std::size_t component) {
        return std::string(1, to_char(table.runs[model].prediction.short_run_signs[component]));
    };
    auto effect_cell = [&](const PolicyEffect& e) {
        return std::string(e.max_abs_dY > threshold ? "effective" : "none");
    };

    table.rows = {
        {"output", sign_cell(0, kY), sign_cell(1, kY)},
        {"inflation", sign_cell(0, kP), sign_cell(1, kP)},
        {"expectations", sign_cell(0, kX), sign_cell(1, kX)},
        {"real_rate", sign_cell(0, kR), sign_cell(1, kR)},
        {"fiscal_policy", effect_cell(table.fiscal[0]), effect_cell(table.fiscal[1])},
        {"monetary_policy", effect_cell(table.monetary[0]), effect_cell(table.monetary[1])},
    };
    return table;
}

} // namespace tobin
