#pragma once

#include "tobin/demand.hpp"
#include "tobin/integrate.hpp"
#include "tobin/models.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace tobin {

/// Exogenous level as a function of time, defined for t >= 0.
///
/// Piecewise levels are stored as breakpoints b_0 < ... < b_{n-1} and n + 1 values:
/// values[0] holds before b_0 and values[i] on [b_{i-1}, b_i). Constant and step
/// schedules are the n = 0 and n = 1 cases. A ramp holds values[0] before
/// breakpoints[0], interpolates linearly up to breakpoints[1], then holds values[1].
struct Schedule {
    enum class Kind { Constant, Step, Ramp, Piecewise };

    Kind kind = Kind::Constant;
    std::vector<double> breakpoints;
    std::vector<double> values{0.0};

    static Schedule constant(double value);
    static Schedule step(double t0, double from, double to);
    static Schedule ramp(double t_start, double t_end, double from, double to);
    static Schedule piecewise(double initial, std::vector<double> times, std::vector<double> levels);
};

std::string_view to_string(Schedule::Kind kind);

/// Right-continuous value at t. Throws DomainError for t < 0 or non-finite t.
double eval_schedule(const Schedule& s, double t);
/// Left limit at t; eval_schedule_left(s, 0) is the level in force just before the run starts.
double eval_schedule_left(const Schedule& s, double t);

/// Sum of schedules. Policy variants are expressed as a baseline path plus an overlay.
struct Path {
    std::vector<Schedule> terms;

    Path() = default;
    Path(Schedule s) { terms.push_back(std::move(s)); } // NOLINT(google-explicit-constructor)

    Path plus(Schedule overlay) const;
    double at(double t, Side side = Side::Right) const;
    std::vector<double> breakpoints() const;
};

enum class ModelChoice { Tmia, Tmiia, Both };

std::string_view to_string(ModelChoice choice);
std::vector<ModelKind> expand(ModelChoice choice);

struct ScenarioSpec {
    ModelChoice model = ModelChoice::Tmia;
    TmiaParams tmia;
    TmiiaParams tmiia;
    DemandSpec demand = AffineDemandSpec{};
    double r_star = 0.02;
    Path Ystar = Schedule::step(0.0, 100.0, 90.0);
    Path G = Schedule::constant(20.0);
    Path mu = Schedule::constant(0.0);
    double horizon = 200.0;
    double dt = 0.01;
    int sample_every = 10;
    /// nullopt: start at the rest point of the pre-run (t = 0-) exogenous levels.
    std::optional<MacroState> initial;

    ModelParams params_for(ModelKind kind) const;
    ExogenousPoint exog_at(double t, Side side = Side::Right) const;
    /// Levels in force just before t = 0.
    ExogenousPoint exog_before_start() const;
};

enum class Sign { Negative, Zero, Positive };

char to_char(Sign s);
using SignTuple = std::array<Sign, 4>;

/// |value| below this multiple of the component scale counts as zero.
inline constexpr double kSignZeroTolerance = 1e-10;

/// Signs of (dY, dp, dx, dr) with the post-shock exogenous values applied to the
/// pre-shock state.
SignTuple short_run_signs(const ModelParams& params, const DemandSpec& demand, const MacroState& state_at_0,
                          const ExogenousPoint& exog_at_0plus);

SignTuple signs_of(const Vec4& rates, const MacroState& scale_state);

/// Relative output-gap tolerance for declaring a run converged.
inline constexpr double kConvergenceTolerance = 1e-3;

struct PredictionReport {
    SignTuple short_run_signs{};
    Vec4 short_run_rates{};
    MacroState terminal;
    double terminal_time = 0.0;
    double terminal_Ystar = 0.0;
    double terminal_gap = 0.0; ///< |Y(T) - Y*(T)|
    double terminal_pi = 0.0;
    double terminal_x = 0.0;
    bool converged = false;
    std::vector<std::string> policy_notes;
};

struct ModelRun {
    ModelKind model = ModelKind::Tmia;
    MacroState initial;
    Trajectory trajectory;
    PredictionReport prediction;
};

/// Initial state of `kind` under the spec (explicit, or the pre-run rest point).
MacroState initial_state(const ScenarioSpec& spec, ModelKind kind);

/// Integrates one model; the steps are aligned to `extra_breakpoints` as well as the
/// spec's own schedule breakpoints.
Trajectory simulate_model(const ScenarioSpec& spec, ModelKind kind, const std::vector<double>& extra_breakpoints = {});

std::vector<ModelRun> run_scenario(const ScenarioSpec& spec);

struct PolicyPaths {
    Path G;
    Path mu;
};

struct PolicyEffect {
    ModelKind model = ModelKind::Tmia;
    std::vector<double> times;
    std::vector<double> dY; ///< alternative minus baseline
    std::vector<double> dp;
    double max_abs_dY = 0.0;
    double max_abs_dp = 0.0;
};

/// Runs the spec under both policy variants on identical step grids and differences
/// them sample by sample, once per model in spec.model.
std::vector<PolicyEffect> policy_effect(const ScenarioSpec& spec, const PolicyPaths& baseline,
                                        const PolicyPaths& alternative);

struct CompareOptions {
    double fiscal_dG = 10.0;     ///< permanent spending boost from t = 0
    double monetary_mu = 0.05;   ///< permanent easing from t = 0
};

/// Policy counts as effective on output when max |dY| exceeds this multiple of Y_star0.
inline constexpr double kPolicyEffectThreshold = 1e-6;

struct ComparisonRow {
    std::string quantity;
    std::string tmia;
    std::string tmiia;
};

struct ComparisonTable {
    std::vector<ComparisonRow> rows;
    std::array<ModelRun, 2> runs;              ///< TMIA, TMIIA
    std::array<PolicyEffect, 2> fiscal;        ///< TMIA, TMIIA
    std::array<PolicyEffect, 2> monetary;

    const ComparisonRow& row(std::string_view quantity) const;
};

/// Runs both models on the spec and fills the sign / policy-effectiveness table.
ComparisonTable compare_models(const ScenarioSpec& spec, const CompareOptions& options = {});

} // namespace tobin
