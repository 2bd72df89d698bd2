#include "fixtures.hpp"

#include "tobin/errors.hpp"
#include "tobin/scenario.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace tobin;
using tobin::fixture::kRefState;
using tobin::fixture::unit_affine;
using tobin::fixture::unit_tmia;
using tobin::fixture::unit_tmiia;

namespace {

std::string str(const SignTuple& s)
{
    std::string out;
    for (Sign v : s) out.push_back(to_char(v));
    return out;
}

ScenarioSpec default_spec(ModelChoice m = ModelChoice::Tmia)
{
    ScenarioSpec s;
    s.model = m;
    return s;
}

} // namespace

TEST(Schedule, StepIsRightContinuous)
{
    const Schedule s = Schedule::step(1.0, 100.0, 90.0);
    EXPECT_EQ(eval_schedule(s, 0.999), 100.0);
    EXPECT_EQ(eval_schedule(s, 1.0), 90.0);
    EXPECT_EQ(eval_schedule_left(s, 1.0), 100.0);
    EXPECT_THROW(eval_schedule(s, -0.1), DomainError);
}

TEST(Schedule, RampAndConstant)
{
    EXPECT_DOUBLE_EQ(eval_schedule(Schedule::ramp(0.0, 2.0, 100.0, 90.0), 1.0), 95.0);
    EXPECT_EQ(eval_schedule(Schedule::constant(20.0), 1234.5), 20.0);
}

TEST(Schedule, Piecewise)
{
    const Schedule s = Schedule::piecewise(1.0, {2.0, 5.0}, {3.0, 4.0});
    EXPECT_EQ(eval_schedule(s, 0.0), 1.0);
    EXPECT_EQ(eval_schedule(s, 2.0), 3.0);
    EXPECT_EQ(eval_schedule(s, 4.9), 3.0);
    EXPECT_EQ(eval_schedule(s, 5.0), 4.0);
    EXPECT_THROW(Schedule::piecewise(1.0, {2.0, 1.0}, {3.0, 4.0}), InputError);
}

TEST(Schedule, StepAtZeroHasPreRunLevel)
{
    const Schedule s = Schedule::step(0.0, 100.0, 90.0);
    EXPECT_EQ(eval_schedule(s, 0.0), 90.0);
    EXPECT_EQ(eval_schedule_left(s, 0.0), 100.0);
}

TEST(Scenario, ShortRunSignsDefault)
{
    for (auto [m, want] : {std::pair{ModelChoice::Tmia, "-+++"}, std::pair{ModelChoice::Tmiia, "---+"}}) {
        const auto runs = run_scenario(default_spec(m));
        ASSERT_EQ(runs.size(), 1u);
        EXPECT_EQ(str(runs[0].prediction.short_run_signs), want);
    }
}

TEST(Scenario, ShortRunSignsWorkedNumbers)
{
    const ExogenousPoint shocked{90.0, 20.0, 0.0};
    EXPECT_EQ(str(short_run_signs(unit_tmia(), unit_affine(), kRefState, shocked)), "-+++");
    EXPECT_EQ(str(short_run_signs(unit_tmiia(), unit_affine(), kRefState, shocked)), "---+");
}

TEST(Scenario, LargeEasingFlipsRealRate)
{
    EXPECT_EQ(str(short_run_signs(unit_tmia(), unit_affine(), kRefState, {90.0, 20.0, 7.0})), "-+++");
    EXPECT_EQ(str(short_run_signs(unit_tmia(), unit_affine(), kRefState, {90.0, 20.0, 8.0})), "-++-");
}

TEST(Scenario, NullShock)
{
    ScenarioSpec spec = default_spec(ModelChoice::Both);
    spec.Ystar = Schedule::constant(100.0);
    for (const auto& run : run_scenario(spec)) {
        EXPECT_EQ(str(run.prediction.short_run_signs), "0000");
        for (const auto& s : run.trajectory.states) EXPECT_EQ(s, run.trajectory.states.front());
    }
}

TEST(Scenario, TmiaConverges)
{
    const auto runs = run_scenario(default_spec());
    EXPECT_TRUE(runs[0].prediction.converged);
    EXPECT_LT(runs[0].prediction.terminal_gap, 1e-3 * 90.0);
}

TEST(Scenario, FirstSampleIsPostShock)
{
    const auto runs = run_scenario(default_spec(ModelChoice::Tmiia));
    EXPECT_EQ(runs[0].trajectory.exog_series.front().Ystar, 90.0);
    EXPECT_EQ(runs[0].trajectory.states.front().Y, 100.0);
}

TEST(Scenario, IdenticalPoliciesGiveZeroEffect)
{
    ScenarioSpec spec = default_spec(ModelChoice::Both);
    const PolicyPaths same{spec.G, spec.mu};
    for (const auto& e : policy_effect(spec, same, same)) {
        EXPECT_EQ(e.max_abs_dY, 0.0);
        EXPECT_EQ(e.max_abs_dp, 0.0);
    }
}

TEST(Scenario, FiscalBoostLeavesTmiiaOutput)
{
    ScenarioSpec spec = default_spec(ModelChoice::Tmiia);
    const PolicyPaths base{spec.G, spec.mu};
    const PolicyPaths boost{spec.G.plus(Schedule::step(0.0, 0.0, 10.0)), spec.mu};
    const auto e = policy_effect(spec, base, boost).front();
    EXPECT_LE(e.max_abs_dY, 1e-12);
    EXPECT_GT(e.max_abs_dp, 0.0);
}

TEST(Scenario, FiscalBoostCushionsTmiaContraction)
{
    ScenarioSpec spec = default_spec();
    const PolicyPaths base{spec.G, spec.mu};
    const PolicyPaths boost{spec.G.plus(Schedule::step(0.0, 0.0, 10.0)), spec.mu};
    const auto e = policy_effect(spec, base, boost).front();

    const Trajectory baseline = simulate_model(spec, ModelKind::Tmia);
    const auto trough = std::min_element(baseline.states.begin(), baseline.states.end(),
                                         [](const MacroState& a, const MacroState& b) { return a.Y < b.Y; });
    const double t_trough = baseline.times[static_cast<std::size_t>(trough - baseline.states.begin())];
    ASSERT_GT(t_trough, 0.0);
    for (std::size_t i = 0; i < e.times.size() && e.times[i] <= t_trough; ++i) {
        if (e.times[i] > 0.0) {
            EXPECT_GT(e.dY[i], 0.0) << "t = " << e.times[i];
        }
    }
}

TEST(Scenario, SpendingEffectOnOutputIntegratesToZero)
{
    // x accumulates the output gap and returns to zero, so a permanent boost cannot
    // keep output above baseline forever.
    ScenarioSpec spec = default_spec();
    spec.sample_every = 1;
    const PolicyPaths base{spec.G, spec.mu};
    const PolicyPaths boost{spec.G.plus(Schedule::step(0.0, 0.0, 10.0)), spec.mu};
    const auto e = policy_effect(spec, base, boost).front();
    double integral = 0.0;
    for (std::size_t i = 1; i < e.times.size(); ++i) {
        integral += 0.5 * (e.dY[i] + e.dY[i - 1]) * (e.times[i] - e.times[i - 1]);
    }
    EXPECT_NEAR(integral, 0.0, 1e-3);
    EXPECT_TRUE(std::any_of(e.dY.begin(), e.dY.end(), [](double v) { return v < 0.0; }));
}

TEST(Scenario, ComparisonTable)
{
    const auto t = compare_models(default_spec());
    auto cells = [&](const char* q) { return std::pair{t.row(q).tmia, t.row(q).tmiia}; };
    EXPECT_EQ(cells("output"), (std::pair<std::string, std::string>{"-", "-"}));
    EXPECT_EQ(cells("inflation"), (std::pair<std::string, std::string>{"+", "-"}));
    EXPECT_EQ(cells("expectations"), (std::pair<std::string, std::string>{"+", "-"}));
    EXPECT_EQ(cells("real_rate"), (std::pair<std::string, std::string>{"+", "+"}));
    EXPECT_EQ(cells("fiscal_policy"), (std::pair<std::string, std::string>{"effective", "none"}));
    EXPECT_EQ(cells("monetary_policy"), (std::pair<std::string, std::string>{"effective", "none"}));
    EXPECT_THROW(t.row("nope"), PreconditionError);
}

TEST(Scenario, ComparisonUnderNullShock)
{
    ScenarioSpec spec = default_spec();
    spec.Ystar = Schedule::constant(100.0);
    const auto t = compare_models(spec);
    for (const char* q : {"output", "inflation", "expectations", "real_rate"}) {
        EXPECT_EQ(t.row(q).tmia, "0");
        EXPECT_EQ(t.row(q).tmiia, "0");
    }
    EXPECT_EQ(t.row("fiscal_policy").tmia, "effective");
    EXPECT_EQ(t.row("fiscal_policy").tmiia, "none");
}

TEST(Scenario, ExplicitInitialState)
{
    ScenarioSpec spec = default_spec(ModelChoice::Tmiia);
    spec.initial = MacroState{95.0, 1.0, 0.0, 0.02};
    spec.horizon = 1.0;
    const auto runs = run_scenario(spec);
    EXPECT_EQ(runs[0].trajectory.states.front().Y, 95.0);
}
