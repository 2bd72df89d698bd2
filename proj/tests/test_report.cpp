#include "tobin/errors.hpp"
#include "tobin/report.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace tobin;

namespace {

std::vector<std::string> lines(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

} // namespace

TEST(Csv, FlatTrajectory)
{
    Trajectory tr;
    for (double t : {0.0, 1.0}) {
        tr.times.push_back(t);
        tr.states.push_back({100.0, 1.0, 0.0, 0.02});
        tr.pi_series.push_back(0.0);
        tr.exog_series.push_back({100.0, 20.0, 0.0});
    }
    std::ostringstream out;
    const std::size_t n = emit_trajectory_csv(tr, out);
    const std::string text = out.str();
    EXPECT_EQ(n, text.size());
    EXPECT_EQ(text.back(), '\n');
    const auto ls = lines(text);
    ASSERT_EQ(ls.size(), 3u);
    EXPECT_EQ(ls[0], "t,Y,p,x,r,pi,Ystar,G,mu");
    EXPECT_EQ(ls[1].substr(0, 6), "0,100,");
    EXPECT_EQ(ls[2].substr(0, 6), "1,100,");
}

TEST(Csv, RoundTripIsExact)
{
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    Trajectory tr;
    for (int i = 0; i < 200; ++i) {
        tr.times.push_back(i * 0.1);
        tr.states.push_back({u(rng), std::abs(u(rng)) + 1e-300, u(rng) * 1e-12, u(rng)});
        tr.pi_series.push_back(u(rng) / 3.0);
        tr.exog_series.push_back({u(rng), u(rng), 1.0 / 3.0});
    }
    std::stringstream buf;
    emit_trajectory_csv(tr, buf);
    const Trajectory back = parse_trajectory_csv(buf);
    ASSERT_EQ(back.size(), tr.size());
    for (std::size_t i = 0; i < tr.size(); ++i) {
        EXPECT_EQ(back.times[i], tr.times[i]);
        EXPECT_EQ(back.states[i], tr.states[i]);
        EXPECT_EQ(back.pi_series[i], tr.pi_series[i]);
        EXPECT_EQ(back.exog_series[i], tr.exog_series[i]);
    }
}

TEST(Csv, TmiiaFirstRowIsPostShock)
{
    ScenarioSpec spec;
    spec.model = ModelChoice::Tmiia;
    spec.horizon = 1.0;
    std::stringstream buf;
    emit_trajectory_csv(simulate_model(spec, ModelKind::Tmiia), buf);
    const Trajectory back = parse_trajectory_csv(buf);
    EXPECT_EQ(back.exog_series.front().Ystar, 90.0);
    EXPECT_EQ(back.states.front().Y, 100.0);
}

TEST(Csv, Errors)
{
    std::ostringstream out;
    EXPECT_THROW(emit_trajectory_csv(Trajectory{}, out), PreconditionError);
    Trajectory tr;
    tr.times = {0.0};
    tr.states = {{1, 1, 0, 0}};
    tr.pi_series = {0.0};
    tr.exog_series = {{}};
    EXPECT_THROW(emit_trajectory_csv(tr, std::filesystem::path("/nonexistent/dir/out.csv")), IoError);
    std::istringstream bad("t,Y\n1,2\n");
    EXPECT_THROW(parse_trajectory_csv(bad), InputError);
    std::istringstream short_row(std::string(kCsvHeader) + "\n1,2,3\n");
    EXPECT_THROW(parse_trajectory_csv(short_row), InputError);
}

TEST(Json, StabilityReportFields)
{
    const json j = to_json(classify_stability(TmiaParams{}, AffineDemandSpec{}, 100.0, 20.0, 0.02));
    EXPECT_EQ(j["model"], "TMIA");
    EXPECT_EQ(j["verdict"], "Marginal");
    EXPECT_EQ(j["transverse"]["verdict"], "Stable");
    EXPECT_EQ(j["conditions"]["condition19"], true);
    EXPECT_FALSE(j["conditions"].contains("condition21"));
    EXPECT_EQ(j["eigenvalues"].size(), 4u);
    EXPECT_EQ(j["jacobian"].size(), 4u);
}
