#pragma once

#include "tobin/demand.hpp"
#include "tobin/models.hpp"
#include "tobin/scenario.hpp"
#include "tobin/stability.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tobin {

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

/// Sampling ranges for the random sweep, keyed by coefficient name. Recognized keys:
/// A, B, C, D1, D2 (shared by both models), e_Y, e_Ystar, e_p, e_x, e_r, M,
/// wealth_coef and Ystar_ratio (equilibrium Y* as a multiple of Y_star0).
using SweepRanges = std::map<std::string, Range>;

SweepRanges default_sweep_ranges();

struct SweepSpec {
    int draws = 1000;              ///< per model
    std::uint64_t seed = 20200515;
    double shock_ratio = 0.9;      ///< post-shock Y* over pre-shock Y* for the sign check
    double structural_share = 0.5; ///< fraction of draws using the structural demand form
    int threads = 0;               ///< 0: hardware concurrency; never changes the output
    SweepRanges ranges = default_sweep_ranges();
};

struct SweepDraw {
    int index = 0;
    ModelParams params;
    DemandSpec demand;
    double Ystar = 100.0;
    double G = 20.0;
    double r_star = 0.02;
};

struct SweepRecord {
    SweepDraw draw;
    std::optional<StabilityReport> stability;
    std::optional<SignTuple> short_run_signs;
    std::string error; ///< set when the draw failed numerically
};

/// Deterministic draws for one model. Draws whose demand spec admits no positive
/// rest-point price are discarded and redrawn from the same stream.
std::vector<SweepDraw> generate_draws(ModelKind kind, const SweepSpec& spec, const ReferencePoint& ref);

SweepRecord evaluate_draw(const SweepDraw& draw, double shock_ratio);

/// Evaluates every draw, in parallel when threads != 1. The result is ordered by draw index.
std::vector<SweepRecord> run_sweep(const std::vector<SweepDraw>& draws, const SweepSpec& spec);

} // namespace tobin
