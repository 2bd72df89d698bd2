#pragma once

#include "tobin/errors.hpp"
#include "tobin/models.hpp"

#include <functional>
#include <vector>

namespace tobin {

/// Which one-sided limit of the exogenous drivers a stage should see. A step that
/// ends on a schedule breakpoint evaluates its last stage with the left limit, so
/// discontinuities are never smeared across a step.
enum class Side { Right, Left };

using TimeField = std::function<Vec4(double t, Side side, const MacroState& s)>;

class StepRejected : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Classical four-stage Runge–Kutta step. Throws StepRejected if the result (or a
/// stage) leaves Y > 0, p > 0 or is non-finite.
MacroState step_rk4(const TimeField& field, const MacroState& s, double t, double dt);

struct Trajectory {
    std::vector<double> times;
    std::vector<MacroState> states;
    std::vector<double> pi_series;
    std::vector<ExogenousPoint> exog_series;

    std::size_t size() const { return times.size(); }
};

class TruncationError : public NumericalError {
public:
    TruncationError(const std::string& what, Trajectory partial_trajectory)
        : NumericalError(what)
        , partial(std::move(partial_trajectory))
    {
    }
    Trajectory partial;
};

struct OdeSystem {
    TimeField field;
    /// Right-continuous exogenous values, recorded alongside each sample.
    std::function<ExogenousPoint(double t)> exogenous;
    /// Realized inflation at a sample.
    std::function<double(double t, const MacroState& s)> inflation;
    /// Times at which the exogenous drivers may jump; steps are aligned to them.
    std::vector<double> breakpoints;
};

struct IntegrationOptions {
    double t0 = 0.0;
    double t1 = 1.0;
    double dt = 0.01;
    int sample_every = 1;
    int max_halvings = 20;
};

/// Step end-points from t0 to t1: the uniform grid t0 + k dt merged with interior
/// breakpoints. A breakpoint within 1e-9 dt of a grid node replaces that node.
std::vector<double> step_grid(const IntegrationOptions& opt, const std::vector<double>& breakpoints);

/// Fixed-step RK4 over step_grid. Records the initial point, every sample_every-th
/// grid node, and the final node. A rejected step is retried with half the step
/// length, at most max_halvings times per grid interval; beyond that a
/// TruncationError carries the samples accepted so far.
Trajectory integrate(const OdeSystem& system, const MacroState& initial, const IntegrationOptions& opt);

} // namespace tobin
