#include "tobin/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tobin {

namespace {

Vec4 axpy(const Vec4& s, double h, const Vec4& k)
{
    return {s[0] + h * k[0], s[1] + h * k[1], s[2] + h * k[2], s[3] + h * k[3]};
}

Vec4 eval_stage(const TimeField& field, double t, Side side, const Vec4& s)
{
    const MacroState state = MacroState::from_vec(s);
    if (!(state.Y > 0.0) || !(state.p > 0.0)) {
        throw StepRejected("RK stage left the admissible region");
    }
    try {
        return field(t, side, state);
    } catch (const DomainError& e) {
        throw StepRejected(std::string("RK stage rejected: ") + e.what());
    }
}

void record(Trajectory& traj, const OdeSystem& sys, double t, const MacroState& s)
{
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    traj.times.push_back(t);
    traj.states.push_back(s);
    traj.pi_series.push_back(sys.inflation ? sys.inflation(t, s) : nan);
    traj.exog_series.push_back(sys.exogenous ? sys.exogenous(t) : ExogenousPoint{nan, nan, nan});
}

} // namespace

MacroState step_rk4(const TimeField& field, const MacroState& s, double t, double dt)
{
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw DomainError("RK4 step length must be positive");
    }
    const Vec4 y = s.to_vec();
    const double half = 0.5 * dt;
    const Vec4 k1 = eval_stage(field, t, Side::Right, y);
    const Vec4 k2 = eval_stage(field, t + half, Side::Right, axpy(y, half, k1));
    const Vec4 k3 = eval_stage(field, t + half, Side::Right, axpy(y, half, k2));
    const Vec4 k4 = eval_stage(field, t + dt, Side::Left, axpy(y, dt, k3));

    Vec4 next;
    for (std::size_t i = 0; i < 4; ++i) {
        next[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if (!std::isfinite(next[i])) {
            throw StepRejected("RK4 step produced a non-finite state");
        }
    }
    const MacroState out = MacroState::from_vec(next);
    if (out.Y <= 0.0 || out.p <= 0.0) {
        std::ostringstream msg;
        msg << "RK4 step from t = " << t << " would leave Y > 0, p > 0 (Y = " << out.Y << ", p = " << out.p << ")";
        throw StepRejected(msg.str());
    }
    return out;
}

std::vector<double> step_grid(const IntegrationOptions& opt, const std::vector<double>& breakpoints)
{
    if (!(opt.dt > 0.0) || !std::isfinite(opt.dt)) {
        throw DomainError("integration step must be positive");
    }
    if (!(opt.t1 > opt.t0) || !std::isfinite(opt.t0) || !std::isfinite(opt.t1)) {
        throw DomainError("integration interval must satisfy t1 > t0");
    }
    const double snap = 1e-9 * opt.dt;

    std::vector<double> grid;
    for (std::size_t k = 0;; ++k) {
        const double t = opt.t0 + static_cast<double>(k) * opt.dt;
        if (t >= opt.t1 - snap) {
            break;
        }
        grid.push_back(t);
    }
    grid.push_back(opt.t1);

    for (double b : breakpoints) {
        if (!(b > opt.t0 + snap) || !(b < opt.t1 - snap)) {
            continue;
        }
        auto it = std::lower_bound(grid.begin(), grid.end(), b);
        if (it != grid.end() && std::abs(*it - b) <= snap) {
            *it = b;
        } else if (it != grid.begin() && std::abs(*(it - 1) - b) <= snap) {
            *(it - 1) = b;
        } else {
            grid.insert(it, b);
        }
    }
    return grid;
}

Trajectory integrate(const OdeSystem& sys, const MacroState& initial, const IntegrationOptions& opt)
{
    if (opt.sample_every < 1) {
        throw DomainError("sample_every must be >= 1");
    }
    if (!(initial.Y > 0.0) || !(initial.p > 0.0)) {
        throw DomainError("initial state must satisfy Y > 0, p > 0");
    }
    const std::vector<double> grid = step_grid(opt, sys.breakpoints);

    Trajectory traj;
    MacroState state = initial;
    double t = grid.front();
    record(traj, sys, t, state);

    for (std::size_t node = 1; node < grid.size(); ++node) {
        const double target = grid[node];
        double h = target - t;
        int halvings = 0;
        while (t < target) {
            const bool last = h >= target - t;
            const double h_try = last ? target - t : h;
            try {
                state = step_rk4(sys.field, state, t, h_try);
                t = last ? target : t + h_try;
            } catch (const StepRejected& e) {
                if (++halvings > opt.max_halvings) {
                    std::ostringstream msg;
                    msg << "trajectory truncated at t = " << t << " after " << opt.max_halvings
                        << " step halvings: " << e.what();
                    throw TruncationError(msg.str(), std::move(traj));
                }
                h = 0.5 * h_try;
            }
        }
        const bool final_node = node + 1 == grid.size();
        if (final_node || node % static_cast<std::size_t>(opt.sample_every) == 0) {
            record(traj, sys, t, state);
        }
    }
    return traj;
}

} // namespace tobin
