// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only if all pass.

#include "tobin/cli.hpp"
#include "tobin/scenario.hpp"
#include "tobin/stability.hpp"
#include "tobin/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace tobin;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail)
{
    std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

void note(const std::string& text) { std::printf("       note: %s\n", text.c_str()); }

class Timer {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

SweepSpec sweep_spec(int draws, std::uint64_t seed)
{
    SweepSpec s;
    s.draws = draws;
    s.seed = seed;
    return s;
}

// 1. Analytic Jacobian against central differences on random draws.
void jacobian_fidelity()
{
    Timer timer;
    double worst = 0.0;
    int checked = 0;
    for (ModelKind kind : {ModelKind::Tmia, ModelKind::Tmiia}) {
        for (const auto& d : generate_draws(kind, sweep_spec(100, 101), {})) {
            const MacroState eq = find_equilibrium(d.params, d.demand, d.Ystar, d.G, d.r_star);
            const ExogenousPoint exog{d.Ystar, d.G, 0.0};
            const Jacobian4 an = analytic_jacobian(d.params, d.demand, eq, exog);
            const Jacobian4 fd = finite_difference_jacobian(
                [&](const MacroState& s) { return vector_field(s, d.params, d.demand, exog); }, eq, 1e-6);
            for (std::size_t i = 0; i < 4; ++i) {
                for (std::size_t j = 0; j < 4; ++j) worst = std::max(worst, std::abs(an(i, j) - fd(i, j)));
            }
            ++checked;
        }
    }
    const double t = timer.seconds();
    report(1, checked == 200 && worst <= 1e-5 && t < 5.0,
           fmt("Jacobian fidelity: %d draws, max |analytic - FD| = %.2e (<= 1e-5), %.2f s (< 5 s)", checked, worst, t));
}

// 2 and 3 share one 1000-draw sweep per model.
void stability_sweep()
{
    Timer timer;
    int full_compared = 0, full_disagree = 0, cubic_compared = 0, cubic_disagree = 0;
    int cond_false = 0, full_counter = 0, cubic_counter = 0, evaluated = 0, errors = 0;
    constexpr double band = 1e-6;

    auto agree = [&](const HurwitzResult& rh, double max_re, int& compared, int& disagree) {
        if (std::abs(max_re) <= band) return;
        ++compared;
        if (rh.stable != (max_re < 0.0)) ++disagree;
    };

    for (ModelKind kind : {ModelKind::Tmia, ModelKind::Tmiia}) {
        const SweepSpec spec = sweep_spec(1000, 20200515);
        for (const auto& rec : run_sweep(generate_draws(kind, spec, {}), spec)) {
            if (!rec.stability) {
                ++errors;
                continue;
            }
            ++evaluated;
            const StabilityReport& r = *rec.stability;
            agree(r.routh_hurwitz, r.max_real_part, full_compared, full_disagree);
            agree(r.transverse.routh_hurwitz, r.transverse.max_real_part, cubic_compared, cubic_disagree);

            const bool necessary = kind == ModelKind::Tmia ? *r.conditions.condition19 : *r.conditions.condition21;
            if (!necessary) {
                ++cond_false;
                if (r.max_real_part < -1e-8) ++full_counter;
                if (r.transverse.max_real_part < -1e-8) ++cubic_counter;
            }
        }
    }
    const double t = timer.seconds();
    report(2, errors == 0 && evaluated == 2000 && full_disagree == 0 && cubic_disagree == 0 && t < 30.0,
           fmt("Routh-Hurwitz vs eigenvalues: %d draws; full quartic %d compared / %d disagree, "
               "transverse cubic %d compared / %d disagree; %.2f s (< 30 s)",
               evaluated, full_compared, full_disagree, cubic_compared, cubic_disagree, t));
    note("every rest point carries one zero root, so stable draws fall inside the band on the full quartic; "
         "the cubic left after removing that root is compared as well");
    report(3, errors == 0 && cond_false > 0 && full_counter == 0 && cubic_counter == 0,
           fmt("necessary condition contrapositive: %d draws with the condition false, counterexamples: "
               "full spectrum %d, transverse %d",
               cond_false, full_counter, cubic_counter));
}

// 4. TMIIA output relaxes exponentially towards the new potential.
void tmiia_closed_form()
{
    ScenarioSpec spec;
    spec.model = ModelChoice::Tmiia;
    spec.horizon = 10.0;
    spec.dt = 0.01;
    spec.sample_every = 1;
    const Trajectory tr = simulate_model(spec, ModelKind::Tmiia);
    double worst = 0.0;
    for (std::size_t i = 0; i < tr.size(); ++i) {
        worst = std::max(worst, std::abs(tr.states[i].Y - (90.0 + 10.0 * std::exp(-spec.tmiia.A_p * tr.times[i]))));
    }
    report(4, worst <= 1e-8, fmt("TMIIA closed form: %zu samples, max |Y - (90 + 10 e^{-A't})| = %.2e (<= 1e-8)",
                                 tr.size(), worst));
}

// 5. In TMIIA neither spending nor easing moves output, but both move prices.
void classical_dichotomy()
{
    ScenarioSpec spec;
    spec.model = ModelChoice::Tmiia;
    const PolicyPaths base{spec.G, spec.mu};
    const auto fiscal = policy_effect(spec, base, {spec.G.plus(Schedule::step(0.0, 0.0, 10.0)), spec.mu}).front();
    const auto monetary = policy_effect(spec, base, {spec.G, spec.mu.plus(Schedule::step(0.0, 0.0, 0.05))}).front();
    const bool ok = fiscal.max_abs_dY <= 1e-12 && monetary.max_abs_dY <= 1e-12 && fiscal.max_abs_dp > 1e-4 &&
                    monetary.max_abs_dp > 1e-4;
    report(5, ok,
           fmt("TMIIA policy neutrality: dG=+10 max|dY| = %.1e, max|dp| = %.3g; mu=+0.05 max|dY| = %.1e, max|dp| = %.3g",
               fiscal.max_abs_dY, fiscal.max_abs_dp, monetary.max_abs_dY, monetary.max_abs_dp));
}

std::string signs(const SignTuple& s)
{
    std::string out;
    for (Sign v : s) out.push_back(to_char(v));
    return out;
}

// 6. Short-run sign pattern after a fall in potential output.
void sign_tables()
{
    const char* want[] = {"-+++", "---+"};
    ScenarioSpec spec;
    spec.model = ModelChoice::Both;
    spec.horizon = 1.0;
    const auto runs = run_scenario(spec);
    bool ok = signs(runs[0].prediction.short_run_signs) == want[0] && signs(runs[1].prediction.short_run_signs) == want[1];
    const std::string defaults = signs(runs[0].prediction.short_run_signs) + " / " + signs(runs[1].prediction.short_run_signs);

    int stable[2] = {0, 0}, matched[2] = {0, 0};
    for (ModelKind kind : {ModelKind::Tmia, ModelKind::Tmiia}) {
        const int k = kind == ModelKind::Tmia ? 0 : 1;
        SweepSpec sw = sweep_spec(400, 606);
        for (const auto& rec : run_sweep(generate_draws(kind, sw, {}), sw)) {
            if (!rec.stability || rec.stability->transverse.verdict != Verdict::Stable || stable[k] == 100) continue;
            ++stable[k];
            if (rec.short_run_signs && signs(*rec.short_run_signs) == want[k]) ++matched[k];
        }
    }
    ok = ok && stable[0] == 100 && stable[1] == 100 && matched[0] == 100 && matched[1] == 100;
    report(6, ok,
           fmt("sign tables: defaults %s; random stable draws TMIA %d/%d, TMIIA %d/%d match", defaults.c_str(),
               matched[0], stable[0], matched[1], stable[1]));
}

// 7. TMIA convergence and the fiscal cushion while output is falling.
void tmia_convergence_and_cushion()
{
    ScenarioSpec spec;
    spec.model = ModelChoice::Tmia;
    const auto run = run_scenario(spec).front();
    const double gap = run.prediction.terminal_gap;
    const double ystar = run.prediction.terminal_Ystar;

    const Trajectory& base = run.trajectory;
    const auto trough = std::min_element(base.states.begin(), base.states.end(),
                                         [](const MacroState& a, const MacroState& b) { return a.Y < b.Y; });
    const double t_trough = base.times[static_cast<std::size_t>(trough - base.states.begin())];

    const PolicyPaths b{spec.G, spec.mu};
    const auto eff = policy_effect(spec, b, {spec.G.plus(Schedule::step(0.0, 0.0, 10.0)), spec.mu}).front();
    int fall_samples = 0, fall_positive = 0;
    double first_nonpositive = -1.0;
    for (std::size_t i = 0; i < eff.times.size(); ++i) {
        const double t = eff.times[i];
        if (t <= 0.0) continue;
        if (eff.dY[i] <= 0.0 && first_nonpositive < 0.0) first_nonpositive = t;
        if (t <= t_trough) {
            ++fall_samples;
            if (eff.dY[i] > 0.0) ++fall_positive;
        }
    }
    const bool ok = gap < 1e-3 * ystar && fall_samples > 0 && fall_positive == fall_samples;
    report(7, ok,
           fmt("TMIA convergence |Y(200) - Y*| = %.2e (< %.2g); dG=+10 gives dY > 0 at %d/%d samples while "
               "output falls (0, %.2f]",
               gap, 1e-3 * ystar, fall_positive, fall_samples, t_trough));
    note(fmt("after the trough the cushion reverses: first sample with dY <= 0 at t = %.2f. Expected inflation "
             "integrates the output gap and returns to zero, so the integral of dY over the whole run is zero",
             first_nonpositive));
}

// 8. Falsification table from `compare`.
void comparison_table()
{
    ScenarioSpec spec;
    const auto t = compare_models(spec);
    auto cell = [&](const char* q) { return t.row(q).tmia + "/" + t.row(q).tmiia; };
    const bool ok = cell("inflation") == "+/-" && cell("expectations") == "+/-" && cell("real_rate") == "+/+" &&
                    cell("fiscal_policy") == "effective/none" && cell("monetary_policy") == "effective/none";
    report(8, ok,
           fmt("compare table: inflation %s, expectations %s, real rate %s, fiscal %s, monetary %s",
               cell("inflation").c_str(), cell("expectations").c_str(), cell("real_rate").c_str(),
               cell("fiscal_policy").c_str(), cell("monetary_policy").c_str()));
}

// 9. Halving the step cuts the terminal error by about 2^4.
void integrator_order()
{
    auto terminal = [](double dt, double horizon = 10.0) {
        ScenarioSpec spec;
        spec.model = ModelChoice::Tmia;
        spec.horizon = horizon;
        spec.dt = dt;
        spec.sample_every = 1000000;
        return simulate_model(spec, ModelKind::Tmia).states.back();
    };
    const double dt = 0.1;
    const MacroState ref = terminal(dt / 32.0);
    auto err = [&](const MacroState& s) {
        const Vec4 a = s.to_vec(), b = ref.to_vec();
        double m = 0.0;
        for (std::size_t i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]));
        return m;
    };
    const double e1 = err(terminal(dt)), e2 = err(terminal(dt / 2.0));
    const double ratio = e1 / e2;
    report(9, ratio >= 12.0 && ratio <= 20.0,
           fmt("integrator order: terminal error %.3e (dt=%.3g) vs %.3e (dt=%.3g), ratio %.2f in [12, 20]", e1, dt,
               e2, dt / 2.0, ratio));

    // Over the full 200-period run both errors have decayed to rounding level.
    const MacroState ref200 = terminal(dt / 32.0, 200.0);
    auto err200 = [&](const MacroState& s) { return std::abs(s.Y - ref200.Y) + std::abs(s.p - ref200.p); };
    note(fmt("measured at T = 10 where the transient is still resolved; at T = 200 the errors are %.1e and %.1e",
             err200(terminal(dt, 200.0)), err200(terminal(dt / 2.0, 200.0))));
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// 10. Byte-identical outputs from repeated runs.
void determinism()
{
    const fs::path dir = fs::temp_directory_path() / "tobin_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path cfg = dir / "scenario.yaml";
    std::ofstream(cfg) << "model: both\nsweep: {draws: 200, threads: 0}\n";

    int identical = 0, total = 0;
    for (const std::string cmd : {"stability", "simulate", "compare", "sweep"}) {
        std::string outputs[2];
        for (auto& o : outputs) {
            std::ostringstream out, err;
            const int code = run_command({cmd, "--config", cfg.string()}, out, err);
            o = std::to_string(code) + "\n" + out.str();
            if (cmd == "simulate") o += slurp(dir / "scenario_tmia.csv") + slurp(dir / "scenario_tmiia.csv");
        }
        ++total;
        if (outputs[0] == outputs[1] && outputs[0].rfind("0\n", 0) == 0) ++identical;
    }
    fs::remove_all(dir);
    report(10, identical == total, fmt("determinism: %d/%d commands byte-identical across two runs", identical, total));
}

} // namespace

int main()
{
    Timer total;
    jacobian_fidelity();
    stability_sweep();
    tmiia_closed_form();
    classical_dichotomy();
    sign_tables();
    tmia_convergence_and_cushion();
    comparison_table();
    integrator_order();
    determinism();
    std::printf("%s: %d criteria failed, %.2f s\n", failures ? "FAILED" : "ALL PASSED", failures, total.seconds());
    return failures ? 1 : 0;
}
