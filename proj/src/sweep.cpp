#include "tobin/sweep.hpp"

#include "tobin/errors.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

namespace tobin {

namespace {

class Sampler {
public:
    Sampler(std::uint64_t seed, const SweepRanges& ranges)
        : rng_(seed)
        , ranges_(ranges)
    {
    }

    double unit()
    {
        // 53 random mantissa bits; independent of the standard library's distributions.
        return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    }

    double draw(const std::string& key)
    {
        const auto it = ranges_.find(key);
        if (it == ranges_.end()) {
            throw PreconditionError("sweep range '" + key + "' is not defined");
        }
        return it->second.lo + unit() * (it->second.hi - it->second.lo);
    }

private:
    std::mt19937_64 rng_;
    const SweepRanges& ranges_;
};

std::uint64_t stream_seed(std::uint64_t seed, ModelKind kind)
{
    return seed ^ (kind == ModelKind::Tmia ? 0x9e3779b97f4a7c15ULL : 0xc2b2ae3d27d4eb4fULL);
}

} // namespace

SweepRanges default_sweep_ranges()
{
    return {
        {"A", {0.1, 2.0}},
        {"B", {0.001, 0.02}},
        {"C", {0.05, 1.0}},
        {"D1", {0.001, 0.02}},
        {"D2", {0.1, 1.0}},
        {"e_Y", {0.1, 0.9}},
        {"e_Ystar", {0.1, 1.0}},
        {"e_p", {-50.0, -2.0}},
        {"e_x", {0.5, 100.0}},
        {"e_r", {-100.0, -5.0}},
        {"M", {50.0, 400.0}},
        {"wealth_coef", {0.05, 0.2}},
        {"Ystar_ratio", {0.95, 1.05}},
    };
}

std::vector<SweepDraw> generate_draws(ModelKind kind, const SweepSpec& spec, const ReferencePoint& ref)
{
    if (spec.draws < 0) {
        throw PreconditionError("sweep draw count must be >= 0");
    }
    Sampler s(stream_seed(spec.seed, kind), spec.ranges);
    std::vector<SweepDraw> draws;
    draws.reserve(static_cast<std::size_t>(spec.draws));

    constexpr int kMaxAttemptsPerDraw = 1000;
    int attempts = 0;
    while (static_cast<int>(draws.size()) < spec.draws) {
        SweepDraw d;
        d.index = static_cast<int>(draws.size());
        const double A = s.draw("A"), B = s.draw("B"), C = s.draw("C"), D1 = s.draw("D1"), D2 = s.draw("D2");
        d.params = kind == ModelKind::Tmia ? ModelParams{TmiaParams{A, B, C, D1, D2, 0.0}}
                                           : ModelParams{TmiiaParams{A, B, C, D1, D2, 0.0}};
        const double eY = s.draw("e_Y"), eYstar = s.draw("e_Ystar"), ex = s.draw("e_x"), er = s.draw("e_r");
        const bool structural = s.unit() < spec.structural_share;
        if (structural) {
            StructuralCoefficients c;
            c.c_Y = eY;
            c.c_Ystar = eYstar;
            c.c_x = ex;
            c.c_r = -er;
            c.M = s.draw("M");
            c.wealth_coef = s.draw("wealth_coef");
            d.demand = make_structural_demand(ref, c);
        } else {
            d.demand = AffineDemandSpec{ref, eY, eYstar, s.draw("e_p"), ex, er, 1.0};
        }
        d.Ystar = ref.Y_star0 * s.draw("Ystar_ratio");
        d.G = ref.G0;
        d.r_star = ref.r0;

        try {
            (void)find_equilibrium(d.params, d.demand, d.Ystar, d.G, d.r_star);
        } catch (const NumericalError&) {
            if (++attempts > kMaxAttemptsPerDraw) {
                throw NumericalError("sweep ranges rarely admit a positive rest-point price");
            }
            continue;
        }
        attempts = 0;
        draws.push_back(std::move(d));
    }
    return draws;
}

SweepRecord evaluate_draw(const SweepDraw& draw, double shock_ratio)
{
    SweepRecord rec;
    rec.draw = draw;
    try {
        rec.stability = classify_stability(draw.params, draw.demand, draw.Ystar, draw.G, draw.r_star);
        const ExogenousPoint shocked{draw.Ystar * shock_ratio, draw.G, 0.0};
        rec.short_run_signs = short_run_signs(draw.params, draw.demand, rec.stability->equilibrium, shocked);
    } catch (const Error& e) {
        rec.error = e.what();
    }
    return rec;
}

std::vector<SweepRecord> run_sweep(const std::vector<SweepDraw>& draws, const SweepSpec& spec)
{
    std::vector<SweepRecord> out(draws.size());
    unsigned workers = spec.threads > 0 ? static_cast<unsigned>(spec.threads) : std::thread::hardware_concurrency();
    workers = std::clamp(workers, 1u, static_cast<unsigned>(std::max<std::size_t>(draws.size(), 1)));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < draws.size(); i = next++) {
            out[i] = evaluate_draw(draws[i], spec.shock_ratio);
        }
    };
    if (workers == 1) {
        work();
        return out;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back(work);
    }
    pool.clear();
    return out;
}

} // namespace tobin
