#pragma once

#include "tobin/demand.hpp"
#include "tobin/models.hpp"

#include <random>

namespace tobin::fixture {

// Textbook-sized coefficients (per unit of output rather than per 1% of output).
inline AffineDemandSpec unit_affine()
{
    AffineDemandSpec d;
    d.e_Y = 0.6;
    d.e_Ystar = 0.5;
    d.e_p = -0.2;
    d.e_x = 0.1;
    d.e_r = -0.5;
    d.e_G = 1.0;
    return d;
}

inline TmiaParams unit_tmia() { return {0.8, 0.5, 0.3, 0.5, 0.5, 0.0}; }
inline TmiiaParams unit_tmiia() { return {0.8, 0.5, 0.3, 0.5, 0.5, 0.0}; }

inline const MacroState kRefState{100.0, 1.0, 0.0, 0.02};

inline double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

} // namespace tobin::fixture
