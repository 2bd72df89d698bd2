#pragma once

#include "tobin/demand.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace tobin {

/// Component order used by every 4-vector and 4x4 matrix in the library: (Y, p, x, r).
using Vec4 = std::array<double, 4>;

enum Component : std::size_t { kY = 0, kP = 1, kX = 2, kR = 3 };

/// Endogenous state: output, price level, expected inflation, real interest rate.
struct MacroState {
    double Y = 0.0;
    double p = 0.0;
    double x = 0.0;
    double r = 0.0;

    Vec4 to_vec() const { return {Y, p, x, r}; }
    static MacroState from_vec(const Vec4& v) { return {v[kY], v[kP], v[kX], v[kR]}; }

    friend bool operator==(const MacroState&, const MacroState&) = default;
};

// Defaults express the gap coefficients per unit of output at Y* = 100, i.e. a 1% output
// gap moves inflation by 0.5 percentage points per period.

/// Quantity-adjustment model: output chases demand, prices chase the output gap.
struct TmiaParams {
    double A = 0.8;
    double B = 0.005;
    double C_exp = 0.3; ///< adaptive-expectations gain
    double D1 = 0.005;
    double D2 = 0.5;
    double pi0 = 0.0;   ///< central-bank inflation target
};

/// Price-adjustment model: output chases potential, prices chase excess demand.
struct TmiiaParams {
    double A_p = 0.8;
    double B_p = 0.005;
    double C_p = 0.3;
    double D1_p = 0.005;
    double D2_p = 0.5;
    double pi0 = 0.0;
};

using ModelParams = std::variant<TmiaParams, TmiiaParams>;

enum class ModelKind { Tmia, Tmiia };

ModelKind kind_of(const ModelParams& params);
std::string_view to_string(ModelKind kind);

/// Name of the first adjustment speed that is not strictly positive and finite
/// ("B" for TMIA, "B'" for TMIIA), or nullopt when all are admissible.
std::optional<std::string> first_invalid_param(const ModelParams& params);

/// Exogenous drivers at one instant. mu >= 0 eases the real rate.
struct ExogenousPoint {
    double Ystar = 100.0;
    double G = 20.0;
    double mu = 0.0;

    friend bool operator==(const ExogenousPoint&, const ExogenousPoint&) = default;
};

Vec4 tmia_field(const MacroState& s, const TmiaParams& params, const DemandSpec& demand, const ExogenousPoint& exog);
Vec4 tmiia_field(const MacroState& s, const TmiiaParams& params, const DemandSpec& demand, const ExogenousPoint& exog);
Vec4 vector_field(const MacroState& s, const ModelParams& params, const DemandSpec& demand, const ExogenousPoint& exog);

/// Realized inflation dp/p implied by the model at this point.
double inflation_rate(const MacroState& s, const ModelParams& params, const DemandSpec& demand, const ExogenousPoint& exog);

/// Rest point (Y*, p_eq, 0, r_star) where demand clears output. Only p_eq is solved for;
/// the real rate is not pinned down by the dynamics and is taken as given.
///
/// Throws NoPositiveRootError when no p_eq > 0 clears demand and NumericalError
/// when the safeguarded Newton iteration does not converge in 100 steps.
MacroState find_equilibrium(const ModelParams& params, const DemandSpec& demand, double Ystar, double G, double r_star);

} // namespace tobin
