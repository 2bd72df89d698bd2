#pragma once

#include <string>
#include <variant>
#include <vector>

namespace tobin {

/// Full-employment reference point at which every demand spec clears: E = Y_star0.
struct ReferencePoint {
    double Y_star0 = 100.0;
    double p0 = 1.0;
    double r0 = 0.02;
    double G0 = 20.0;
};

/// E = Y_star0 + e_Y (Y - Y_star0) + e_Ystar (Y* - Y_star0) + e_p (p - p0)
///     + e_x x + e_r (r - r0) + e_G (G - G0)
struct AffineDemandSpec {
    ReferencePoint ref;
    double e_Y = 0.6;
    double e_Ystar = 0.5;
    double e_p = -20.0;
    double e_x = 10.0;
    double e_r = -50.0;
    double e_G = 1.0;
};

struct StructuralCoefficients {
    double c_Y = 0.6;          ///< marginal propensity to spend, in (0,1)
    double c_Ystar = 0.5;
    double M = 200.0;          ///< nominal outside money
    double wealth_coef = 0.1;
    double q = 1.0;            ///< market valuation / replacement cost
    double K = 200.0;
    double c_x = 10.0;
    double c_r = 50.0;
    double T = 20.0;           ///< net taxes, held constant
    double c_T = 0.5;
};

/// E = intercept + c_Y Y + c_Ystar Y* - c_T T + c_x x - c_r r + wealth_coef (M/p + qK) + G
///
/// The intercept is fixed by make_structural_demand so the reference point clears.
struct StructuralDemandSpec {
    ReferencePoint ref;
    StructuralCoefficients coef;
    double intercept = 0.0;
};

StructuralDemandSpec make_structural_demand(const ReferencePoint& ref, const StructuralCoefficients& coef);

using DemandSpec = std::variant<AffineDemandSpec, StructuralDemandSpec>;

const ReferencePoint& reference_point(const DemandSpec& spec);

/// Arguments of the demand function. Y* enters separately from Y.
struct DemandPoint {
    double Y;
    double Ystar;
    double p;
    double x;
    double r;
    double G;
};

struct DemandPartials {
    double dE_dY;
    double dE_dYstar;
    double dE_dp;
    double dE_dx;
    double dE_dr;
    double dE_dG;
};

double eval_demand(const DemandSpec& spec, const DemandPoint& at);
DemandPartials demand_partials(const DemandSpec& spec, const DemandPoint& at);

enum class IssueSeverity {
    Violation,      ///< breaks a sign/range constraint; the spec is invalid
    NonDefaultSign  ///< admissible for sensitivity runs, but not the default reading
};

struct SignIssue {
    std::string field;
    std::string message;
    IssueSeverity severity;
};

using SignReport = std::vector<SignIssue>;

SignReport validate_demand_signs(const DemandSpec& spec);

/// True when the report holds no IssueSeverity::Violation entries.
bool is_valid(const SignReport& report);

} // namespace tobin
