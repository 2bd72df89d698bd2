#pragma once

#include "tobin/demand.hpp"
#include "tobin/errors.hpp"
#include "tobin/models.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace tobin {

/// 4x4 real matrix, rows and columns ordered (Y, p, x, r).
struct Jacobian4 {
    std::array<Vec4, 4> rows{};

    double operator()(std::size_t i, std::size_t j) const { return rows[i][j]; }
    double& operator()(std::size_t i, std::size_t j) { return rows[i][j]; }
};

/// Monic polynomial with coefficients stored in ascending powers:
/// coeffs[k] multiplies lambda^k and coeffs.back() == 1.
struct MonicPolynomial {
    std::vector<double> coeffs;

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    std::complex<double> operator()(std::complex<double> z) const;
};

/// det(lambda I - J) for a 4x4 Jacobian: c0 + c1 lambda + ... + c4 lambda^4, c4 = 1.
using CharPoly = MonicPolynomial;

using Roots = std::vector<std::complex<double>>;

class RootConvergenceError : public NumericalError {
public:
    RootConvergenceError(const std::string& what, Roots best)
        : NumericalError(what)
        , best_iterate(std::move(best))
    {
    }
    Roots best_iterate;
};

enum class Verdict { Stable, Unstable, Marginal };

std::string_view to_string(Verdict v);

/// Real parts within this band of zero are classified Marginal.
inline constexpr double kMarginalBand = 1e-8;

Verdict verdict_from_max_real_part(double max_real_part, double tol = kMarginalBand);

struct HurwitzResult {
    bool stable = false;
    std::vector<double> determinants; ///< leading principal minors of the Hurwitz matrix
};

using StateField = std::function<Vec4(const MacroState&)>;

/// Linearization at a rest point with partials taken from the demand spec.
/// Throws PreconditionError when the field does not vanish at `equilibrium`.
Jacobian4 analytic_jacobian(const ModelParams& params, const DemandSpec& demand, const MacroState& equilibrium,
                            const ExogenousPoint& exog);

/// Central differences, one column per state component.
Jacobian4 finite_difference_jacobian(const StateField& field, const MacroState& base, double h);

/// Faddeev–LeVerrier recurrence.
CharPoly characteristic_polynomial(const Jacobian4& J);

/// Durand–Kerner iteration. Roots are sorted by real part, then imaginary part, descending.
Roots polynomial_roots(const MonicPolynomial& poly);

HurwitzResult routh_hurwitz(const MonicPolynomial& poly);

/// Drops the constant term and divides by lambda. Used to factor out the zero root
/// produced by a continuum of equilibria.
MonicPolynomial deflate_zero_root(const MonicPolynomial& poly);

struct NecessaryConditions {
    std::optional<bool> condition19; ///< TMIA: -p B E_p - (D1 + D2 B) E_r > B C E_x
    std::optional<bool> condition21; ///< TMIIA: -p E_p > C' E_x
    bool tobin_footnote7 = false;    ///< p E_p + C E_x < 0
};

NecessaryConditions check_necessary_conditions(const ModelParams& params, const DemandPartials& partials,
                                               double p_star);

/// Spectrum of the Jacobian restricted to directions transverse to the curve of
/// rest points. Both models carry one structural zero eigenvalue: the p and r
/// columns of the Jacobian are parallel, so (p, r) can trade off along E = Y*.
struct TransverseStability {
    MonicPolynomial charpoly; ///< degree 3
    Roots eigenvalues;
    double max_real_part = 0.0;
    Verdict verdict = Verdict::Marginal;
    HurwitzResult routh_hurwitz;
    double removed_constant = 0.0; ///< c0 of the full polynomial, zero up to rounding
};

struct StabilityReport {
    ModelKind model = ModelKind::Tmia;
    MacroState equilibrium;
    ExogenousPoint exog;
    DemandPartials partials{};
    Jacobian4 jacobian;
    CharPoly charpoly;
    Roots eigenvalues;
    double max_real_part = 0.0;
    Verdict verdict = Verdict::Marginal;
    HurwitzResult routh_hurwitz;
    NecessaryConditions conditions;
    double fd_max_abs_error = 0.0;
    TransverseStability transverse;
};

/// Step used for the finite-difference cross-check inside classify_stability.
inline constexpr double kJacobianFdStep = 1e-6;

/// Solves for the rest point at (Y*, G, r*) and assembles the full report.
StabilityReport classify_stability(const ModelParams& params, const DemandSpec& demand, double Ystar, double G,
                                   double r_star);

} // namespace tobin
