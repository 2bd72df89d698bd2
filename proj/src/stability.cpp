#include "tobin/stability.hpp"

#include "tobin/detail/overloaded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tobin {

using detail::overloaded;

namespace {

using Matrix4 = std::array<Vec4, 4>;

Matrix4 multiply(const Matrix4& a, const Matrix4& b)
{
    Matrix4 out{};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t k = 0; k < 4; ++k) {
            for (std::size_t j = 0; j < 4; ++j) {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return out;
}

double trace(const Matrix4& a) { return a[0][0] + a[1][1] + a[2][2] + a[3][3]; }

double inf_norm(const Vec4& v)
{
    double n = 0.0;
    for (double c : v) {
        n = std::max(n, std::abs(c));
    }
    return n;
}

// Determinant by Gaussian elimination with partial pivoting; n is at most 4 here.
double determinant(std::vector<std::vector<double>> a)
{
    const std::size_t n = a.size();
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row) {
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) {
                pivot = row;
            }
        }
        if (a[pivot][col] == 0.0) {
            return 0.0;
        }
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t row = col + 1; row < n; ++row) {
            const double f = a[row][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    return det;
}

double max_real(const Roots& roots)
{
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& z : roots) {
        m = std::max(m, z.real());
    }
    return m;
}

} // namespace

std::complex<double> MonicPolynomial::operator()(std::complex<double> z) const
{
    std::complex<double> acc{0.0, 0.0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::Stable:
        return "Stable";
    case Verdict::Unstable:
        return "Unstable";
    case Verdict::Marginal:
        return "Marginal";
    }
    return "Marginal";
}

Verdict verdict_from_max_real_part(double max_real_part, double tol)
{
    if (max_real_part < -tol) {
        return Verdict::Stable;
    }
    if (max_real_part > tol) {
        return Verdict::Unstable;
    }
    return Verdict::Marginal;
}

Jacobian4 analytic_jacobian(const ModelParams& params, const DemandSpec& demand, const MacroState& eq,
                            const ExogenousPoint& exog)
{
    const Vec4 residual = vector_field(eq, params, demand, exog);
    if (inf_norm(residual) > 1e-9 * std::max(1.0, std::abs(eq.Y))) {
        std::ostringstream msg;
        msg << "Jacobian requested away from a rest point (field inf-norm " << inf_norm(residual) << ")";
        throw PreconditionError(msg.str());
    }
    const DemandPartials d = demand_partials(demand, {eq.Y, exog.Ystar, eq.p, eq.x, eq.r, exog.G});
    const double p = eq.p;

    Jacobian4 J;
    std::visit(overloaded{
                   [&](const TmiaParams& m) {
                       J.rows[kY] = {m.A * (d.dE_dY - 1.0), m.A * d.dE_dp, m.A * d.dE_dx, m.A * d.dE_dr};
                       J.rows[kP] = {p * m.B, 0.0, p, 0.0};
                       J.rows[kX] = {m.B * m.C_exp, 0.0, 0.0, 0.0};
                       J.rows[kR] = {m.D1 + m.D2 * m.B, 0.0, m.D2, 0.0};
                   },
                   [&](const TmiiaParams& m) {
                       const double pb = p * m.B_p;
                       const double cb = m.C_p * m.B_p;
                       J.rows[kY] = {-m.A_p, 0.0, 0.0, 0.0};
                       J.rows[kP] = {pb * (d.dE_dY - 1.0), pb * d.dE_dp, pb * d.dE_dx + p, pb * d.dE_dr};
                       J.rows[kX] = {cb * (d.dE_dY - 1.0), cb * d.dE_dp, cb * d.dE_dx, cb * d.dE_dr};
                       J.rows[kR] = {m.D1_p, 0.0, m.D2_p, 0.0};
                   },
               },
               params);
    return J;
}

Jacobian4 finite_difference_jacobian(const StateField& field, const MacroState& base, double h)
{
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw DomainError("finite-difference step must be positive");
    }
    if (base.Y - h <= 0.0 || base.p - h <= 0.0) {
        throw DomainError("finite-difference stencil would leave Y > 0, p > 0");
    }
    Jacobian4 J;
    const Vec4 b = base.to_vec();
    for (std::size_t j = 0; j < 4; ++j) {
        Vec4 up = b;
        Vec4 down = b;
        up[j] += h;
        down[j] -= h;
        const Vec4 fu = field(MacroState::from_vec(up));
        const Vec4 fd = field(MacroState::from_vec(down));
        for (std::size_t i = 0; i < 4; ++i) {
            J(i, j) = (fu[i] - fd[i]) / (2.0 * h);
        }
    }
    return J;
}

CharPoly characteristic_polynomial(const Jacobian4& J)
{
    constexpr std::size_t n = 4;
    CharPoly cp;
    cp.coeffs.assign(n + 1, 0.0);
    cp.coeffs[n] = 1.0;

    const Matrix4& a = J.rows;
    Matrix4 m{};
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{n-k+1} I;  c_{n-k} = -tr(A M_k) / k
        Matrix4 next = multiply(a, m);
        for (std::size_t i = 0; i < n; ++i) {
            next[i][i] += cp.coeffs[n - k + 1];
        }
        m = next;
        cp.coeffs[n - k] = -trace(multiply(a, m)) / static_cast<double>(k);
    }
    return cp;
}

Roots polynomial_roots(const MonicPolynomial& poly)
{
    const std::size_t n = poly.degree();
    if (n == 0) {
        return {};
    }
    if (poly.coeffs.back() != 1.0) {
        throw PreconditionError("polynomial_roots expects a monic polynomial");
    }
    for (double c : poly.coeffs) {
        if (!std::isfinite(c)) {
            throw InputError("polynomial has a non-finite coefficient");
        }
    }

    // Cauchy bound scales the staggered starting points to the root magnitudes.
    double radius = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        radius = std::max(radius, std::abs(poly.coeffs[k]));
    }
    radius += 1.0;

    Roots z(n);
    const std::complex<double> seed{0.4, 0.9};
    std::complex<double> w{1.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        z[k] = radius * w;
        w *= seed;
    }

    constexpr int kMaxIter = 500;
    constexpr double kStepTol = 1e-12;
    for (int iter = 0; iter < kMaxIter; ++iter) {
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::complex<double> denom{1.0, 0.0};
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) {
                    std::complex<double> diff = z[i] - z[j];
                    if (diff == std::complex<double>{0.0, 0.0}) {
                        diff = {1e-300, 1e-300};
                    }
                    denom *= diff;
                }
            }
            const std::complex<double> step = poly(z[i]) / denom;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
                continue;
            }
            z[i] -= step;
            worst = std::max(worst, std::abs(step) / std::max(1.0, std::abs(z[i])));
        }
        if (worst < kStepTol) {
            std::sort(z.begin(), z.end(), [](const auto& a, const auto& b) {
                return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
            });
            return z;
        }
    }
    throw RootConvergenceError("Durand-Kerner iteration did not converge in 500 iterations", z);
}

HurwitzResult routh_hurwitz(const MonicPolynomial& poly)
{
    const std::size_t n = poly.degree();
    // a_k in descending powers: a_0 = 1 is the leading coefficient.
    auto a = [&](long k) -> double {
        if (k < 0 || k > static_cast<long>(n)) {
            return 0.0;
        }
        return poly.coeffs[n - static_cast<std::size_t>(k)];
    };

    HurwitzResult out;
    bool positive = true;
    for (double c : poly.coeffs) {
        positive = positive && c > 0.0;
    }
    for (std::size_t order = 1; order <= n; ++order) {
        std::vector<std::vector<double>> h(order, std::vector<double>(order));
        for (std::size_t i = 0; i < order; ++i) {
            for (std::size_t j = 0; j < order; ++j) {
                h[i][j] = a(2 * static_cast<long>(j) - static_cast<long>(i) + 1);
            }
        }
        out.determinants.push_back(determinant(std::move(h)));
    }
    out.stable = positive && std::all_of(out.determinants.begin(), out.determinants.end(),
                                         [](double d) { return d > 0.0; });
    return out;
}

MonicPolynomial deflate_zero_root(const MonicPolynomial& poly)
{
    if (poly.degree() == 0) {
        throw PreconditionError("cannot deflate a constant polynomial");
    }
    return MonicPolynomial{std::vector<double>(poly.coeffs.begin() + 1, poly.coeffs.end())};
}

NecessaryConditions check_necessary_conditions(const ModelParams& params, const DemandPartials& d, double p_star)
{
    if (!(p_star > 0.0)) {
        throw DomainError("necessary conditions need p* > 0");
    }
    NecessaryConditions out;
    std::visit(overloaded{
                   [&](const TmiaParams& m) {
                       const double lhs = -p_star * m.B * d.dE_dp - (m.D1 + m.D2 * m.B) * d.dE_dr;
                       out.condition19 = lhs > m.B * m.C_exp * d.dE_dx;
                       out.tobin_footnote7 = p_star * d.dE_dp + m.C_exp * d.dE_dx < 0.0;
                   },
                   [&](const TmiiaParams& m) {
                       out.condition21 = -p_star * d.dE_dp > m.C_p * d.dE_dx;
                       out.tobin_footnote7 = p_star * d.dE_dp + m.C_p * d.dE_dx < 0.0;
                   },
               },
               params);
    return out;
}

StabilityReport classify_stability(const ModelParams& params, const DemandSpec& demand, double Ystar, double G,
                                   double r_star)
{
    StabilityReport rep;
    rep.model = kind_of(params);
    rep.exog = ExogenousPoint{Ystar, G, 0.0};
    rep.equilibrium = find_equilibrium(params, demand, Ystar, G, r_star);
    const auto& eq = rep.equilibrium;
    rep.partials = demand_partials(demand, {eq.Y, Ystar, eq.p, eq.x, eq.r, G});

    rep.jacobian = analytic_jacobian(params, demand, eq, rep.exog);
    const Jacobian4 fd = finite_difference_jacobian(
        [&](const MacroState& s) { return vector_field(s, params, demand, rep.exog); }, eq, kJacobianFdStep);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            rep.fd_max_abs_error = std::max(rep.fd_max_abs_error, std::abs(fd(i, j) - rep.jacobian(i, j)));
        }
    }

    rep.charpoly = characteristic_polynomial(rep.jacobian);
    rep.eigenvalues = polynomial_roots(rep.charpoly);
    rep.max_real_part = max_real(rep.eigenvalues);
    rep.verdict = verdict_from_max_real_part(rep.max_real_part);
    rep.routh_hurwitz = routh_hurwitz(rep.charpoly);
    rep.conditions = check_necessary_conditions(params, rep.partials, eq.p);

    auto& tr = rep.transverse;
    tr.removed_constant = rep.charpoly.coeffs.front();
    tr.charpoly = deflate_zero_root(rep.charpoly);
    tr.eigenvalues = polynomial_roots(tr.charpoly);
    tr.max_real_part = max_real(tr.eigenvalues);
    tr.verdict = verdict_from_max_real_part(tr.max_real_part);
    tr.routh_hurwitz = routh_hurwitz(tr.charpoly);
    return rep;
}

} // namespace tobin
