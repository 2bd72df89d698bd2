#include "tobin/models.hpp"

#include "tobin/detail/overloaded.hpp"
#include "tobin/errors.hpp"

#include <cmath>
#include <sstream>

namespace tobin {

using detail::overloaded;

namespace {

DemandPoint demand_point(const MacroState& s, const ExogenousPoint& exog)
{
    return {s.Y, exog.Ystar, s.p, s.x, s.r, exog.G};
}

bool admissible(double v) { return std::isfinite(v) && v > 0.0; }

} // namespace

ModelKind kind_of(const ModelParams& params)
{
    return std::holds_alternative<TmiaParams>(params) ? ModelKind::Tmia : ModelKind::Tmiia;
}

std::string_view to_string(ModelKind kind)
{
    return kind == ModelKind::Tmia ? "TMIA" : "TMIIA";
}

std::optional<std::string> first_invalid_param(const ModelParams& params)
{
    return std::visit(
        overloaded{
            [](const TmiaParams& m) -> std::optional<std::string> {
                if (!admissible(m.A)) return "A";
                if (!admissible(m.B)) return "B";
                if (!admissible(m.C_exp)) return "C";
                if (!admissible(m.D1)) return "D1";
                if (!admissible(m.D2)) return "D2";
                if (!std::isfinite(m.pi0)) return "pi0";
                return std::nullopt;
            },
            [](const TmiiaParams& m) -> std::optional<std::string> {
                if (!admissible(m.A_p)) return "A'";
                if (!admissible(m.B_p)) return "B'";
                if (!admissible(m.C_p)) return "C'";
                if (!admissible(m.D1_p)) return "D1'";
                if (!admissible(m.D2_p)) return "D2'";
                if (!std::isfinite(m.pi0)) return "pi0";
                return std::nullopt;
            },
        },
        params);
}

Vec4 tmia_field(const MacroState& s, const TmiaParams& m, const DemandSpec& demand, const ExogenousPoint& exog)
{
    const double E = eval_demand(demand, demand_point(s, exog));
    const double gap = s.Y - exog.Ystar;
    const double pi = m.B * gap + s.x;
    return {
        m.A * (E - s.Y),
        s.p * pi,
        m.B * m.C_exp * gap,
        (m.D1 + m.D2 * m.B) * gap + m.D2 * (s.x - m.pi0) - exog.mu,
    };
}

Vec4 tmiia_field(const MacroState& s, const TmiiaParams& m, const DemandSpec& demand, const ExogenousPoint& exog)
{
    // Output moves on supply alone; nothing below feeds back into dY.
    const double dY = m.A_p * (exog.Ystar - s.Y);
    const double excess = eval_demand(demand, demand_point(s, exog)) - s.Y;
    const double pi = m.B_p * excess + s.x;
    return {
        dY,
        s.p * pi,
        m.B_p * m.C_p * excess,
        m.D1_p * (s.Y - exog.Ystar) + m.D2_p * (s.x - m.pi0) - exog.mu,
    };
}

Vec4 vector_field(const MacroState& s, const ModelParams& params, const DemandSpec& demand, const ExogenousPoint& exog)
{
    return std::visit(
        overloaded{
            [&](const TmiaParams& m) { return tmia_field(s, m, demand, exog); },
            [&](const TmiiaParams& m) { return tmiia_field(s, m, demand, exog); },
        },
        params);
}

double inflation_rate(const MacroState& s, const ModelParams& params, const DemandSpec& demand, const ExogenousPoint& exog)
{
    return std::visit(
        overloaded{
            [&](const TmiaParams& m) { return m.B * (s.Y - exog.Ystar) + s.x; },
            [&](const TmiiaParams& m) {
                const double excess = eval_demand(demand, demand_point(s, exog)) - s.Y;
                return m.B_p * excess + s.x;
            },
        },
        params);
}

MacroState find_equilibrium(const ModelParams& /*params*/, const DemandSpec& demand, double Ystar, double G, double r_star)
{
    if (!std::isfinite(Ystar) || !std::isfinite(G) || !std::isfinite(r_star)) {
        throw InputError("equilibrium requested at non-finite exogenous values");
    }
    if (Ystar <= 0.0) {
        throw DomainError("equilibrium requires Y* > 0");
    }

    // Excess demand at full employment as a function of the price level alone.
    auto excess = [&](double p) { return eval_demand(demand, {Ystar, Ystar, p, 0.0, r_star, G}) - Ystar; };
    auto slope = [&](double p) { return demand_partials(demand, {Ystar, Ystar, p, 0.0, r_star, G}).dE_dp; };

    const double tol = 1e-10 * Ystar;
    const double p0 = reference_point(demand).p0;
    // Newton polish once inside tolerance so the field residual sits at rounding level.
    auto at = [&](double p) {
        double g = excess(p);
        for (int k = 0; k < 3 && g != 0.0; ++k) {
            const double d = slope(p);
            const double next = p - g / d;
            if (d == 0.0 || !std::isfinite(next) || next <= 0.0) {
                break;
            }
            const double g_next = excess(next);
            if (!(std::abs(g_next) < std::abs(g))) {
                break;
            }
            p = next;
            g = g_next;
        }
        return MacroState{Ystar, p, 0.0, r_star};
    };

    double g_ref = excess(p0);
    if (std::abs(g_ref) <= tol) {
        return at(p0);
    }

    // Bracket a sign change on (0, inf): the lower end sits just above zero, the upper
    // end doubles away from the reference price.
    double lo = p0 * 1e-12;
    double g_lo = excess(lo);
    double hi = p0;
    double g_hi = g_ref;
    if (std::signbit(g_lo) == std::signbit(g_hi)) {
        lo = p0;
        g_lo = g_ref;
        hi = 2.0 * p0;
        g_hi = excess(hi);
        for (int k = 0; std::signbit(g_lo) == std::signbit(g_hi); ++k) {
            if (k == 80) {
                std::ostringstream msg;
                msg << "no positive price level clears demand at Y* = " << Ystar << ", G = " << G
                    << ", r* = " << r_star;
                throw NoPositiveRootError(msg.str());
            }
            lo = hi;
            g_lo = g_hi;
            hi *= 2.0;
            g_hi = excess(hi);
        }
    }

    double p = p0 > lo && p0 < hi ? p0 : 0.5 * (lo + hi);
    double g = excess(p);
    for (int iter = 0; iter < 100; ++iter) {
        if (std::abs(g) <= tol) {
            return at(p);
        }
        if (std::signbit(g) == std::signbit(g_lo)) {
            lo = p;
            g_lo = g;
        } else {
            hi = p;
        }
        const double d = slope(p);
        double next = d != 0.0 ? p - g / d : lo;
        if (!std::isfinite(next) || next <= lo || next >= hi) {
            // Geometric midpoint when the bracket spans decades.
            next = hi > 4.0 * lo ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
        }
        p = next;
        g = excess(p);
    }
    if (std::abs(g) <= tol) {
        return at(p);
    }
    throw NumericalError("equilibrium price solver did not converge in 100 iterations");
}

} // namespace tobin
