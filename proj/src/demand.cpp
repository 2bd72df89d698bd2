#include "tobin/demand.hpp"

#include "tobin/detail/overloaded.hpp"
#include "tobin/errors.hpp"

#include <cmath>
#include <sstream>

namespace tobin {

namespace {

using detail::overloaded;

void check_point(const DemandPoint& at)
{
    const double values[] = {at.Y, at.Ystar, at.p, at.x, at.r, at.G};
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw InputError("demand evaluated at a non-finite argument");
        }
    }
    if (at.p <= 0.0) {
        std::ostringstream msg;
        msg << "demand requires a positive price level, got p = " << at.p;
        throw DomainError(msg.str());
    }
}

// Everything in the structural sum except the calibration intercept.
double structural_body(const StructuralCoefficients& c, const DemandPoint& at)
{
    const double wealth = c.M / at.p + c.q * c.K;
    return c.c_Y * at.Y + c.c_Ystar * at.Ystar - c.c_T * c.T + c.c_x * at.x - c.c_r * at.r
           + c.wealth_coef * wealth + at.G;
}

class IssueCollector {
public:
    void violation_unless(bool ok, std::string field, std::string what)
    {
        if (!ok) {
            issues_.push_back({std::move(field), std::move(what), IssueSeverity::Violation});
        }
    }
    void non_default_unless(bool ok, std::string field, std::string what)
    {
        if (!ok) {
            issues_.push_back({std::move(field), std::move(what), IssueSeverity::NonDefaultSign});
        }
    }
    SignReport take() { return std::move(issues_); }

private:
    SignReport issues_;
};

void check_reference(IssueCollector& out, const ReferencePoint& ref)
{
    out.violation_unless(std::isfinite(ref.Y_star0) && ref.Y_star0 > 0, "ref.Ystar0", "must be > 0");
    out.violation_unless(std::isfinite(ref.p0) && ref.p0 > 0, "ref.p0", "must be > 0");
    out.violation_unless(std::isfinite(ref.r0), "ref.r0", "must be finite");
    out.violation_unless(std::isfinite(ref.G0) && ref.G0 >= 0, "ref.G0", "must be >= 0");
}

bool in_open_unit(double v) { return v > 0.0 && v < 1.0; }

} // namespace

StructuralDemandSpec make_structural_demand(const ReferencePoint& ref, const StructuralCoefficients& coef)
{
    StructuralDemandSpec spec{ref, coef, 0.0};
    const DemandPoint at{ref.Y_star0, ref.Y_star0, ref.p0, 0.0, ref.r0, ref.G0};
    spec.intercept = ref.Y_star0 - structural_body(coef, at);
    return spec;
}

const ReferencePoint& reference_point(const DemandSpec& spec)
{
    return std::visit([](const auto& s) -> const ReferencePoint& { return s.ref; }, spec);
}

double eval_demand(const DemandSpec& spec, const DemandPoint& at)
{
    check_point(at);
    return std::visit(
        overloaded{
            [&](const AffineDemandSpec& s) {
                const auto& ref = s.ref;
                return ref.Y_star0 + s.e_Y * (at.Y - ref.Y_star0) + s.e_Ystar * (at.Ystar - ref.Y_star0)
                       + s.e_p * (at.p - ref.p0) + s.e_x * at.x + s.e_r * (at.r - ref.r0)
                       + s.e_G * (at.G - ref.G0);
            },
            [&](const StructuralDemandSpec& s) { return s.intercept + structural_body(s.coef, at); },
        },
        spec);
}

DemandPartials demand_partials(const DemandSpec& spec, const DemandPoint& at)
{
    check_point(at);
    return std::visit(
        overloaded{
            [](const AffineDemandSpec& s) {
                return DemandPartials{s.e_Y, s.e_Ystar, s.e_p, s.e_x, s.e_r, s.e_G};
            },
            [&](const StructuralDemandSpec& s) {
                const auto& c = s.coef;
                return DemandPartials{c.c_Y, c.c_Ystar, -c.wealth_coef * c.M / (at.p * at.p), c.c_x, -c.c_r, 1.0};
            },
        },
        spec);
}

SignReport validate_demand_signs(const DemandSpec& spec)
{
    IssueCollector out;
    std::visit(overloaded{
                   [&](const AffineDemandSpec& s) {
                       check_reference(out, s.ref);
                       out.violation_unless(in_open_unit(s.e_Y), "e_Y", "must lie in (0, 1)");
                       out.violation_unless(s.e_p < 0, "e_p", "price-level effect must be negative");
                       out.violation_unless(s.e_x > 0, "e_x", "expected-inflation effect must be positive");
                       out.violation_unless(s.e_r < 0, "e_r", "real-rate effect must be negative");
                       out.violation_unless(s.e_G > 0, "e_G", "public-spending effect must be positive");
                       if (!std::isfinite(s.e_Ystar)) {
                           out.violation_unless(false, "e_Ystar", "must be finite");
                       } else {
                           out.non_default_unless(s.e_Ystar > 0, "e_Ystar", "non-default sign (default reading is > 0)");
                       }
                   },
                   [&](const StructuralDemandSpec& s) {
                       const auto& c = s.coef;
                       check_reference(out, s.ref);
                       out.violation_unless(in_open_unit(c.c_Y), "c_Y", "must lie in (0, 1)");
                       out.violation_unless(c.M > 0, "M", "money stock must be > 0");
                       out.violation_unless(c.wealth_coef > 0, "wealth_coef", "must be > 0");
                       out.violation_unless(c.q > 0, "q", "must be > 0");
                       out.violation_unless(c.K > 0, "K", "must be > 0");
                       out.violation_unless(c.c_x > 0, "c_x", "must be > 0");
                       out.violation_unless(c.c_r > 0, "c_r", "must be > 0");
                       out.violation_unless(c.c_T > 0, "c_T", "must be > 0");
                       out.violation_unless(std::isfinite(c.T), "T", "must be finite");
                       if (!std::isfinite(c.c_Ystar)) {
                           out.violation_unless(false, "c_Ystar", "must be finite");
                       } else {
                           out.non_default_unless(c.c_Ystar > 0, "c_Ystar", "non-default sign (default reading is > 0)");
                       }
                   },
               },
               spec);
    return out.take();
}

bool is_valid(const SignReport& report)
{
    for (const auto& issue : report) {
        if (issue.severity == IssueSeverity::Violation) {
            return false;
        }
    }
    return true;
}

} // namespace tobin
