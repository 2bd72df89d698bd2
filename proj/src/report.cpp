#include "tobin/report.hpp"

#include "tobin/detail/overloaded.hpp"
#include "tobin/errors.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace tobin {

namespace {

json schedule_json(const Schedule& s)
{
    switch (s.kind) {
    case Schedule::Kind::Constant:
        return {{"kind", "constant"}, {"value", s.values[0]}};
    case Schedule::Kind::Step:
        return {{"kind", "step"}, {"t0", s.breakpoints[0]}, {"from", s.values[0]}, {"to", s.values[1]}};
    case Schedule::Kind::Ramp:
        return {{"kind", "ramp"},
                {"t0", s.breakpoints[0]},
                {"t1", s.breakpoints[1]},
                {"from", s.values[0]},
                {"to", s.values[1]}};
    case Schedule::Kind::Piecewise:
        return {{"kind", "piecewise"},
                {"initial", s.values[0]},
                {"times", s.breakpoints},
                {"values", std::vector<double>(s.values.begin() + 1, s.values.end())}};
    }
    return nullptr;
}

json path_json(const Path& p)
{
    if (p.terms.size() == 1) {
        return schedule_json(p.terms.front());
    }
    json terms = json::array();
    for (const auto& t : p.terms) {
        terms.push_back(schedule_json(t));
    }
    return {{"kind", "sum"}, {"terms", terms}};
}

json demand_json(const DemandSpec& d)
{
    const ReferencePoint& ref = reference_point(d);
    json out = {{"kind", nullptr}, {"Ystar0", ref.Y_star0}, {"p0", ref.p0}, {"r0", ref.r0}, {"G0", ref.G0}};
    std::visit(detail::overloaded{
                   [&](const AffineDemandSpec& a) {
                       out["kind"] = "affine";
                       out["e_Y"] = a.e_Y;
                       out["e_Ystar"] = a.e_Ystar;
                       out["e_p"] = a.e_p;
                       out["e_x"] = a.e_x;
                       out["e_r"] = a.e_r;
                       out["e_G"] = a.e_G;
                   },
                   [&](const StructuralDemandSpec& s) {
                       out["kind"] = "structural";
                       const auto& c = s.coef;
                       out["c_Y"] = c.c_Y;
                       out["c_Ystar"] = c.c_Ystar;
                       out["M"] = c.M;
                       out["wealth_coef"] = c.wealth_coef;
                       out["q"] = c.q;
                       out["K"] = c.K;
                       out["c_x"] = c.c_x;
                       out["c_r"] = c.c_r;
                       out["T"] = c.T;
                       out["c_T"] = c.c_T;
                   },
               },
               d);
    return out;
}

json params_json(const ModelParams& p)
{
    return std::visit(detail::overloaded{
                          [](const TmiaParams& a) -> json {
                              return {{"A", a.A}, {"B", a.B}, {"C", a.C_exp}, {"D1", a.D1}, {"D2", a.D2}, {"pi0", a.pi0}};
                          },
                          [](const TmiiaParams& b) -> json {
                              return {{"A'", b.A_p}, {"B'", b.B_p}, {"C'", b.C_p}, {"D1'", b.D1_p}, {"D2'", b.D2_p},
                                      {"pi0", b.pi0}};
                          },
                      },
                      p);
}

json signs_json(const SignTuple& s)
{
    std::string out;
    for (Sign v : s) {
        out.push_back(to_char(v));
    }
    return out;
}

json complex_list(const Roots& roots)
{
    json out = json::array();
    for (const auto& z : roots) {
        out.push_back({{"re", z.real()}, {"im", z.imag()}});
    }
    return out;
}

json hurwitz_json(const HurwitzResult& h)
{
    return {{"stable", h.stable}, {"determinants", h.determinants}};
}

json exog_json(const ExogenousPoint& e)
{
    return {{"Ystar", e.Ystar}, {"G", e.G}, {"mu", e.mu}};
}

json effect_summary(const PolicyEffect& e)
{
    return {{"model", to_string(e.model)}, {"max_abs_dY", e.max_abs_dY}, {"max_abs_dp", e.max_abs_dp}};
}

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

json to_json(const MacroState& s)
{
    return {{"Y", s.Y}, {"p", s.p}, {"x", s.x}, {"r", s.r}};
}

json to_json(const RunConfig& config)
{
    const ScenarioSpec& sc = config.scenario;
    json params = params_json(sc.tmia);
    const json tmiia = params_json(sc.tmiia);
    for (const auto& [k, v] : tmiia.items()) {
        params[k] = v;
    }

    json initial = "old-equilibrium";
    if (sc.initial) {
        initial = to_json(*sc.initial);
    }

    json output = json::object();
    if (config.output.csv) output["csv"] = *config.output.csv;
    if (config.output.json) output["json"] = *config.output.json;

    json ranges = json::object();
    for (const auto& [k, r] : config.sweep.ranges) {
        ranges[k] = {r.lo, r.hi};
    }

    return {
        {"model", to_string(sc.model)},
        {"params", params},
        {"demand", demand_json(sc.demand)},
        {"r_star", sc.r_star},
        {"shock", path_json(sc.Ystar)},
        {"policy", {{"G", path_json(sc.G)}, {"mu", path_json(sc.mu)}}},
        {"initial", initial},
        {"run", {{"horizon", sc.horizon}, {"dt", sc.dt}, {"sample_every", sc.sample_every}}},
        {"output", output},
        {"compare", {{"fiscal_dG", config.compare.fiscal_dG}, {"monetary_mu", config.compare.monetary_mu}}},
        {"sweep",
         {{"draws", config.sweep.draws},
          {"seed", config.sweep.seed},
          {"shock_ratio", config.sweep.shock_ratio},
          {"structural_share", config.sweep.structural_share},
          {"threads", config.sweep.threads},
          {"ranges", ranges}}},
    };
}

json to_json(const StabilityReport& r)
{
    json jac = json::array();
    for (const auto& row : r.jacobian.rows) {
        jac.push_back(row);
    }
    json conditions = {{"tobin_footnote7", r.conditions.tobin_footnote7}};
    if (r.conditions.condition19) conditions["condition19"] = *r.conditions.condition19;
    if (r.conditions.condition21) conditions["condition21"] = *r.conditions.condition21;

    const auto& p = r.partials;
    return {
        {"model", to_string(r.model)},
        {"verdict", to_string(r.verdict)},
        {"equilibrium", to_json(r.equilibrium)},
        {"exogenous", exog_json(r.exog)},
        {"partials",
         {{"dE_dY", p.dE_dY},
          {"dE_dYstar", p.dE_dYstar},
          {"dE_dp", p.dE_dp},
          {"dE_dx", p.dE_dx},
          {"dE_dr", p.dE_dr},
          {"dE_dG", p.dE_dG}}},
        {"jacobian", jac},
        {"charpoly", r.charpoly.coeffs},
        {"eigenvalues", complex_list(r.eigenvalues)},
        {"max_real_part", r.max_real_part},
        {"routh_hurwitz", hurwitz_json(r.routh_hurwitz)},
        {"conditions", conditions},
        {"fd_max_abs_error", r.fd_max_abs_error},
        {"transverse",
         {{"verdict", to_string(r.transverse.verdict)},
          {"charpoly", r.transverse.charpoly.coeffs},
          {"eigenvalues", complex_list(r.transverse.eigenvalues)},
          {"max_real_part", r.transverse.max_real_part},
          {"routh_hurwitz", hurwitz_json(r.transverse.routh_hurwitz)},
          {"removed_constant", r.transverse.removed_constant}}},
    };
}

json to_json(const PredictionReport& r)
{
    return {
        {"short_run_signs", signs_json(r.short_run_signs)},
        {"short_run_rates", r.short_run_rates},
        {"terminal", to_json(r.terminal)},
        {"terminal_time", r.terminal_time},
        {"terminal_Ystar", r.terminal_Ystar},
        {"terminal_gap", r.terminal_gap},
        {"terminal_pi", r.terminal_pi},
        {"terminal_x", r.terminal_x},
        {"converged", r.converged},
        {"policy_notes", r.policy_notes},
    };
}

json to_json(const ComparisonTable& t)
{
    json rows = json::array();
    for (const auto& row : t.rows) {
        rows.push_back({{"quantity", row.quantity}, {"TMIA", row.tmia}, {"TMIIA", row.tmiia}});
    }
    json predictions = json::object();
    for (const auto& run : t.runs) {
        predictions[std::string(to_string(run.model))] = to_json(run.prediction);
    }
    return {
        {"rows", rows},
        {"predictions", predictions},
        {"fiscal", {effect_summary(t.fiscal[0]), effect_summary(t.fiscal[1])}},
        {"monetary", {effect_summary(t.monetary[0]), effect_summary(t.monetary[1])}},
    };
}

json to_json(const SweepRecord& rec)
{
    const SweepDraw& d = rec.draw;
    json out = {
        {"index", d.index},
        {"model", to_string(kind_of(d.params))},
        {"params", params_json(d.params)},
        {"demand", demand_json(d.demand)},
        {"Ystar", d.Ystar},
        {"G", d.G},
        {"r_star", d.r_star},
    };
    if (rec.stability) {
        const auto& s = *rec.stability;
        json conditions = {{"tobin_footnote7", s.conditions.tobin_footnote7}};
        if (s.conditions.condition19) conditions["condition19"] = *s.conditions.condition19;
        if (s.conditions.condition21) conditions["condition21"] = *s.conditions.condition21;
        out["verdict"] = to_string(s.verdict);
        out["max_real_part"] = s.max_real_part;
        out["routh_hurwitz_stable"] = s.routh_hurwitz.stable;
        out["transverse_verdict"] = to_string(s.transverse.verdict);
        out["transverse_max_real_part"] = s.transverse.max_real_part;
        out["transverse_routh_hurwitz_stable"] = s.transverse.routh_hurwitz.stable;
        out["conditions"] = conditions;
        out["fd_max_abs_error"] = s.fd_max_abs_error;
    }
    if (rec.short_run_signs) {
        out["short_run_signs"] = signs_json(*rec.short_run_signs);
    }
    if (!rec.error.empty()) {
        out["error"] = rec.error;
    }
    return out;
}

std::size_t emit_trajectory_csv(const Trajectory& traj, std::ostream& out)
{
    if (traj.size() == 0) {
        throw PreconditionError("cannot write an empty trajectory");
    }
    std::string buf = kCsvHeader;
    buf += '\n';
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const MacroState& s = traj.states[i];
        const ExogenousPoint& e = traj.exog_series[i];
        const double row[] = {traj.times[i], s.Y, s.p, s.x, s.r, traj.pi_series[i], e.Ystar, e.G, e.mu};
        for (std::size_t k = 0; k < std::size(row); ++k) {
            if (k) buf += ',';
            buf += format_double(row[k]);
        }
        buf += '\n';
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) {
        throw IoError("failed to write trajectory CSV");
    }
    return buf.size();
}

std::size_t emit_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    const std::size_t n = emit_trajectory_csv(traj, out);
    out.close();
    if (!out) {
        throw IoError("failed to write '" + path.string() + "'");
    }
    return n;
}

Trajectory parse_trajectory_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw InputError("trajectory CSV: missing or unexpected header");
    }
    Trajectory traj;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        double v[9];
        std::size_t n = 0;
        const char* cur = line.c_str();
        while (n < 9) {
            char* end = nullptr;
            errno = 0;
            v[n++] = std::strtod(cur, &end);
            if (end == cur || errno == ERANGE) {
                throw InputError("trajectory CSV: bad number on line " + std::to_string(line_no));
            }
            cur = end;
            if (*cur == ',') {
                ++cur;
            } else {
                break;
            }
        }
        if (n != 9 || *cur != '\0') {
            throw InputError("trajectory CSV: expected 9 fields on line " + std::to_string(line_no));
        }
        traj.times.push_back(v[0]);
        traj.states.push_back({v[1], v[2], v[3], v[4]});
        traj.pi_series.push_back(v[5]);
        traj.exog_series.push_back({v[6], v[7], v[8]});
    }
    return traj;
}

} // namespace tobin
