#include "tobin/cli.hpp"

#include "tobin/config.hpp"
#include "tobin/errors.hpp"
#include "tobin/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>

namespace tobin {

namespace fs = std::filesystem;

namespace {

struct Options {
    std::string config;
    std::optional<std::string> model;
    std::optional<double> horizon;
    std::optional<std::string> csv;
    std::optional<std::string> json;
};

/// Paths from the config file are taken relative to the file's directory.
fs::path from_config(const std::string& config_path, const std::string& p)
{
    const fs::path path(p);
    if (path.is_absolute()) {
        return path;
    }
    return fs::path(config_path).parent_path() / path;
}

std::optional<fs::path> json_destination(const Options& opt, const RunConfig& cfg)
{
    if (opt.json) {
        return fs::path(*opt.json);
    }
    if (cfg.output.json) {
        return from_config(opt.config, *cfg.output.json);
    }
    return std::nullopt;
}

void write_json(const json& doc, const std::optional<fs::path>& dest, std::ostream& out)
{
    const std::string text = doc.dump(2) + "\n";
    if (!dest) {
        out << text;
        return;
    }
    std::ofstream f(*dest, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot open '" + dest->string() + "' for writing");
    }
    f << text;
    f.close();
    if (!f) {
        throw IoError("failed to write '" + dest->string() + "'");
    }
}

json header(const std::string& command, const RunConfig& cfg)
{
    return {{"command", command}, {"config", to_json(cfg)}, {"warnings", cfg.warnings}};
}

fs::path csv_destination(const Options& opt, const RunConfig& cfg, ModelKind kind)
{
    fs::path base;
    if (opt.csv) {
        base = *opt.csv;
    } else if (cfg.output.csv) {
        base = from_config(opt.config, *cfg.output.csv);
    } else {
        base = fs::path(opt.config).replace_extension(".csv");
    }
    if (cfg.scenario.model != ModelChoice::Both) {
        return base;
    }
    const std::string suffix = kind == ModelKind::Tmia ? "_tmia" : "_tmiia";
    fs::path out = base;
    out.replace_filename(base.stem().string() + suffix + base.extension().string());
    return out;
}

int cmd_stability(const Options& opt, const RunConfig& cfg, std::ostream& out)
{
    const ScenarioSpec& sc = cfg.scenario;
    const ExogenousPoint before = sc.exog_before_start();
    json doc = header("stability", cfg);
    json reports = json::array();
    for (ModelKind kind : expand(sc.model)) {
        reports.push_back(to_json(classify_stability(sc.params_for(kind), sc.demand, before.Ystar, before.G, sc.r_star)));
    }
    doc["reports"] = reports;
    write_json(doc, json_destination(opt, cfg), out);
    return kExitOk;
}

int cmd_simulate(const Options& opt, const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const ScenarioSpec& sc = cfg.scenario;
    json doc = header("simulate", cfg);
    json runs = json::array();
    for (ModelKind kind : expand(sc.model)) {
        const fs::path csv = csv_destination(opt, cfg, kind);
        ModelRun run;
        try {
            ScenarioSpec one = sc;
            one.model = kind == ModelKind::Tmia ? ModelChoice::Tmia : ModelChoice::Tmiia;
            run = std::move(run_scenario(one).front());
        } catch (const TruncationError& e) {
            if (e.partial.size() > 0) {
                emit_trajectory_csv(e.partial, csv);
                err << "partial trajectory written to " << csv.string() << "\n";
            }
            throw;
        }
        emit_trajectory_csv(run.trajectory, csv);
        runs.push_back({{"model", to_string(kind)},
                        {"csv", csv.string()},
                        {"samples", run.trajectory.size()},
                        {"initial", to_json(run.initial)},
                        {"prediction", to_json(run.prediction)}});
    }
    doc["runs"] = runs;
    write_json(doc, json_destination(opt, cfg), out);
    return kExitOk;
}

int cmd_compare(const Options& opt, const RunConfig& cfg, std::ostream& out)
{
    json doc = header("compare", cfg);
    doc["table"] = to_json(compare_models(cfg.scenario, cfg.compare));
    write_json(doc, json_destination(opt, cfg), out);
    return kExitOk;
}

int cmd_sweep(const Options& opt, const RunConfig& cfg, std::ostream& out)
{
    const ReferencePoint& ref = reference_point(cfg.scenario.demand);
    json doc = header("sweep", cfg);
    json records = json::array();
    for (ModelKind kind : expand(cfg.scenario.model)) {
        for (const auto& rec : run_sweep(generate_draws(kind, cfg.sweep, ref), cfg.sweep)) {
            records.push_back(to_json(rec));
        }
    }
    doc["records"] = records;
    write_json(doc, json_destination(opt, cfg), out);
    return kExitOk;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Continuous-time macro model runner", "tobin"};
    app.require_subcommand(1);
    Options opt;

    const std::pair<const char*, const char*> commands[] = {
        {"stability", "Linearize at the pre-shock rest point and classify stability"},
        {"simulate", "Integrate the scenario and write CSV trajectories and a prediction report"},
        {"compare", "Run both models and tabulate signs and policy effectiveness"},
        {"sweep", "Random-parameter stability and sign sweep"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", opt.config, "Scenario config file (YAML)")->required();
        sub->add_option("--model", opt.model, "Override the model: TMIA, TMIIA or both");
        sub->add_option("--horizon", opt.horizon, "Override run.horizon");
        sub->add_option("--json", opt.json, "Write the JSON report here instead of stdout");
        if (std::string_view(name) == "simulate") {
            sub->add_option("--csv", opt.csv, "CSV trajectory path");
        }
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        RunConfig cfg = load_config(opt.config);
        apply_overrides(cfg, opt.model, opt.horizon);
        for (const auto& w : cfg.warnings) {
            err << "warning: " << w << "\n";
        }
        if (command == "stability") return cmd_stability(opt, cfg, out);
        if (command == "simulate") return cmd_simulate(opt, cfg, out, err);
        if (command == "compare") return cmd_compare(opt, cfg, out);
        return cmd_sweep(opt, cfg, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        err << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

} // namespace tobin
