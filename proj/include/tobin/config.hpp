#pragma once

#include "tobin/scenario.hpp"
#include "tobin/sweep.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tobin {

struct OutputPaths {
    std::optional<std::string> csv;
    std::optional<std::string> json;
};

/// Fully resolved run configuration: every field is either read from the document or
/// filled from the default table in the README.
struct RunConfig {
    ScenarioSpec scenario;
    OutputPaths output;
    CompareOptions compare;
    SweepSpec sweep;
    /// Non-fatal findings, e.g. a demand coefficient with a non-default sign.
    std::vector<std::string> warnings;
};

/// Parses a YAML scenario document. Throws ConfigError on syntax errors (with the
/// line number), unknown keys, and constraint violations (naming the field).
RunConfig parse_config(std::string_view text);

/// Reads and parses a file. A missing or unreadable file is a ConfigError naming the path.
RunConfig load_config(const std::filesystem::path& path);

/// Command-line overrides. Throws ConfigError for an unknown model name or a bad horizon.
void apply_overrides(RunConfig& config, const std::optional<std::string>& model, const std::optional<double>& horizon);

ModelChoice parse_model_choice(std::string_view name);

} // namespace tobin
