#pragma once

#include "tobin/config.hpp"
#include "tobin/integrate.hpp"
#include "tobin/scenario.hpp"
#include "tobin/stability.hpp"
#include "tobin/sweep.hpp"

#include <json.hpp>

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace tobin {

using json = nlohmann::ordered_json;

/// Resolved configuration in the same key layout the parser reads.
json to_json(const RunConfig& config);
json to_json(const StabilityReport& report);
json to_json(const PredictionReport& report);
json to_json(const ComparisonTable& table);
json to_json(const SweepRecord& record);
json to_json(const MacroState& s);

inline constexpr const char* kCsvHeader = "t,Y,p,x,r,pi,Ystar,G,mu";

/// Writes the header and one row per sample, 17 significant digits per value.
/// Returns the number of bytes written.
std::size_t emit_trajectory_csv(const Trajectory& traj, std::ostream& out);
/// Throws IoError when the file cannot be written.
std::size_t emit_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);

/// Inverse of emit_trajectory_csv. Throws InputError on a malformed document.
Trajectory parse_trajectory_csv(std::istream& in);

} // namespace tobin
