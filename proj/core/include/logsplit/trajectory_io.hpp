#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "logsplit/splitting.hpp"

namespace logsplit {

/// Library version string, echoed into manifests.
const char *version() noexcept;

/// Canonical text form of a solver configuration (stable across runs).
std::string config_fingerprint(const SolverConfig &config);

/// Columns: step, t, mass, mass_over_initial, mass_sq.
void write_mass_csv(std::ostream &out, const Trajectory &traj);

/// Writes snapshot_<i>.bin files, mass.csv and finally manifest.json (atomic).
/// `run_id` and `extra_json` (a JSON object text, may be empty) are echoed.
/// Returns the manifest path.
std::filesystem::path write_trajectory(const std::filesystem::path &dir,
                                       const Trajectory &traj,
                                       const std::string &run_id,
                                       const std::string &extra_json = {});

/// Reads a directory written by write_trajectory. Throws FormatError when a
/// file is missing or a checksum does not match the manifest.
Trajectory read_trajectory(const std::filesystem::path &dir);

} // namespace logsplit
