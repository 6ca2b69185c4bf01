#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <logsplit/harness.hpp>
#include <logsplit/initdata.hpp>
#include <logsplit/splitting.hpp>

namespace logsplit::cli {

/// Resolved contents of a run/converge/gen-data configuration file.
struct ToolConfig {
  DataFamily family = DataFamily::Gausson;
  double lambda = -1.0;
  double b = 1.0;
  double tau = 1e-3;
  double T = 1.0;
  int N = 200;
  int q = 4;
  double eps = 0.0;
  std::uint64_t seed = 42;
  int K = 100000;
  std::optional<double> s;
  double beta = 0.51;
  double gamma = 0.3;
  int ell = 2;
  std::filesystem::path data;
  std::vector<double> taus;
  std::vector<double> measure_times{0.4, 0.7, 1.0};
  std::vector<double> snapshot_times;
  Coupling coupling = Coupling::InverseSqrt;
  ReferenceMode reference_mode = ReferenceMode::Numeric;
  double reference_tau = 0x1.0p-16;
  int reference_N = 256;

  /// Sobolev index for normalisation: explicit `s`, else the family default.
  double hs_index() const;
  nlohmann::json echo() const;
};

/// Parses a YAML file. Unknown keys, wrong types and out-of-range values
/// raise ConfigError with the key and line number.
ToolConfig load_config(const std::filesystem::path &path);

InitialData make_initial_data(const ToolConfig &c);
SolverConfig make_solver_config(const ToolConfig &c);
SweepSpec make_sweep_spec(const ToolConfig &c, int workers);

} // namespace logsplit::cli
