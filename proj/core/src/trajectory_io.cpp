#include "logsplit/trajectory_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "logsplit/checksum.hpp"
#include "logsplit/coeff_io.hpp"
#include "logsplit/errors.hpp"

#ifndef LOGSPLIT_VERSION
#define LOGSPLIT_VERSION "0.0.0"
#endif

namespace logsplit {

using nlohmann::json;

namespace {

json config_json(const SolverConfig &c) {
  return json{{"lambda", c.lambda},
              {"tau", c.tau},
              {"T", c.T},
              {"N", c.N},
              {"q", c.oversample},
              {"eps", c.eps},
              {"dim", c.dim},
              {"mass_stride", c.mass_stride},
              {"snapshot_times", c.snapshot_times}};
}

SolverConfig config_from_json(const json &j) {
  SolverConfig c;
  c.lambda = j.at("lambda").get<double>();
  c.tau = j.at("tau").get<double>();
  c.T = j.at("T").get<double>();
  c.N = j.at("N").get<int>();
  c.oversample = j.at("q").get<int>();
  c.eps = j.at("eps").get<double>();
  c.dim = j.at("dim").get<int>();
  c.mass_stride = j.at("mass_stride").get<int>();
  c.snapshot_times = j.at("snapshot_times").get<std::vector<double>>();
  return c;
}

std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw FormatError("cannot open " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

} // namespace

const char *version() noexcept { return LOGSPLIT_VERSION; }

std::string config_fingerprint(const SolverConfig &config) {
  return config_json(config).dump();
}

void write_mass_csv(std::ostream &out, const Trajectory &traj) {
  out << "step,t,mass,mass_over_initial,mass_sq\n";
  const auto old = out.precision(17);
  const double m0 = traj.mass_trace.empty() ? 1.0 : traj.mass_trace.front().mass;
  for (const MassSample &m : traj.mass_trace)
    out << m.step << ',' << m.time << ',' << m.mass << ','
        << (m0 > 0.0 ? m.mass / m0 : 1.0) << ',' << m.mass * m.mass << '\n';
  out.precision(old);
}

std::filesystem::path write_trajectory(const std::filesystem::path &dir,
                                       const Trajectory &traj,
                                       const std::string &run_id,
                                       const std::string &extra_json) {
  std::filesystem::create_directories(dir);
  json manifest;
  manifest["run_id"] = run_id;
  manifest["version"] = version();
  manifest["config"] = config_json(traj.config);
  if (!extra_json.empty())
    manifest["extra"] = json::parse(extra_json);

  json snaps = json::array();
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    const Snapshot &s = traj.snapshots[i];
    std::ostringstream bin;
    CoefficientHeader h;
    h.dim = s.field.dim();
    h.cutoff = s.field.cutoff();
    write_coefficients(bin, s.field, h);
    const std::string bytes = bin.str();
    const std::string name = "snapshot_" + std::to_string(i) + ".bin";
    write_file_atomic(dir / name, bytes);
    snaps.push_back(json{{"time", s.time},
                         {"step", s.step},
                         {"file", name},
                         {"sha256", sha256_hex(std::string_view(bytes))}});
  }
  manifest["snapshots"] = snaps;

  std::ostringstream mass;
  write_mass_csv(mass, traj);
  write_file_atomic(dir / "mass.csv", mass.str());
  manifest["mass_csv"] = json{{"file", "mass.csv"},
                              {"sha256", sha256_hex(std::string_view(mass.str()))}};

  const auto path = dir / "manifest.json";
  write_file_atomic(path, manifest.dump(2) + "\n");
  return path;
}

Trajectory read_trajectory(const std::filesystem::path &dir) {
  json manifest;
  try {
    manifest = json::parse(slurp(dir / "manifest.json"));
  } catch (const json::exception &e) {
    throw FormatError("malformed manifest in " + dir.string() + ": " + e.what());
  }
  Trajectory traj;
  try {
    traj.config = config_from_json(manifest.at("config"));
    for (const json &s : manifest.at("snapshots")) {
      const auto file = dir / s.at("file").get<std::string>();
      const std::string bytes = slurp(file);
      if (sha256_hex(std::string_view(bytes)) != s.at("sha256").get<std::string>())
        throw FormatError("checksum mismatch for " + file.string());
      std::istringstream in(bytes);
      CoefficientFile cf = read_coefficients(in);
      traj.snapshots.push_back(
          {s.at("time").get<double>(), s.at("step").get<long>(), std::move(cf.field)});
    }
    const auto mass_file = dir / manifest.at("mass_csv").at("file").get<std::string>();
    const std::string mass = slurp(mass_file);
    if (sha256_hex(std::string_view(mass)) !=
        manifest.at("mass_csv").at("sha256").get<std::string>())
      throw FormatError("checksum mismatch for " + mass_file.string());
    std::istringstream in(mass);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      if (line.empty())
        continue;
      std::istringstream row(line);
      MassSample m;
      char comma = 0;
      row >> m.step >> comma >> m.time >> comma >> m.mass;
      if (!row)
        throw FormatError("malformed mass row in " + mass_file.string());
      traj.mass_trace.push_back(m);
    }
  } catch (const json::exception &e) {
    throw FormatError("malformed manifest in " + dir.string() + ": " + e.what());
  }
  return traj;
}

} // namespace logsplit
