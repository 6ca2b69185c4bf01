#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <yaml-cpp/yaml.h>

#include <logsplit/checksum.hpp>
#include <logsplit/coeff_io.hpp>
#include <logsplit/errors.hpp>
#include <logsplit/gagliardo.hpp>
#include <logsplit/harness.hpp>
#include <logsplit/property_suite.hpp>
#include <logsplit/trajectory_io.hpp>

#include "config.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace logsplit;

namespace {

enum Exit : int { kOk = 0, kConfig = 2, kNumerical = 3, kViolation = 4 };

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

/// Collects what a run produced and writes manifest.json last.
class Manifest {
public:
  Manifest(std::string command, json config)
      : command_(std::move(command)), config_(std::move(config)), started_(utc_now()) {}

  void seed(const std::string &name, std::uint64_t value) { seeds_[name] = value; }
  void note(const std::string &key, json value) { notes_[key] = std::move(value); }

  /// Writes `contents` atomically under `dir` and records its checksum.
  void emit(const fs::path &dir, const std::string &name, const std::string &contents) {
    write_file_atomic(dir / name, contents);
    artifacts_[name] = sha256_hex(std::string_view(contents));
  }
  void adopt(const fs::path &dir, const std::string &name) {
    artifacts_[name] = sha256_file(dir / name);
  }

  std::string run_id() const {
    return sha256_hex(std::string_view(command_ + config_.dump())).substr(0, 16);
  }

  json to_json() const {
    json j;
    j["run_id"] = run_id();
    j["command"] = command_;
    j["version"] = version();
    j["config"] = config_;
    j["seeds"] = seeds_;
    j["artifacts"] = artifacts_;
    j["started_utc"] = started_;
    j["finished_utc"] = utc_now();
    if (!notes_.empty())
      j["notes"] = notes_;
    return j;
  }

  void write(const fs::path &dir) const {
    write_file_atomic(dir / "manifest.json", to_json().dump(2) + "\n");
  }

private:
  std::string command_;
  json config_;
  std::string started_;
  json seeds_ = json::object();
  json artifacts_ = json::object();
  json notes_ = json::object();
};

template <class Fn> std::string to_text(Fn &&fn) {
  std::ostringstream os;
  fn(os);
  return os.str();
}

std::string profiles_csv(const std::vector<const Snapshot *> &snaps, const std::string &source) {
  std::ostringstream os;
  os << "source,t,x,re,im\n";
  os.precision(17);
  for (const Snapshot *s : snaps) {
    const PhysicalField u = synthesize(s->field, 4);
    const TorusGrid &g = u.grid();
    for (int j = 0; j < g.nodes_per_dim(); ++j) {
      const cplx z = u[static_cast<std::size_t>(j)];
      os << source << ',' << s->time << ',' << g.node(j) << ',' << z.real() << ','
         << z.imag() << '\n';
    }
  }
  return os.str();
}

// ------------------------------------------------------------------- run

int cmd_run(const fs::path &config_path, const fs::path &out) {
  const cli::ToolConfig c = cli::load_config(config_path);
  const SolverConfig sc = cli::make_solver_config(c);
  const InitialData u0 = cli::make_initial_data(c);
  const Trajectory traj = run(u0, sc);

  Manifest m("run", c.echo());
  m.seed("data", c.seed);
  json extra = m.to_json();
  extra.erase("artifacts");
  fs::create_directories(out);
  write_trajectory(out, traj, m.run_id(), extra.dump());
  const MassReport mr = mass_report(traj);
  std::cout << "run " << m.run_id() << ": " << sc.step_count() << " steps, N=" << sc.N
            << ", mass drift " << std::setprecision(3) << mr.max_rel_drift << " -> "
            << out.string() << '\n';
  return kOk;
}

// -------------------------------------------------------------- converge

int cmd_converge(const fs::path &config_path, const fs::path &out, int workers) {
  const cli::ToolConfig c = cli::load_config(config_path);
  const SweepSpec spec = cli::make_sweep_spec(c, workers);
  const InitialData u0 = cli::make_initial_data(c);
  const ErrorTable table = run_sweep(u0, spec);

  fs::create_directories(out);
  Manifest m("converge", c.echo());
  m.seed("data", c.seed);
  m.note("normalization", table.normalization);
  m.emit(out, "errors.csv", to_text([&](std::ostream &os) { write_errors_csv(os, table); }));
  m.emit(out, "orders.csv", to_text([&](std::ostream &os) { write_orders_csv(os, table); }));
  m.emit(out, "mass_trace.csv",
         to_text([&](std::ostream &os) { write_mass_csv(os, table.finest); }));

  std::vector<const Snapshot *> snaps;
  std::string source = "finest";
  for (double t : spec.measure_times) {
    const Snapshot &fine = table.finest.at(t);
    snaps.push_back(table.reference ? &table.reference->at(fine.time) : &fine);
  }
  if (table.reference)
    source = "reference";
  m.emit(out, "profiles.csv", profiles_csv(snaps, source));

  json masses = json::array();
  for (const RunMass &rm : table.masses)
    masses.push_back({{"tau", rm.tau},
                      {"N", rm.N},
                      {"max_rel_drift", rm.report.max_rel_drift},
                      {"monotone", rm.report.monotone_ok}});
  m.note("mass", masses);
  m.write(out);

  std::cout << std::fixed << std::setprecision(4);
  for (const OrderFit &f : table.orders)
    std::cout << "t=" << f.t << "  slope=" << f.slope << "  r2=" << f.r_squared << '\n';
  return kOk;
}

// -------------------------------------------------------------- proptest

int cmd_proptest(std::uint64_t seed, const PropertyCounts &counts, const fs::path &out) {
#ifdef LOGSPLIT_INJECT_FAULT
  constexpr bool fault = true;
#else
  constexpr bool fault = false;
#endif
  const PropertySuiteReport rep = property_suite(seed, counts, fault);

  json cfg{{"scalar_pairs", counts.scalar_pairs},
           {"fields", counts.fields},
           {"free_flow", counts.theorem21},
           {"fault_injection", fault}};
  Manifest m("proptest", cfg);
  m.seed("proptest", seed);
  fs::create_directories(out);
  m.emit(out, "props.csv", to_text([&](std::ostream &os) { write_props_csv(os, rep); }));
  m.note("seconds", rep.seconds);
  m.write(out);

  for (const PropertyResult &r : rep.results)
    std::cout << std::left << std::setw(28) << r.inequality << std::right << std::setw(8)
              << r.samples << "  worst margin " << std::scientific << std::setprecision(3)
              << r.worst_margin << std::defaultfloat << '\n';
  if (const PropertyResult *bad = rep.first_failure()) {
    std::cerr << "violation: " << bad->inequality << " failed " << bad->violations
              << " of " << bad->samples << " samples; worst input " << bad->worst_input
              << '\n';
    return kViolation;
  }
  std::cout << "all inequalities hold (" << std::fixed << std::setprecision(1)
            << rep.seconds << " s)\n";
  return kOk;
}

// ----------------------------------------------------------------- norms

struct NormsOptions {
  fs::path file;
  std::vector<double> s_list{0.8};
  std::optional<double> gamma;
  int ell = 0;
};

int cmd_norms(const NormsOptions &o, const fs::path &out) {
  const CoefficientFile cf = read_coefficients(o.file);
  const SpectralField &u = cf.field;
  const double torus = 2.0 * std::numbers::pi;

  std::ostringstream csv;
  csv << "s,l2,hs_norm,hs_seminorm,gagliardo,gagliardo_over_seminorm_sq,bound,bound_ok\n";
  csv.precision(17);
  bool all_ok = true;

  // Coefficients of |x|^γ recovered from |x|^γ e^{iℓx} by shifting back ℓ modes.
  std::optional<SpectralField> profile;
  if (o.gamma) {
    if (u.dim() != 1)
      throw ConfigError("--gamma needs a one-dimensional coefficient file");
    const int K = u.cutoff() - std::abs(o.ell);
    if (K < 1)
      throw ConfigError("coefficient file too short for the requested --ell");
    SpectralField p(1, K);
    for (int k = -K; k <= K; ++k)
      p(k) = u(k + o.ell);
    profile = std::move(p);
  }

  for (double s : o.s_list) {
    if (!(s >= 0.0 && s <= 2.0))
      throw DomainError("norm index s = " + std::to_string(s) + " outside [0, 2]");
    const double l2 = l2_norm(u);
    const double hn = hs_norm(u, s);
    const double hsn = hs_seminorm(u, s);
    double gag = std::nan("");
    double ratio = std::nan("");
    if (u.dim() == 1 && s > 0.0 && s < 1.0) {
      gag = gagliardo_seminorm_1d(u, s).double_integral;
      ratio = hsn > 0.0 ? gag / (hsn * hsn) : 0.0;
    }

    double bound = std::nan("");
    std::string ok = "";
    if (cf.header.beta > 0.5 && s <= cf.header.s + 1e-12) {
      bound = random_hs_norm_bound({s, cf.header.beta, 1, 0});
      const bool holds = hn * hn / torus <= bound * (1.0 + 1e-12);
      ok = holds ? "1" : "0";
      all_ok = all_ok && holds;
    }
    if (profile && s > 0.0 && s < *o.gamma) {
      const double g = *o.gamma;
      const double e = 2.0 * g - 2.0 * s + 1.0;
      const double value = gagliardo_seminorm_1d(*profile, s).double_integral;
      bound = std::pow(torus, e) / ((g - s) * e);
      gag = value;
      const bool holds = value <= bound * (1.0 + 1e-12);
      ok = holds ? "1" : "0";
      all_ok = all_ok && holds;
    }
    csv << s << ',' << l2 << ',' << hn << ',' << hsn << ',' << gag << ',' << ratio << ','
        << bound << ',' << ok << '\n';
  }

  if (out.empty()) {
    std::cout << csv.str();
  } else {
    fs::create_directories(out);
    json cfg{{"file", o.file.string()}, {"s", o.s_list}, {"ell", o.ell}};
    if (o.gamma)
      cfg["gamma"] = *o.gamma;
    Manifest m("norms", cfg);
    m.note("input_sha256", sha256_file(o.file));
    m.emit(out, "norms.csv", csv.str());
    m.write(out);
    std::cout << csv.str();
  }
  if (!all_ok) {
    std::cerr << "norm bound check failed\n";
    return kViolation;
  }
  return kOk;
}

// -------------------------------------------------------------- gen-data

int cmd_gen_data(const fs::path &config_path, const fs::path &out, int cutoff) {
  const cli::ToolConfig c = cli::load_config(config_path);
  const InitialData u0 = cli::make_initial_data(c);

  SpectralField field;
  CoefficientHeader header;
  header.s = u0.hs_index;
  if (u0.coeffs) {
    field = *u0.coeffs;
  } else {
    field = gausson_coefficients(std::get<GaussonParams>(u0.params), 0.0, cutoff);
  }
  if (c.family == DataFamily::RandomHs) {
    header.seed = c.seed;
    header.beta = c.beta;
  }
  header.dim = field.dim();
  header.cutoff = field.cutoff();

  fs::create_directories(out);
  Manifest m("gen-data", c.echo());
  m.seed("data", c.seed);
  write_coefficients(out / "data.bin", field, header);
  m.adopt(out, "data.bin");
  m.emit(out, "data.csv",
         to_text([&](std::ostream &os) { write_coefficients_csv(os, field); }));

  YAML::Emitter card;
  card << YAML::BeginMap;
  for (const auto &[k, v] : u0.describe())
    card << YAML::Key << k << YAML::Value << v;
  card << YAML::Key << "cutoff" << YAML::Value << field.cutoff();
  card << YAML::Key << "data_sha256" << YAML::Value << sha256_file(out / "data.bin");
  card << YAML::EndMap;
  m.emit(out, "datacard.yaml", std::string(card.c_str()) + "\n");
  m.write(out);
  std::cout << family_name(u0.family) << " data, K=" << field.cutoff() << ", ‖u0‖_H^"
            << u0.hs_index << " = " << std::setprecision(8) << u0.hs_norm << " -> "
            << out.string() << '\n';
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Lie-Trotter Fourier spectral solver for the logarithmic Schrodinger "
               "equation on the torus"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));

  const unsigned hw = std::thread::hardware_concurrency();
  int workers = hw == 0 ? 1 : static_cast<int>(hw);
  app.add_option("-j,--jobs", workers, "Worker threads for sweeps")->check(CLI::PositiveNumber);

  fs::path config_path;
  fs::path out = ".";

  auto *run_cmd = app.add_subcommand("run", "Integrate one trajectory");
  run_cmd->add_option("config", config_path, "YAML configuration")->required();
  run_cmd->add_option("-o,--out", out, "Output directory");

  auto *conv = app.add_subcommand("converge", "Sweep step sizes and fit convergence orders");
  conv->add_option("config", config_path, "YAML configuration")->required();
  conv->add_option("-o,--out", out, "Output directory");

  std::uint64_t seed = 1;
  PropertyCounts counts;
  auto *prop = app.add_subcommand("proptest", "Randomized inequality checks");
  prop->add_option("--seed", seed, "Generator seed");
  prop->add_option("--pairs", counts.scalar_pairs, "Scalar pairs")->check(CLI::NonNegativeNumber);
  prop->add_option("--fields", counts.fields, "Random fields")->check(CLI::NonNegativeNumber);
  prop->add_option("--free-flow", counts.theorem21, "Free-flow bound samples")
      ->check(CLI::NonNegativeNumber);
  prop->add_option("-o,--out", out, "Output directory");

  NormsOptions norms;
  fs::path norms_out;
  auto *norms_cmd = app.add_subcommand("norms", "Norm report of a coefficient file");
  norms_cmd->add_option("file", norms.file, "Coefficient file (.bin)")->required();
  norms_cmd->add_option("-s", norms.s_list, "Sobolev indices")->expected(1, -1);
  norms_cmd->add_option("--gamma", norms.gamma, "Check the bound for |x|^gamma data");
  norms_cmd->add_option("--ell", norms.ell, "Phase wavenumber of the power data");
  norms_cmd->add_option("-o,--out", norms_out, "Write norms.csv and a manifest here");

  int gen_cutoff = 256;
  auto *gen = app.add_subcommand("gen-data", "Write an initial-data coefficient file");
  gen->add_option("config", config_path, "YAML configuration")->required();
  gen->add_option("-o,--out", out, "Output directory");
  gen->add_option("--cutoff", gen_cutoff, "Cutoff for data given by a formula")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run_cmd)
      return cmd_run(config_path, out);
    if (*conv)
      return cmd_converge(config_path, out, workers);
    if (*prop)
      return cmd_proptest(seed, counts, out);
    if (*norms_cmd)
      return cmd_norms(norms, norms_out);
    if (*gen)
      return cmd_gen_data(config_path, out, gen_cutoff);
  } catch (const NumericalAbort &e) {
    std::cerr << "numerical abort: " << e.what() << '\n';
    return kNumerical;
  } catch (const NonFiniteError &e) {
    std::cerr << "numerical abort: " << e.what() << '\n';
    return kNumerical;
  } catch (const QuadratureError &e) {
    std::cerr << "quadrature failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const ConfigError &e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfig;
  } catch (const DomainError &e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfig;
  } catch (const FormatError &e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kConfig;
  } catch (const YAML::Exception &e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfig;
  } catch (const fs::filesystem_error &e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kConfig;
  }
  return kOk;
}
