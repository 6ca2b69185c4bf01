#include "config.hpp"

#include <cmath>
#include <map>
#include <regex>
#include <set>

#include <yaml-cpp/yaml.h>

#include <logsplit/errors.hpp>

namespace logsplit::cli {

namespace {

std::string where(const YAML::Node &node, const std::string &key) {
  return "key '" + key + "' (line " + std::to_string(node.Mark().line + 1) + ")";
}

// Plain YAML numbers, plus the shorthand 2^-k for dyadic step sizes.
double as_number(const YAML::Node &node, const std::string &key) {
  if (!node.IsScalar())
    throw ConfigError(where(node, key) + ": expected a number");
  const std::string text = node.Scalar();
  static const std::regex dyadic(R"(^\s*2\s*\^\s*\(?\s*(-?\d+)\s*\)?\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, dyadic))
    return std::ldexp(1.0, std::stoi(m[1].str()));
  try {
    return node.as<double>();
  } catch (const YAML::Exception &) {
    throw ConfigError(where(node, key) + ": '" + text + "' is not a number");
  }
}

long as_integer(const YAML::Node &node, const std::string &key) {
  const double v = as_number(node, key);
  if (v != std::floor(v) || std::abs(v) > 9.0e15)
    throw ConfigError(where(node, key) + ": expected an integer");
  return static_cast<long>(v);
}

std::vector<double> as_numbers(const YAML::Node &node, const std::string &key) {
  if (!node.IsSequence())
    throw ConfigError(where(node, key) + ": expected a list of numbers");
  std::vector<double> out;
  for (const auto &item : node)
    out.push_back(as_number(item, key));
  return out;
}

std::string as_string(const YAML::Node &node, const std::string &key) {
  if (!node.IsScalar())
    throw ConfigError(where(node, key) + ": expected a string");
  return node.Scalar();
}

void require_positive(double v, const YAML::Node &node, const std::string &key) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw ConfigError(where(node, key) + ": must be positive");
}

} // namespace

double ToolConfig::hs_index() const {
  if (s)
    return *s;
  switch (family) {
  case DataFamily::PowerSingular:
    return gamma + 0.5;
  case DataFamily::Gausson:
    return 0.0;
  default:
    return 0.8;
  }
}

nlohmann::json ToolConfig::echo() const {
  nlohmann::json j;
  j["family"] = family_name(family);
  j["lambda"] = lambda;
  j["tau"] = tau;
  j["T"] = T;
  j["N"] = N;
  j["q"] = q;
  j["eps"] = eps;
  j["measure_times"] = measure_times;
  j["snapshot_times"] = snapshot_times;
  j["taus"] = taus;
  j["coupling"] = coupling == Coupling::Fixed ? "fixed" : "inverse_sqrt";
  j["reference"] = {
      {"mode", reference_mode == ReferenceMode::ExactGausson ? "exact" : "numeric"},
      {"tau", reference_tau},
      {"N", reference_N}};
  j["s"] = hs_index();
  switch (family) {
  case DataFamily::Gausson:
    j["b"] = b;
    break;
  case DataFamily::RandomHs:
    j["seed"] = seed;
    j["K"] = K;
    j["beta"] = beta;
    break;
  case DataFamily::PowerSingular:
    j["gamma"] = gamma;
    j["ell"] = ell;
    j["K"] = K;
    break;
  case DataFamily::CoefficientFile:
    j["data"] = data.string();
    break;
  }
  return j;
}

ToolConfig load_config(const std::filesystem::path &path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path.string());
  } catch (const YAML::BadFile &) {
    throw ConfigError("cannot read configuration file " + path.string());
  } catch (const YAML::Exception &e) {
    throw ConfigError("configuration parse error at line " +
                      std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (!root.IsMap())
    throw ConfigError("configuration must be a key/value mapping");

  static const std::set<std::string> known = {
      "family", "lambda", "b",     "tau",  "T",    "N",     "q",
      "eps",    "seed",   "K",     "s",    "beta", "gamma", "ell",
      "data",   "taus",   "measure_times", "snapshot_times", "coupling",
      "reference"};
  for (const auto &kv : root) {
    const std::string key = kv.first.as<std::string>();
    if (!known.contains(key))
      throw ConfigError("unknown " + where(kv.first, key));
  }

  ToolConfig c;
  if (!root["family"])
    throw ConfigError("missing required key 'family'");
  static const std::map<std::string, DataFamily> families = {
      {"gausson", DataFamily::Gausson},
      {"random_hs", DataFamily::RandomHs},
      {"power", DataFamily::PowerSingular},
      {"file", DataFamily::CoefficientFile}};
  const std::string fam = as_string(root["family"], "family");
  const auto it = families.find(fam);
  if (it == families.end())
    throw ConfigError(where(root["family"], "family") + ": unknown family '" + fam +
                      "' (gausson, random_hs, power, file)");
  c.family = it->second;

  // Family-dependent defaults.
  const bool gausson = c.family == DataFamily::Gausson;
  c.lambda = gausson ? -16.0 : -1.0;
  c.coupling = gausson ? Coupling::Fixed : Coupling::InverseSqrt;
  c.reference_mode = gausson ? ReferenceMode::ExactGausson : ReferenceMode::Numeric;
  c.K = c.family == DataFamily::PowerSingular ? 4096 : 100000;
  c.snapshot_times.clear();

  const auto get = [&](const char *key) { return root[key]; };
  if (auto n = get("lambda")) {
    c.lambda = as_number(n, "lambda");
    if (c.lambda == 0.0 || !std::isfinite(c.lambda))
      throw ConfigError(where(n, "lambda") + ": must be finite and nonzero");
  }
  if (auto n = get("b"))
    c.b = as_number(n, "b");
  if (auto n = get("tau")) {
    c.tau = as_number(n, "tau");
    require_positive(c.tau, n, "tau");
  }
  if (auto n = get("T")) {
    c.T = as_number(n, "T");
    require_positive(c.T, n, "T");
  }
  if (auto n = get("N")) {
    c.N = static_cast<int>(as_integer(n, "N"));
    if (c.N < 1)
      throw ConfigError(where(n, "N") + ": must be >= 1");
  }
  if (auto n = get("q")) {
    c.q = static_cast<int>(as_integer(n, "q"));
    if (c.q < 1)
      throw ConfigError(where(n, "q") + ": must be >= 1");
  }
  if (auto n = get("eps")) {
    c.eps = as_number(n, "eps");
    if (!(c.eps >= 0.0) || !std::isfinite(c.eps))
      throw ConfigError(where(n, "eps") + ": must be >= 0");
  }
  if (auto n = get("seed")) {
    const long v = as_integer(n, "seed");
    if (v < 0)
      throw ConfigError(where(n, "seed") + ": must be >= 0");
    c.seed = static_cast<std::uint64_t>(v);
  }
  if (auto n = get("K")) {
    const long v = as_integer(n, "K");
    if (v < 1 || v > 1000000)
      throw ConfigError(where(n, "K") + ": must be in [1, 1000000]");
    c.K = static_cast<int>(v);
  }
  if (auto n = get("s"))
    c.s = as_number(n, "s");
  if (auto n = get("beta")) {
    c.beta = as_number(n, "beta");
    if (!(c.beta > 0.5))
      throw ConfigError(where(n, "beta") + ": must exceed 1/2");
  }
  if (auto n = get("gamma")) {
    c.gamma = as_number(n, "gamma");
    if (!(c.gamma > 0.0 && c.gamma <= 1.0))
      throw ConfigError(where(n, "gamma") + ": must lie in (0, 1]");
  }
  if (auto n = get("ell"))
    c.ell = static_cast<int>(as_integer(n, "ell"));
  if (auto n = get("data"))
    c.data = as_string(n, "data");
  if (auto n = get("taus")) {
    c.taus = as_numbers(n, "taus");
    if (c.taus.empty())
      throw ConfigError(where(n, "taus") + ": the list is empty");
    for (double t : c.taus)
      require_positive(t, n, "taus");
  }
  if (auto n = get("measure_times"))
    c.measure_times = as_numbers(n, "measure_times");
  if (auto n = get("snapshot_times"))
    c.snapshot_times = as_numbers(n, "snapshot_times");
  if (auto n = get("coupling")) {
    const std::string v = as_string(n, "coupling");
    if (v == "inverse_sqrt")
      c.coupling = Coupling::InverseSqrt;
    else if (v == "fixed")
      c.coupling = Coupling::Fixed;
    else
      throw ConfigError(where(n, "coupling") + ": expected inverse_sqrt or fixed");
  }
  if (auto ref = get("reference")) {
    if (!ref.IsMap())
      throw ConfigError(where(ref, "reference") + ": expected a mapping");
    for (const auto &kv : ref) {
      const std::string key = kv.first.as<std::string>();
      if (key != "mode" && key != "tau" && key != "N")
        throw ConfigError("unknown " + where(kv.first, "reference." + key));
    }
    if (auto n = ref["mode"]) {
      const std::string v = as_string(n, "reference.mode");
      if (v == "exact")
        c.reference_mode = ReferenceMode::ExactGausson;
      else if (v == "numeric")
        c.reference_mode = ReferenceMode::Numeric;
      else
        throw ConfigError(where(n, "reference.mode") + ": expected exact or numeric");
    }
    if (auto n = ref["tau"]) {
      c.reference_tau = as_number(n, "reference.tau");
      require_positive(c.reference_tau, n, "reference.tau");
    }
    if (auto n = ref["N"]) {
      c.reference_N = static_cast<int>(as_integer(n, "reference.N"));
      if (c.reference_N < 1)
        throw ConfigError(where(n, "reference.N") + ": must be >= 1");
    }
  }

  if (c.family == DataFamily::CoefficientFile && c.data.empty())
    throw ConfigError("family 'file' needs the 'data' key");
  if (c.reference_mode == ReferenceMode::ExactGausson && !gausson)
    throw ConfigError("reference.mode 'exact' is only available for gausson data");
  if (c.taus.empty() && !get("taus")) {
    const int last = c.reference_mode == ReferenceMode::ExactGausson ? 13 : 12;
    for (int j = 7; j <= last; ++j)
      c.taus.push_back(std::ldexp(1.0, -j));
  }
  if (c.snapshot_times.empty())
    c.snapshot_times = {c.T};
  return c;
}

InitialData make_initial_data(const ToolConfig &c) {
  switch (c.family) {
  case DataFamily::Gausson: {
    GaussonParams p;
    p.lambda = c.lambda;
    p.b = c.b;
    return make_gausson(p, c.hs_index());
  }
  case DataFamily::RandomHs: {
    RandomHsParams p;
    p.s = c.s.value_or(0.8);
    p.beta = c.beta;
    p.K = c.K;
    p.seed = c.seed;
    return make_random_hs(p);
  }
  case DataFamily::PowerSingular:
    return make_power_singular({c.gamma, c.ell}, c.K, c.hs_index());
  case DataFamily::CoefficientFile:
    return load_coefficient_data(c.data, c.hs_index());
  }
  throw ConfigError("unhandled data family");
}

SolverConfig make_solver_config(const ToolConfig &c) {
  SolverConfig s;
  s.lambda = c.lambda;
  s.tau = c.tau;
  s.T = c.T;
  s.N = c.N;
  s.oversample = c.q;
  s.eps = c.eps;
  s.snapshot_times = c.snapshot_times;
  s.validate();
  return s;
}

SweepSpec make_sweep_spec(const ToolConfig &c, int workers) {
  SweepSpec sp;
  sp.taus = c.taus;
  sp.coupling = c.coupling;
  sp.fixed_N = c.N;
  sp.measure_times = c.measure_times;
  sp.reference = c.reference_mode;
  sp.tau_ref = c.reference_tau;
  sp.N_ref = c.reference_N;
  sp.lambda = c.lambda;
  sp.T = c.T;
  sp.oversample = c.q;
  sp.eps = c.eps;
  sp.workers = workers;
  sp.validate();
  return sp;
}

} // namespace logsplit::cli
