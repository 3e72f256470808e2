#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

#include "mode_solver.hpp"
#include "numfmt.hpp"
#include "shear.hpp"

namespace hprandtl {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::string t = s;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream in(t);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError(key + " expects a number, got '" + v + "'");
  }
  return out;
}

long long to_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError(key + " expects an integer, got '" + v + "'");
  }
  return out;
}

double positive(const std::string& key, double v) {
  if (!(v > 0.0)) throw ConfigError(key + " must be positive");
  return v;
}

CheckFlags parse_checks(const std::string& v) {
  CheckFlags f;
  for (const auto& name : split_list(v)) {
    if (name == "none") continue;
    if (name == "all") {
      f = {true, true, true, true, true, true};
    } else if (name == "gronwall") {
      f.gronwall = true;
    } else if (name == "psi_gronwall") {
      f.psi_gronwall = true;
    } else if (name == "omega_energy") {
      f.omega_energy = true;
    } else if (name == "psi_gevrey") {
      f.psi_gevrey = true;
    } else if (name == "theorem") {
      f.theorem = true;
    } else if (name == "psi_growth") {
      f.psi_growth = true;
    } else {
      throw ConfigError("unknown check '" + name +
                        "' (expected gronwall, psi_gronwall, omega_energy, psi_gevrey, theorem, psi_growth, all, none)");
    }
  }
  return f;
}

std::string format_checks(const CheckFlags& f) {
  std::vector<std::string> names;
  if (f.gronwall) names.push_back("gronwall");
  if (f.psi_gronwall) names.push_back("psi_gronwall");
  if (f.omega_energy) names.push_back("omega_energy");
  if (f.psi_gevrey) names.push_back("psi_gevrey");
  if (f.theorem) names.push_back("theorem");
  if (f.psi_growth) names.push_back("psi_growth");
  if (names.empty()) return "none";
  std::string out = names[0];
  for (std::size_t i = 1; i < names.size(); ++i) out += "," + names[i];
  return out;
}

template <class T, class F>
std::string join(const std::vector<T>& v, F fmt) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + fmt(v[i]);
  return out;
}

void set_value(RunConfig& cfg, const std::string& key, const std::string& v) {
  if (key == "model") {
    if (v == "hyperbolic") cfg.model = ModelSelection::hyperbolic;
    else if (v == "classical") cfg.model = ModelSelection::classical;
    else if (v == "both") cfg.model = ModelSelection::both;
    else throw ConfigError("model must be hyperbolic, classical or both, got '" + v + "'");
  } else if (key == "shear") {
    try {
      auto [name, params] = parse_shear_spec(v);
      cfg.shear_name = name;
      cfg.shear_params = params;
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  } else if (key == "grid_n") {
    const auto n = to_int(key, v);
    if (n < 3 || n > 1'000'000) throw ConfigError("grid_n must be in [3, 1000000]");
    cfg.grid_n = static_cast<int>(n);
  } else if (key == "dt") {
    if (v == "auto") cfg.dt.reset();
    else cfg.dt = positive(key, to_double(key, v));
  } else if (key == "t_end") {
    cfg.t_end = positive(key, to_double(key, v));
  } else if (key == "K") {
    const auto k = to_int(key, v);
    if (k < 0 || k > 100'000) throw ConfigError("K must be in [0, 100000]");
    cfg.K = static_cast<int>(k);
  } else if (key == "k_list") {
    cfg.k_list.clear();
    for (const auto& tok : split_list(v)) cfg.k_list.push_back(static_cast<int>(to_int(key, tok)));
  } else if (key == "sigma") {
    cfg.sigma = positive(key, to_double(key, v));
  } else if (key == "data_shape") {
    try {
      cfg.shape = parse_data_shape(v);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  } else if (key == "seed") {
    std::uint64_t s = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
    if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError("seed expects an unsigned integer");
    cfg.seed = s;
  } else if (key == "checks") {
    cfg.checks = parse_checks(v);
  } else if (key == "output_dir") {
    if (v.empty()) throw ConfigError("output_dir must not be empty");
    cfg.output_dir = v;
  } else if (key == "workers") {
    if (v == "auto") {
      cfg.workers = 0;
    } else {
      const auto w = to_int(key, v);
      if (w < 1 || w > 1024) throw ConfigError("workers must be auto or in [1, 1024]");
      cfg.workers = static_cast<int>(w);
    }
  } else if (key == "sample_stride") {
    if (v == "auto") {
      cfg.sample_stride = 0;
    } else {
      const auto s = to_int(key, v);
      if (s < 1) throw ConfigError("sample_stride must be auto or >= 1");
      cfg.sample_stride = static_cast<int>(s);
    }
  } else if (key == "tau") {
    cfg.tau.clear();
    for (const auto& tok : split_list(v)) cfg.tau.push_back(positive(key, to_double(key, tok)));
  } else if (key == "gronwall_trials") {
    const auto n = to_int(key, v);
    if (n < 0) throw ConfigError("gronwall_trials must be >= 0");
    cfg.gronwall_trials = static_cast<int>(n);
  } else if (key == "gronwall_T") {
    cfg.gronwall_T = positive(key, to_double(key, v));
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

std::pair<std::string, std::string> split_assignment(const std::string& line, const std::string& where) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
  std::string key = trim(line.substr(0, eq));
  if (key.empty()) throw ConfigError(where + ": missing key before '='");
  return {key, trim(line.substr(eq + 1))};
}

}  // namespace

std::string to_string(ModelSelection m) {
  switch (m) {
    case ModelSelection::hyperbolic: return "hyperbolic";
    case ModelSelection::classical: return "classical";
    case ModelSelection::both: return "both";
  }
  return "?";
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value, const std::string& where) {
  try {
    set_value(cfg, key, value);
  } catch (const ConfigError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
  RunConfig cfg;
  std::map<std::string, int> seen;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    auto [key, value] = split_assignment(line, where);
    if (const auto it = seen.find(key); it != seen.end()) {
      throw ConfigError(where + ": duplicate key '" + key + "' (first set on line " + std::to_string(it->second) +
                        ")");
    }
    seen[key] = line_no;
    apply_setting(cfg, key, value, where);
  }
  for (const auto& o : overrides) {
    const std::string where = "--set " + o;
    auto [key, value] = split_assignment(o, where);
    apply_setting(cfg, key, value, where);
    seen[key] = 0;
  }
  try {
    validate_config(cfg);
  } catch (const ConfigError& e) {
    // Point at the line that set dt when the stability check is the culprit.
    const std::string msg = e.what();
    if (msg.rfind("dt=", 0) == 0) {
      const auto it = seen.find("dt");
      if (it != seen.end()) {
        throw ConfigError((it->second > 0 ? "line " + std::to_string(it->second) : std::string("--set dt")) + ": " +
                          msg);
      }
    }
    throw;
  }
  return cfg;
}

void validate_config(const RunConfig& cfg) {
  try {
    (void)shear_sup_norms(cfg.shear_name, cfg.shear_params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.grid_n < 3) throw ConfigError("grid_n must be >= 3");
  if (!(cfg.t_end > 0.0)) throw ConfigError("t_end must be positive");
  if (!(cfg.sigma > 0.0)) throw ConfigError("sigma must be positive");
  if (cfg.K < 0) throw ConfigError("K must be >= 0");
  for (int k : cfg.k_list) {
    if (std::abs(k) > cfg.K) throw ConfigError("k_list entry " + std::to_string(k) + " lies outside -K..K");
  }
  std::vector<int> sorted = cfg.k_list;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConfigError("k_list contains a repeated frequency");
  }
  const auto sup = shear_sup_norms(cfg.shear_name, cfg.shear_params);
  const double limit = cfl_limit(cfg.K, sup[0], sup[1]);
  if (cfg.dt && *cfg.dt > limit * (1.0 + 1e-12)) {
    throw ConfigError("dt=" + format_double(*cfg.dt) + " exceeds the stability limit " + format_double(limit) +
                      " for |k| = " + std::to_string(cfg.K));
  }
  if (cfg.checks.omega_energy) {
    const double dt = resolved_dt(cfg);
    for (double tau : cfg.tau) {
      if (tau > cfg.t_end * (1.0 + 1e-12)) {
        throw ConfigError("tau=" + format_double(tau) + " exceeds t_end=" + format_double(cfg.t_end));
      }
      const double steps = tau / dt;
      if (std::abs(steps - std::round(steps)) > 1e-6) {
        throw ConfigError("tau=" + format_double(tau) + " is not a multiple of dt=" + format_double(dt));
      }
    }
  }
}

std::vector<int> frequencies(const RunConfig& cfg) {
  std::vector<int> ks = cfg.k_list;
  if (ks.empty()) {
    for (int k = -cfg.K; k <= cfg.K; ++k) ks.push_back(k);
  }
  std::sort(ks.begin(), ks.end());
  return ks;
}

double resolved_dt(const RunConfig& cfg) {
  const auto sup = shear_sup_norms(cfg.shear_name, cfg.shear_params);
  const double limit = cfl_limit(cfg.K, sup[0], sup[1]);
  double requested = cfg.dt.value_or(std::min(1e-3, limit));
  if (!cfg.dt) {
    const double n = std::ceil(1.0 / requested / 100.0 - 1e-9) * 100.0;
    requested = 1.0 / n;
  }
  // Stepping to exactly t_end rounds the step down to t_end / steps.
  const double steps = std::ceil(cfg.t_end / requested - 1e-9);
  return cfg.t_end / steps;
}

int resolved_stride(const RunConfig& cfg) {
  if (cfg.sample_stride > 0) return cfg.sample_stride;
  const long steps = std::lround(cfg.t_end / resolved_dt(cfg));
  return static_cast<int>(std::max(1L, steps / 200));
}

int resolved_workers(const RunConfig& cfg) {
  if (cfg.workers > 0) return cfg.workers;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::string format_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "model = " << to_string(cfg.model) << "\n";
  out << "shear = " << format_shear_spec(cfg.shear_name, cfg.shear_params) << "\n";
  out << "grid_n = " << cfg.grid_n << "\n";
  out << "dt = " << (cfg.dt ? format_double(*cfg.dt) : std::string("auto")) << "\n";
  out << "t_end = " << format_double(cfg.t_end) << "\n";
  out << "K = " << cfg.K << "\n";
  out << "k_list = " << join(cfg.k_list, [](int k) { return std::to_string(k); }) << "\n";
  out << "sigma = " << format_double(cfg.sigma) << "\n";
  out << "data_shape = " << to_string(cfg.shape) << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "checks = " << format_checks(cfg.checks) << "\n";
  out << "output_dir = " << cfg.output_dir << "\n";
  out << "workers = " << (cfg.workers > 0 ? std::to_string(cfg.workers) : std::string("auto")) << "\n";
  out << "sample_stride = " << (cfg.sample_stride > 0 ? std::to_string(cfg.sample_stride) : std::string("auto"))
      << "\n";
  out << "tau = " << join(cfg.tau, [](double v) { return format_double(v); }) << "\n";
  out << "gronwall_trials = " << cfg.gronwall_trials << "\n";
  out << "gronwall_T = " << format_double(cfg.gronwall_T) << "\n";
  return out.str();
}

}  // namespace hprandtl
