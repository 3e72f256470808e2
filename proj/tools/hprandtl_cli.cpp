// Command-line front end over the C interface.
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "hprandtl/hprandtl.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitChecksFailed = 1;
constexpr int kExitError = 2;

struct ConfigDeleter {
  void operator()(hp_config* c) const { hp_config_free(c); }
};
struct RunDeleter {
  void operator()(hp_run* r) const { hp_run_free(r); }
};
using ConfigPtr = std::unique_ptr<hp_config, ConfigDeleter>;
using RunPtr = std::unique_ptr<hp_run, RunDeleter>;

struct Common {
  std::string config_path;
  std::vector<std::string> sets;
  std::string out_dir;
  bool quiet = false;
};

int report_error(const char* what) {
  std::cerr << "error: " << what << '\n';
  return kExitError;
}

/// Config file, then subcommand presets, then --set overrides in order.
ConfigPtr load_config(const Common& c, const std::vector<std::pair<std::string, std::string>>& presets) {
  std::string text;
  if (!c.config_path.empty()) {
    std::ifstream f(c.config_path);
    if (!f) throw std::runtime_error("cannot read config file '" + c.config_path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    text = buf.str();
  }
  hp_config* raw = nullptr;
  if (hp_config_parse(text.c_str(), &raw) != HP_OK) {
    throw std::runtime_error((c.config_path.empty() ? std::string() : c.config_path + ": ") + hp_last_error());
  }
  ConfigPtr cfg(raw);
  for (const auto& [k, v] : presets) {
    if (hp_config_set(cfg.get(), k.c_str(), v.c_str()) != HP_OK) throw std::runtime_error(hp_last_error());
  }
  for (const auto& s : c.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw std::runtime_error("--set expects key=value, got '" + s + "'");
    const std::string key = s.substr(0, eq);
    const std::string value = s.substr(eq + 1);
    if (hp_config_set(cfg.get(), key.c_str(), value.c_str()) != HP_OK) throw std::runtime_error(hp_last_error());
  }
  return cfg;
}

int finish(const Common& c, hp_run* raw) {
  RunPtr run(raw);
  if (hp_run_write_outputs(run.get(), c.out_dir.empty() ? nullptr : c.out_dir.c_str()) != HP_OK) {
    return report_error(hp_last_error());
  }
  if (!c.quiet) std::cout << hp_run_summary_json(run.get()) << '\n';
  return hp_run_all_checks_passed(run.get()) ? kExitPass : kExitChecksFailed;
}

using Runner = hp_status (*)(const hp_config*, hp_run**);

int run_with(const Common& c, const std::vector<std::pair<std::string, std::string>>& presets, Runner fn) {
  ConfigPtr cfg = load_config(c, presets);
  hp_run* run = nullptr;
  if (fn(cfg.get(), &run) != HP_OK) return report_error(hp_last_error());
  return finish(c, run);
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("-c,--config", c.config_path, "Flat key=value configuration file");
  sub->add_option("--set", c.sets, "Override one key (key=value); repeatable")->take_all();
  sub->add_option("-o,--out", c.out_dir, "Output directory (default: output_dir from the config)");
  sub->add_flag("-q,--quiet", c.quiet, "Do not print the run summary");
}

std::string fmt(double v) {
  if (std::isnan(v)) return "null";
  if (std::isinf(v)) return "\"inf\"";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability lab for the linearised hyperbolic and classical Prandtl mode systems"};
  app.set_version_flag("--version", std::string(hp_version()));
  app.require_subcommand(1);

  Common common;
  int k = 1;
  auto* simulate = app.add_subcommand("simulate", "Simulate a single Fourier mode");
  add_common(simulate, common);
  simulate->add_option("-k,--k", k, "Frequency")->required();

  auto* sweep = app.add_subcommand("sweep", "Simulate all modes of the configured frequency set");
  add_common(sweep, common);

  int trials = -1;
  std::string seed;
  auto* gronwall = app.add_subcommand("verify-gronwall", "Randomized check of the weighted Gronwall bound");
  add_common(gronwall, common);
  gronwall->add_option("--trials", trials, "Number of random trials");
  gronwall->add_option("--seed", seed, "Master seed");

  auto* aux = app.add_subcommand("verify-aux", "Backward energy, weighted Gronwall and growth bounds for psi");
  add_common(aux, common);

  auto* theorem = app.add_subcommand("verify-theorem", "Gevrey-3 estimates for psi and u on a full sweep");
  add_common(theorem, common);

  auto* compare = app.add_subcommand("compare", "Amplification scaling of both models on shared data");
  add_common(compare, common);

  double sigma = 8.0, t = 0.0;
  std::string shear = "poiseuille 4";
  auto* constants = app.add_subcommand("constants", "Lifespan, radii and explicit constants");
  constants->add_option("--sigma", sigma, "Gevrey radius")->check(CLI::PositiveNumber);
  constants->add_option("--shear", shear, "Shear flow, e.g. \"poiseuille 4\"");
  constants->add_option("-t,--t", t, "Time")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitError;
  }

  try {
    if (*simulate) {
      ConfigPtr cfg = load_config(common, {});
      hp_run* run = nullptr;
      if (hp_run_simulate_mode(cfg.get(), k, &run) != HP_OK) return report_error(hp_last_error());
      return finish(common, run);
    }
    if (*sweep) return run_with(common, {}, hp_run_sweep);
    if (*gronwall) {
      std::vector<std::pair<std::string, std::string>> presets{{"checks", "gronwall"}};
      if (trials >= 0) presets.emplace_back("gronwall_trials", std::to_string(trials));
      if (!seed.empty()) presets.emplace_back("seed", seed);
      return run_with(common, presets, hp_run_verify_gronwall);
    }
    if (*aux) {
      return run_with(common, {{"model", "hyperbolic"}, {"checks", "psi_gronwall,omega_energy,psi_growth"}}, hp_run_sweep);
    }
    if (*theorem) {
      return run_with(common, {{"model", "hyperbolic"}, {"checks", "psi_gevrey,theorem"}}, hp_run_sweep);
    }
    if (*compare) return run_with(common, {{"model", "both"}}, hp_run_sweep);
    if (*constants) {
      hp_constants_out o{};
      if (hp_constants(sigma, shear.c_str(), t, &o) != HP_OK) return report_error(hp_last_error());
      std::cout << "{\n"
                << "  \"sigma\": " << fmt(sigma) << ",\n"
                << "  \"shear\": \"" << shear << "\",\n"
                << "  \"t\": " << fmt(t) << ",\n"
                << "  \"curvature_weight\": " << fmt(o.curvature_weight) << ",\n"
                << "  \"T_sigma\": " << fmt(o.T_sigma) << ",\n"
                << "  \"alpha\": " << fmt(o.alpha) << ",\n"
                << "  \"beta\": " << fmt(o.beta) << ",\n"
                << "  \"gamma\": " << fmt(o.gamma) << ",\n"
                << "  \"D_sigma\": " << fmt(o.D_sigma) << ",\n"
                << "  \"C_sigma\": " << fmt(o.C_sigma) << ",\n"
                << "  \"C2_sigma\": " << fmt(o.C2_sigma) << ",\n"
                << "  \"Ctilde_sigma\": " << fmt(o.Ctilde_sigma) << "\n"
                << "}\n";
      return kExitPass;
    }
  } catch (const std::exception& e) {
    return report_error(e.what());
  }
  return kExitError;
}
