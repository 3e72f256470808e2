#include "hprandtl/hprandtl.h"

#include <cmath>
#include <limits>
#include <new>
#include <string>

#include "experiment.hpp"

#ifndef HPRANDTL_VERSION
#define HPRANDTL_VERSION "0.0.0"
#endif

struct hp_config {
  hprandtl::RunConfig cfg;
  std::string echo;
};

struct hp_run {
  hprandtl::RunResult result;
  std::string summary;
  std::string trajectory, checks, growth;
};

namespace {

thread_local std::string last_error;

hp_status fail(hp_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

/// Maps exceptions escaping the core to status codes.
template <class F>
hp_status guarded(F fn) {
  try {
    last_error.clear();
    fn();
    return HP_OK;
  } catch (const hprandtl::ConfigError& e) {
    return fail(HP_ERR_CONFIG, e.what());
  } catch (const hprandtl::StabilityError& e) {
    return fail(HP_ERR_STABILITY, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(HP_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(HP_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::runtime_error& e) {
    return fail(HP_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(HP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(HP_ERR_INTERNAL, "unknown error");
  }
}

hp_status make_run(hprandtl::RunResult r, hp_run** out) {
  auto* run = new hp_run{std::move(r), {}, {}, {}, {}};
  run->summary = hprandtl::summary_json(run->result);
  run->trajectory = hprandtl::trajectory_csv(run->result);
  run->checks = hprandtl::checks_csv(run->result);
  run->growth = hprandtl::growth_csv(run->result);
  *out = run;
  return HP_OK;
}

}  // namespace

extern "C" {

const char* hp_version(void) { return HPRANDTL_VERSION; }

const char* hp_last_error(void) { return last_error.c_str(); }

hp_status hp_config_parse(const char* text, hp_config** out) {
  if (!out) return fail(HP_ERR_INVALID_ARGUMENT, "out is NULL");
  *out = nullptr;
  if (!text) return fail(HP_ERR_INVALID_ARGUMENT, "text is NULL");
  return guarded([&] { *out = new hp_config{hprandtl::parse_config(text), {}}; });
}

hp_status hp_config_set(hp_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return fail(HP_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    hprandtl::RunConfig next = cfg->cfg;
    const std::string where = std::string("--set ") + key + "=" + value;
    hprandtl::apply_setting(next, key, value, where);
    try {
      hprandtl::validate_config(next);
    } catch (const hprandtl::ConfigError& e) {
      throw hprandtl::ConfigError(where + ": " + e.what());
    }
    cfg->cfg = std::move(next);
  });
}

const char* hp_config_echo(hp_config* cfg) {
  if (!cfg) return "";
  cfg->echo = hprandtl::format_config(cfg->cfg);
  return cfg->echo.c_str();
}

void hp_config_free(hp_config* cfg) { delete cfg; }

hp_status hp_run_sweep(const hp_config* cfg, hp_run** out) {
  if (!cfg || !out) return fail(HP_ERR_INVALID_ARGUMENT, "NULL argument");
  *out = nullptr;
  return guarded([&] { make_run(hprandtl::run_sweep(cfg->cfg), out); });
}

hp_status hp_run_simulate_mode(const hp_config* cfg, int k, hp_run** out) {
  if (!cfg || !out) return fail(HP_ERR_INVALID_ARGUMENT, "NULL argument");
  *out = nullptr;
  return guarded([&] { make_run(hprandtl::run_single_mode(cfg->cfg, k), out); });
}

hp_status hp_run_verify_gronwall(const hp_config* cfg, hp_run** out) {
  if (!cfg || !out) return fail(HP_ERR_INVALID_ARGUMENT, "NULL argument");
  *out = nullptr;
  return guarded([&] { make_run(hprandtl::run_gronwall(cfg->cfg), out); });
}

hp_status hp_run_write_outputs(const hp_run* run, const char* dir) {
  if (!run) return fail(HP_ERR_INVALID_ARGUMENT, "run is NULL");
  return guarded([&] { hprandtl::write_outputs(run->result, dir ? dir : run->result.cfg.output_dir); });
}

size_t hp_run_check_count(const hp_run* run) { return run ? run->result.checks.size() : 0; }

size_t hp_run_failed_checks(const hp_run* run) {
  if (!run) return 0;
  size_t n = 0;
  for (const auto& c : run->result.checks) n += c.pass ? 0 : 1;
  return n;
}

int hp_run_all_checks_passed(const hp_run* run) { return run && hp_run_failed_checks(run) == 0 ? 1 : 0; }

const char* hp_run_summary_json(const hp_run* run) { return run ? run->summary.c_str() : ""; }

const char* hp_run_csv(const hp_run* run, const char* which) {
  if (!run || !which) return nullptr;
  const std::string w = which;
  if (w == "trajectory") return run->trajectory.c_str();
  if (w == "checks") return run->checks.c_str();
  if (w == "growth") return run->growth.c_str();
  return nullptr;
}

void hp_run_free(hp_run* run) { delete run; }

hp_status hp_constants(double sigma, const char* shear, double t, hp_constants_out* out) {
  if (!shear || !out) return fail(HP_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    const auto [name, params] = hprandtl::parse_shear_spec(shear);
    const auto sup = hprandtl::shear_sup_norms(name, params);
    const double w = sup[3] + 2.0 * sup[2];
    const double nan = std::numeric_limits<double>::quiet_NaN();
    hp_constants_out o{};
    o.curvature_weight = w;
    o.T_sigma = hprandtl::lifespan_T_sigma(sigma, w);
    o.alpha = o.beta = o.gamma = nan;
    if (t >= 0.0 && t < o.T_sigma) {
      const auto r = hprandtl::radii(sigma, w, t);
      o.alpha = r.alpha;
      o.beta = r.beta;
      o.gamma = r.gamma;
    }
    const auto c = hprandtl::constants(sigma, sup, t);
    o.D_sigma = c.D_sigma;
    o.C_sigma = c.C_sigma;
    o.C2_sigma = c.C2_sigma;
    o.Ctilde_sigma = c.Ctilde_sigma;
    *out = o;
  });
}

}  // extern "C"
