#include "experiment.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "numfmt.hpp"

#ifndef HPRANDTL_VERSION
#define HPRANDTL_VERSION "0.0.0"
#endif

namespace hprandtl {
namespace {

using json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ModeTask {
  Model model;
  int k;
};

struct ModeOutput {
  Trajectory traj;
  std::vector<CheckRow> checks;
  std::vector<std::string> notes;
};

/// Runs fn(i) for i in [0, count) on `workers` threads. The first exception
/// in index order is rethrown after all workers finish.
template <class F>
void parallel_for(std::size_t count, int workers, F fn) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(count)));
  std::vector<std::thread> pool;
  for (int w = 1; w < n; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double check_window(const RunConfig& cfg, double T_sigma) {
  return std::isfinite(T_sigma) ? std::min(cfg.t_end, 0.9 * T_sigma) : cfg.t_end;
}

ModeOutput run_mode(const RunConfig& cfg, const ModeTask& task, const Grid& g, const ShearFlow& shear, double dt,
                    int stride, double T_sigma) {
  const ModeData data = synth_mode(cfg.sigma, task.k, cfg.shape, cfg.seed, g);
  SolverConfig sc;
  sc.dt = dt;
  sc.t_end = cfg.t_end;
  sc.n = g.n;
  sc.sample_stride = stride;

  ModeOutput out;
  out.traj = simulate_mode(sc, shear, task.k, data.u_in, data.ut_in, task.model, g);
  if (out.traj.blew_up) {
    out.notes.push_back(to_string(task.model) + " mode k=" + std::to_string(task.k) + " blew up at step " +
                        std::to_string(out.traj.blowup_step));
  }
  if (task.model != Model::hyperbolic) return out;

  const InitialNorms in = initial_norms(data.u_in, data.ut_in, g);
  const double window = check_window(cfg, T_sigma);
  if (cfg.checks.psi_gronwall) {
    auto rows = check_psi_gronwall(out.traj, shear, task.k, in, window);
    out.checks.insert(out.checks.end(), rows.begin(), rows.end());
  }
  if (cfg.checks.psi_growth) {
    auto rows = check_psi_growth_bound(out.traj, shear, task.k, in, window);
    out.checks.insert(out.checks.end(), rows.begin(), rows.end());
  }
  if (cfg.checks.omega_energy && !cfg.tau.empty()) {
    SolverConfig full = sc;
    full.t_end = *std::max_element(cfg.tau.begin(), cfg.tau.end());
    full.store_full = true;
    full.sample_stride = std::max(1, static_cast<int>(std::lround(full.t_end / dt)));
    const Trajectory trace = simulate_mode(full, shear, task.k, data.u_in, data.ut_in, Model::hyperbolic, g);
    if (trace.blew_up || !trace.full) {
      out.checks.push_back(make_check("omega_energy", task.k, 0.0, kInf, 0.0));
      out.notes.push_back("omega_energy skipped for k=" + std::to_string(task.k) + ": trajectory blew up");
      return out;
    }
    const auto forcing = psi_forcing_trace(*trace.full, g);
    for (double tau : cfg.tau) {
      const OmegaTrajectory omega = solve_omega_backward(forcing, trace.dt, shear, task.k, tau, g);
      auto rows = check_omega_energy(omega, forcing, task.k, g, stride);
      out.checks.insert(out.checks.end(), rows.begin(), rows.end());
    }
  }
  return out;
}

std::vector<std::string> blown_up(const std::vector<Trajectory>& modes) {
  std::vector<std::string> out;
  for (const auto& m : modes) {
    if (m.blew_up) out.push_back(to_string(m.model) + ":" + std::to_string(m.k));
  }
  return out;
}

RunResult execute(const RunConfig& cfg, bool aggregate_checks) {
  const auto started = std::chrono::steady_clock::now();
  validate_config(cfg);

  RunResult r;
  r.cfg = cfg;
  r.dt = resolved_dt(cfg);
  r.stride = resolved_stride(cfg);

  const Grid g = build_grid(cfg.grid_n);
  const ShearFlow shear = make_shear(cfg.shear_name, cfg.shear_params, g);
  r.T_sigma = lifespan_T_sigma(cfg.sigma, shear);

  if (cfg.checks.gronwall) {
    r.gronwall = verify_gronwall_randomized(cfg.gronwall_trials, cfg.seed, cfg.gronwall_T, 1e-3);
    r.checks.insert(r.checks.end(), r.gronwall->rows.begin(), r.gronwall->rows.end());
  }

  const std::vector<int> ks = frequencies(cfg);
  std::vector<ModeTask> tasks;
  const bool hyper = cfg.model != ModelSelection::classical;
  const bool classical = cfg.model != ModelSelection::hyperbolic;
  if (hyper) {
    for (int k : ks) tasks.push_back({Model::hyperbolic, k});
  }
  if (classical) {
    for (int k : ks) tasks.push_back({Model::classical, k});
  }

  std::vector<ModeOutput> outputs(tasks.size());
  parallel_for(tasks.size(), resolved_workers(cfg), [&](std::size_t i) {
    outputs[i] = run_mode(cfg, tasks[i], g, shear, r.dt, r.stride, r.T_sigma);
  });

  for (std::size_t i = 0; i < tasks.size(); ++i) {
    auto& o = outputs[i];
    r.checks.insert(r.checks.end(), o.checks.begin(), o.checks.end());
    r.notes.insert(r.notes.end(), o.notes.begin(), o.notes.end());
    (tasks[i].model == Model::hyperbolic ? r.hyperbolic : r.classical).push_back(std::move(o.traj));
  }

  const bool full_set = static_cast<int>(ks.size()) == 2 * cfg.K + 1;
  const bool want_aggregate = hyper && (cfg.checks.theorem || cfg.checks.psi_gevrey);
  if (want_aggregate && !aggregate_checks) {
    r.notes.push_back("theorem/psi_gevrey need the full frequency set and were not evaluated");
  } else if (want_aggregate && !full_set) {
    r.notes.push_back("theorem/psi_gevrey need k = -K..K; skipped for an explicit k_list subset");
  } else if (want_aggregate) {
    SpectralData data{cfg.K, r.hyperbolic};
    std::map<int, InitialModeNorms> in;
    for (int k : ks) in[k] = initial_mode_norms(synth_mode(cfg.sigma, k, cfg.shape, cfg.seed, g), g);
    const double window = check_window(cfg, r.T_sigma);
    try {
      if (cfg.checks.psi_gevrey) {
        auto rows = check_psi_gevrey(data, cfg.sigma, shear, in, window);
        r.checks.insert(r.checks.end(), rows.begin(), rows.end());
      }
      if (cfg.checks.theorem) {
        auto rows = check_theorem(data, cfg.sigma, shear, in, window);
        r.checks.insert(r.checks.end(), rows.begin(), rows.end());
      }
    } catch (const std::invalid_argument& e) {
      r.checks.push_back(make_check("theorem", std::nullopt, 0.0, kInf, 0.0));
      r.notes.push_back(std::string("aggregate checks failed: ") + e.what());
    }
  }

  if (hyper) {
    r.growth_hyperbolic = amplifications(r.hyperbolic);
    r.fit_hyperbolic = fit_growth(r.growth_hyperbolic);
  }
  if (classical) {
    r.growth_classical = amplifications(r.classical);
    r.fit_classical = fit_growth(r.growth_classical);
  }
  if (hyper && classical) r.comparison = compare_models(r.growth_hyperbolic, r.growth_classical);

  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return r;
}

json fit_json(const GrowthFit& f) {
  json j;
  j["status"] = f.status;
  j["points"] = f.points;
  if (f.status == "ok") {
    j["p"] = f.p;
    j["intercept"] = f.intercept;
    j["residual"] = f.residual;
  }
  return j;
}

json number_or_string(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

std::string csv_cell(double v) { return std::isnan(v) ? std::string() : format_double(v); }

}  // namespace

std::map<int, double> amplifications(const std::vector<Trajectory>& modes) {
  std::map<int, double> out;
  for (const auto& m : modes) {
    if (m.samples.empty()) continue;
    const double u0 = m.samples.front().norm_u;
    if (!(u0 > 0.0)) continue;
    out[m.k] = m.blew_up ? kInf : m.max_norm_u / u0;
  }
  return out;
}

GrowthFit fit_growth(const std::map<int, double>& amplification) {
  std::vector<double> xs, ys;
  for (const auto& [k, a] : amplification) {
    if (k < 1 || !std::isfinite(a) || !(a > std::exp(1.0))) continue;
    xs.push_back(std::log(static_cast<double>(k)));
    ys.push_back(std::log(std::log(a)));
  }
  GrowthFit f;
  f.points = static_cast<int>(xs.size());
  if (xs.size() < 4) return f;
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) return f;
  f.status = "ok";
  f.p = sxy / sxx;
  f.intercept = my - f.p * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (f.intercept + f.p * xs[i]);
    ss += e * e;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

Comparison compare_models(const std::map<int, double>& hyperbolic, const std::map<int, double>& classical) {
  if (hyperbolic.size() != classical.size() ||
      !std::equal(hyperbolic.begin(), hyperbolic.end(), classical.begin(),
                  [](const auto& a, const auto& b) { return a.first == b.first; })) {
    throw std::invalid_argument("compare_models: sweeps cover different frequencies");
  }
  Comparison c;
  c.hyperbolic = fit_growth(hyperbolic);
  c.classical = fit_growth(classical);
  c.ordering = std::numeric_limits<double>::quiet_NaN();

  double sxy = 0.0, sxx = 0.0;
  for (const auto& [k, a] : hyperbolic) {
    if (k < 1 || !std::isfinite(a) || !(a > 1.0)) continue;
    const double x = std::pow(static_cast<double>(k), 0.45);
    sxy += x * std::log(a);
    sxx += x * x;
  }
  c.envelope_c = sxx > 0.0 ? sxy / sxx : 0.0;
  c.envelope_holds = true;
  for (const auto& [k, a] : hyperbolic) {
    if (k < 1 || !std::isfinite(a) || !(a > 1.0)) continue;
    const double bound = c.envelope_c * std::pow(static_cast<double>(k), 0.45);
    if (std::log(a) > bound * (1.0 + 1e-12)) c.envelope_holds = false;
  }

  const bool h_ok = c.hyperbolic.status == "ok";
  const bool c_ok = c.classical.status == "ok";
  if (hyperbolic.empty()) {
    c.status = "degenerate";
  } else if (h_ok && c_ok) {
    c.status = "ok";
    c.ordering = c.classical.p - c.hyperbolic.p;
  } else if (h_ok) {
    c.status = "classical_insufficient";
  } else if (c_ok) {
    c.status = "hyperbolic_insufficient";
  } else {
    c.status = "no_instability_resolved";
  }
  return c;
}

RunResult run_sweep(const RunConfig& cfg) { return execute(cfg, true); }

RunResult run_single_mode(const RunConfig& cfg, int k) {
  RunConfig one = cfg;
  one.K = std::max(cfg.K, std::abs(k));
  one.k_list = {k};
  return execute(one, false);
}

RunResult run_gronwall(const RunConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  RunResult r;
  r.cfg = cfg;
  r.dt = 0.0;
  r.T_sigma = std::numeric_limits<double>::quiet_NaN();
  r.gronwall = verify_gronwall_randomized(cfg.gronwall_trials, cfg.seed, cfg.gronwall_T, 1e-3);
  r.checks = r.gronwall->rows;
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return r;
}

std::string trajectory_csv(const RunResult& r) {
  std::ostringstream out;
  out << "model,k,t,norm_u,norm_dyu,norm_dtu,norm_dt1_dypsi,norm_dyypsi,energy\n";
  for (const auto* set : {&r.hyperbolic, &r.classical}) {
    for (const auto& m : *set) {
      const std::string model = to_string(m.model);
      for (const auto& s : m.samples) {
        out << model << ',' << m.k << ',' << format_double(s.t) << ',' << format_double(s.norm_u) << ','
            << format_double(s.norm_dyu) << ',' << format_double(s.norm_dtu) << ',' << csv_cell(s.norm_dt1_dypsi)
            << ',' << csv_cell(s.norm_dyypsi) << ',' << csv_cell(s.energy) << '\n';
      }
    }
  }
  return out.str();
}

std::string checks_csv(const RunResult& r) {
  std::ostringstream out;
  out << "check,k,t,lhs,rhs,margin,pass\n";
  for (const auto& c : r.checks) {
    out << c.check << ',' << (c.k ? std::to_string(*c.k) : std::string()) << ',' << format_double(c.t) << ','
        << format_double(c.lhs) << ',' << format_double(c.rhs) << ',' << format_double(c.margin) << ','
        << (c.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string growth_csv(const RunResult& r) {
  std::ostringstream out;
  out << "model,k,A_k\n";
  for (const auto& [k, a] : r.growth_hyperbolic) out << "hyperbolic," << k << ',' << format_double(a) << '\n';
  for (const auto& [k, a] : r.growth_classical) out << "classical," << k << ',' << format_double(a) << '\n';
  return out.str();
}

std::string summary_json(const RunResult& r) {
  json j;
  int failed = 0;
  std::map<std::string, std::pair<int, int>> by_check;
  for (const auto& c : r.checks) {
    const std::string family = c.check.substr(0, c.check.find('['));
    auto& tally = by_check[family];
    ++tally.first;
    if (!c.pass) {
      ++failed;
      ++tally.second;
    }
  }
  j["checks_total"] = r.checks.size();
  j["checks_failed"] = failed;
  j["worst_relative_margin"] = number_or_string(r.checks.empty() ? kInf : worst_relative_margin(r.checks));
  json fam = json::object();
  for (const auto& [name, t] : by_check) fam[name] = {{"rows", t.first}, {"failed", t.second}};
  j["check_families"] = fam;
  j["dt"] = r.dt;
  j["sample_stride"] = r.stride;
  j["T_sigma"] = number_or_string(r.T_sigma);
  if (!r.hyperbolic.empty()) j["fit_hyperbolic"] = fit_json(r.fit_hyperbolic);
  if (!r.classical.empty()) j["fit_classical"] = fit_json(r.fit_classical);
  if (r.comparison) {
    const auto& c = *r.comparison;
    json cj;
    cj["status"] = c.status;
    cj["ordering"] = number_or_string(c.ordering);
    cj["envelope_c"] = c.envelope_c;
    cj["envelope_holds"] = c.envelope_holds;
    j["comparison"] = cj;
  }
  if (r.gronwall) {
    j["gronwall"] = {{"trials", r.gronwall->trials},
                     {"seed", r.gronwall->seed},
                     {"samples", r.gronwall->samples},
                     {"violations", r.gronwall->violations},
                     {"max_relative_violation", r.gronwall->max_relative_violation}};
  }
  auto lost = blown_up(r.hyperbolic);
  auto lost_c = blown_up(r.classical);
  lost.insert(lost.end(), lost_c.begin(), lost_c.end());
  j["blown_up"] = lost;
  j["notes"] = r.notes;
  return j.dump(2);
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

void write_outputs(const RunResult& r, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());

  const std::vector<std::pair<std::string, std::string>> files = {
      {"trajectory.csv", trajectory_csv(r)}, {"checks.csv", checks_csv(r)}, {"growth.csv", growth_csv(r)}};
  json manifest;
  manifest["tool"] = "hprandtl";
  manifest["version"] = HPRANDTL_VERSION;
  manifest["compiler"] = __VERSION__;
  json cfg = json::object();
  std::istringstream echo(format_config(r.cfg));
  std::string line;
  while (std::getline(echo, line)) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) cfg[line.substr(0, eq)] = line.substr(eq + 3);
  }
  manifest["config"] = cfg;
  manifest["seed"] = r.cfg.seed;
  manifest["wall_time_s"] = r.wall_seconds;
  json listed = json::array();
  for (const auto& [name, body] : files) {
    const fs::path path = fs::path(dir) / name;
    std::ofstream f(path, std::ios::binary);
    f << body;
    f.close();
    if (!f) throw std::runtime_error("failed to write " + path.string());
    listed.push_back({{"name", name}, {"bytes", body.size()}, {"sha256", sha256_hex(body)}});
  }
  manifest["files"] = listed;
  manifest["summary"] = json::parse(summary_json(r));

  const fs::path mpath = fs::path(dir) / "manifest.json";
  std::ofstream m(mpath, std::ios::binary);
  m << manifest.dump(2) << '\n';
  m.close();
  if (!m) throw std::runtime_error("failed to write " + mpath.string());
}

}  // namespace hprandtl
