#include "gronwall.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "numfmt.hpp"

namespace hprandtl {
namespace {

std::size_t index_of(const Tabulated& f, double t) {
  const auto it = std::lower_bound(f.t.begin(), f.t.end(), t - 1e-9 * std::max(1.0, std::abs(t)));
  if (it == f.t.end() || std::abs(*it - t) > 1e-9 * std::max(1.0, std::abs(t))) {
    throw std::out_of_range("t=" + format_double(t) + " is not a tabulation time");
  }
  return static_cast<std::size_t>(it - f.t.begin());
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Tightest {
  double t = 0.0, lhs = 0.0, rhs = 0.0, rel = std::numeric_limits<double>::infinity();

  void offer(double t_, double lhs_, double rhs_) {
    const double rel_ = (rhs_ - lhs_) / std::max(std::abs(rhs_), 1e-300);
    if (rel_ < rel) *this = {t_, lhs_, rhs_, rel_};
  }
};

}  // namespace

double gronwall_bound(double g_t, double lambda_t, double t) {
  if (!(g_t >= 0.0) || !(lambda_t >= 0.0) || !(t >= 0.0)) {
    throw std::invalid_argument("gronwall_bound needs nonnegative g, lambda and t");
  }
  const double lt = lambda_t * t;
  return g_t * (1.0 + lt * lt * lt / 6.0) * std::exp(lt);
}

double hypothesis_rhs(const Tabulated& f, double g_t, double lambda_t, double t) {
  if (f.t.size() != f.v.size()) throw std::invalid_argument("tabulation sizes differ");
  const std::size_t i = index_of(f, t);
  const double ti = f.t[i];
  double integral = 0.0;
  for (std::size_t j = 0; j < i; ++j) {
    const double a = ti - f.t[j];
    const double b = ti - f.t[j + 1];
    integral += 0.5 * (f.t[j + 1] - f.t[j]) * (a * a * f.v[j] + b * b * f.v[j + 1]);
  }
  return g_t + 0.5 * lambda_t * lambda_t * lambda_t * integral;
}

std::vector<double> hypothesis_rhs_all(const Tabulated& f, const std::vector<double>& g_t,
                                       const std::vector<double>& lambda_t) {
  const std::size_t m = f.t.size();
  if (f.v.size() != m || g_t.size() != m || lambda_t.size() != m) {
    throw std::invalid_argument("tabulation sizes differ");
  }
  std::vector<double> out(m);
  double p0 = 0.0, p1 = 0.0, p2 = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (i > 0) {
      const double half = 0.5 * (f.t[i] - f.t[i - 1]);
      const double s0 = f.t[i - 1], s1 = f.t[i];
      p0 += half * (f.v[i - 1] + f.v[i]);
      p1 += half * (s0 * f.v[i - 1] + s1 * f.v[i]);
      p2 += half * (s0 * s0 * f.v[i - 1] + s1 * s1 * f.v[i]);
    }
    const double t = f.t[i];
    const double lam = lambda_t[i];
    out[i] = g_t[i] + 0.5 * lam * lam * lam * (t * t * p0 - 2.0 * t * p1 + p2);
  }
  return out;
}

void check_gronwall_instance(const std::vector<double>& g, const std::vector<double>& lambda,
                             const std::vector<double>& f) {
  auto monotone = [](const std::vector<double>& v, const char* name) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!(v[i] >= 0.0)) throw std::invalid_argument(std::string(name) + " must be nonnegative");
      if (i > 0 && v[i] < v[i - 1]) throw std::invalid_argument(std::string(name) + " must be nondecreasing");
    }
  };
  monotone(g, "g");
  monotone(lambda, "lambda");
  for (double x : f) {
    if (!(x >= 0.0)) throw std::invalid_argument("f must be nonnegative");
  }
}

Tabulated equality_oracle(const std::function<double(double)>& g, double lambda, double T, double dt,
                          bool hold_left) {
  if (!(lambda >= 0.0) || !(T >= 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument("equality_oracle needs lambda >= 0, T >= 0, dt > 0");
  }
  const long steps = T == 0.0 ? 0 : static_cast<long>(std::ceil(T / dt - 1e-9));
  const double h = steps == 0 ? dt : T / static_cast<double>(steps);
  const double l3 = lambda * lambda * lambda;

  using State = std::array<double, 3>;
  auto rhs = [&](double gv, const State& y) { return State{y[1], y[2], gv + l3 * y[0]}; };
  auto axpy = [](const State& y, double a, const State& k) {
    return State{y[0] + a * k[0], y[1] + a * k[1], y[2] + a * k[2]};
  };

  Tabulated out;
  out.t.reserve(steps + 1);
  out.v.reserve(steps + 1);
  State y{0.0, 0.0, 0.0};
  out.t.push_back(0.0);
  out.v.push_back(g(0.0));
  for (long m = 0; m < steps; ++m) {
    const double t = static_cast<double>(m) * h;
    const double g0 = g(t);
    const double gm = hold_left ? g0 : g(t + 0.5 * h);
    const double g1 = hold_left ? g0 : g(t + h);
    const State k1 = rhs(g0, y);
    const State k2 = rhs(gm, axpy(y, 0.5 * h, k1));
    const State k3 = rhs(gm, axpy(y, 0.5 * h, k2));
    const State k4 = rhs(g1, axpy(y, h, k3));
    for (int c = 0; c < 3; ++c) y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    const double tn = static_cast<double>(m + 1) * h;
    out.t.push_back(tn);
    out.v.push_back(g(tn) + l3 * y[0]);
  }
  return out;
}

GronwallReport verify_gronwall_randomized(int trials, std::uint64_t seed, double T, double dt) {
  if (trials < 0) throw std::invalid_argument("trials must be >= 0");
  if (!(T > 0.0) || !(dt > 0.0)) throw std::invalid_argument("T and dt must be positive");
  GronwallReport rep;
  rep.trials = trials;
  rep.seed = seed;

  const long steps = static_cast<long>(std::ceil(T / dt - 1e-9));
  const double h = T / static_cast<double>(steps);

  auto record = [&](Tightest& tight, double t, double f, double bound) {
    ++rep.samples;
    tight.offer(t, f, bound);
    if (f > bound) {
      const double rel = (f - bound) / std::max(bound, 1e-300);
      rep.max_relative_violation = std::max(rep.max_relative_violation, rel);
      if (rel > 1e-9) ++rep.violations;
    }
  };

  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial))));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double lambda = 2.0 * unit(rng);

    std::vector<double> g_nodes(steps + 1, unit(rng));
    const int jumps = std::uniform_int_distribution<int>(0, 4)(rng);
    for (int j = 0; j < jumps; ++j) {
      const long at = std::uniform_int_distribution<long>(1, steps)(rng);
      const double inc = unit(rng);
      for (long m = at; m <= steps; ++m) g_nodes[m] += inc;
    }
    auto g = [&](double t) {
      const long m = std::clamp(static_cast<long>(std::floor(t / h + 1e-9)), 0L, steps);
      return g_nodes[m];
    };

    const Tabulated extremal = equality_oracle(g, lambda, T, h, true);
    Tightest tight_ext;
    for (std::size_t m = 0; m < extremal.t.size(); ++m) {
      record(tight_ext, extremal.t[m], extremal.v[m], gronwall_bound(g_nodes[m], lambda, extremal.t[m]));
    }

    // Damped trajectory built forward so that each value sits below the
    // discrete hypothesis evaluated on the values already fixed.
    const double l3 = lambda * lambda * lambda;
    Tabulated damped;
    damped.t = extremal.t;
    damped.v.assign(damped.t.size(), 0.0);
    double p0 = 0.0, p1 = 0.0, p2 = 0.0;
    for (std::size_t m = 0; m < damped.t.size(); ++m) {
      const double t = damped.t[m];
      double q0 = p0, q1 = p1, q2 = p2;
      if (m > 0) {
        const double s = damped.t[m - 1];
        const double half = 0.5 * (t - s);
        q0 += half * damped.v[m - 1];
        q1 += half * s * damped.v[m - 1];
        q2 += half * s * s * damped.v[m - 1];
      }
      const double hyp = g_nodes[m] + 0.5 * l3 * (t * t * q0 - 2.0 * t * q1 + q2);
      damped.v[m] = (0.5 + 0.5 * unit(rng)) * hyp;
      if (m > 0) {
        p0 = q0 + 0.5 * (t - damped.t[m - 1]) * damped.v[m];
        p1 = q1 + 0.5 * (t - damped.t[m - 1]) * t * damped.v[m];
        p2 = q2 + 0.5 * (t - damped.t[m - 1]) * t * t * damped.v[m];
      }
    }
    const std::vector<double> lam(damped.t.size(), lambda);
    const std::vector<double> hyp = hypothesis_rhs_all(damped, g_nodes, lam);
    Tightest tight_hyp, tight_damped;
    for (std::size_t m = 0; m < damped.t.size(); ++m) {
      tight_hyp.offer(damped.t[m], damped.v[m], hyp[m]);
      record(tight_damped, damped.t[m], damped.v[m], gronwall_bound(g_nodes[m], lambda, damped.t[m]));
    }

    rep.rows.push_back(make_check("gronwall.extremal", std::nullopt, tight_ext.t, tight_ext.lhs, tight_ext.rhs));
    rep.rows.push_back(make_check("gronwall.damped_hypothesis", std::nullopt, tight_hyp.t, tight_hyp.lhs,
                                  tight_hyp.rhs));
    rep.rows.push_back(
        make_check("gronwall.damped", std::nullopt, tight_damped.t, tight_damped.lhs, tight_damped.rhs));
  }
  return rep;
}

}  // namespace hprandtl
