#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gronwall.hpp"
#include "oracles.hpp"

using namespace hprandtl;

namespace {

Tabulated constant_table(double value, double T, int steps) {
  Tabulated f;
  for (int m = 0; m <= steps; ++m) {
    f.t.push_back(T * m / steps);
    f.v.push_back(value);
  }
  return f;
}

}  // namespace

TEST(GronwallBound, Examples) {
  EXPECT_NEAR(gronwall_bound(1.0, 1.0, 1.0), (1.0 + 1.0 / 6.0) * std::exp(1.0), 1e-14);
  EXPECT_NEAR(gronwall_bound(1.0, 1.0, 1.0), 3.1712, 2e-4);
  EXPECT_EQ(gronwall_bound(2.5, 0.0, 3.0), 2.5);
  EXPECT_EQ(gronwall_bound(0.0, 4.0, 3.0), 0.0);
  EXPECT_THROW(gronwall_bound(-1.0, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(gronwall_bound(1.0, -1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(gronwall_bound(1.0, 1.0, -1.0), std::invalid_argument);
}

TEST(GronwallBound, MonotoneInEachArgument) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 3.0), bump(0.0, 0.5);
  for (int i = 0; i < 200; ++i) {
    const double g = u(rng), l = u(rng), t = u(rng);
    const double b = gronwall_bound(g, l, t);
    EXPECT_LE(b, gronwall_bound(g + bump(rng), l, t));
    EXPECT_LE(b, gronwall_bound(g, l + bump(rng), t));
    EXPECT_LE(b, gronwall_bound(g, l, t + bump(rng)));
  }
}

TEST(HypothesisRhs, Examples) {
  const Tabulated zero = constant_table(0.0, 1.0, 100);
  EXPECT_EQ(hypothesis_rhs(zero, 0.7, 1.3, 0.5), 0.7);
  const Tabulated one = constant_table(1.0, 1.0, 1000);
  EXPECT_EQ(hypothesis_rhs(one, 0.4, 5.0, 0.0), 0.4);
  // Trapezoid of (1-s)^2 carries an h^2/6 defect.
  EXPECT_NEAR(hypothesis_rhs(one, 0.0, std::cbrt(2.0), 1.0), 1.0 / 3.0, 1e-6);
  EXPECT_THROW(hypothesis_rhs(one, 0.0, 1.0, 0.0005), std::out_of_range);
  EXPECT_THROW(hypothesis_rhs(one, 0.0, 1.0, 1.5), std::out_of_range);
}

TEST(HypothesisRhs, AllTimesAgreesWithPointwise) {
  Tabulated f;
  std::vector<double> g, lam;
  for (int m = 0; m <= 400; ++m) {
    const double t = m * 5e-3;
    f.t.push_back(t);
    f.v.push_back(1.0 + std::sin(3.0 * t) * std::sin(3.0 * t) + t);
    g.push_back(0.5 + t);
    lam.push_back(1.0 + 0.1 * t);
  }
  const std::vector<double> all = hypothesis_rhs_all(f, g, lam);
  for (std::size_t m = 0; m < f.t.size(); m += 37) {
    const double one = hypothesis_rhs(f, g[m], lam[m], f.t[m]);
    EXPECT_NEAR(all[m], one, 1e-11 * std::max(1.0, one));
  }
}

TEST(GronwallInstance, RejectsBadHypotheses) {
  EXPECT_NO_THROW(check_gronwall_instance({0.0, 1.0, 1.0}, {1.0, 1.0, 2.0}, {0.0, 3.0, 1.0}));
  EXPECT_THROW(check_gronwall_instance({1.0, 0.5}, {1.0, 1.0}, {1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(check_gronwall_instance({1.0, 1.0}, {2.0, 1.0}, {1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(check_gronwall_instance({1.0, 1.0}, {1.0, 1.0}, {1.0, -1.0}), std::invalid_argument);
  EXPECT_THROW(check_gronwall_instance({-1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}), std::invalid_argument);
}

TEST(EqualityOracle, MatchesClosedForm) {
  const Tabulated f = equality_oracle([](double) { return 1.0; }, 1.0, 2.0, 1e-4);
  ASSERT_EQ(f.t.size(), 20001u);
  double worst = 0.0;
  for (std::size_t m = 0; m < f.t.size(); ++m) {
    worst = std::max(worst, std::abs(f.v[m] - oracle::gronwall_extremal_unit(f.t[m])));
  }
  EXPECT_LE(worst, 1e-8);
  EXPECT_NEAR(f.v[10000], 1.1681, 1e-4);
  EXPECT_LE(f.v[10000], gronwall_bound(1.0, 1.0, 1.0));
}

TEST(EqualityOracle, DegenerateCases) {
  const Tabulated z = equality_oracle([](double) { return 0.0; }, 1.5, 1.0, 1e-2);
  for (double v : z.v) EXPECT_EQ(v, 0.0);
  const Tabulated g = equality_oracle([](double t) { return 1.0 + t; }, 0.0, 1.0, 1e-2);
  for (std::size_t m = 0; m < g.t.size(); ++m) EXPECT_DOUBLE_EQ(g.v[m], 1.0 + g.t[m]);
}

TEST(EqualityOracle, SaturatesHypothesisAndStaysUnderBound) {
  for (double lam : {0.5, 1.0, 2.0}) {
    auto gfun = [](double t) { return 1.0 + (t >= 0.7 ? 0.5 : 0.0) + 0.2 * t; };
    const double dt = 1e-4;
    const Tabulated f = equality_oracle(gfun, lam, 2.0, dt, true);
    std::vector<double> gv, lv(f.t.size(), lam);
    for (double t : f.t) gv.push_back(gfun(t));
    const std::vector<double> rhs = hypothesis_rhs_all(f, gv, lv);
    double closure = 0.0;
    for (std::size_t m = 0; m < f.t.size(); ++m) {
      closure = std::max(closure, f.v[m] - rhs[m]);
      EXPECT_LE(f.v[m], gronwall_bound(gv[m], lam, f.t[m]) * (1.0 + 1e-12));
    }
    EXPECT_LE(closure, 1e-9) << "lambda=" << lam;
  }
}

TEST(RandomizedVerifier, HundredTrialsNoViolations) {
  const GronwallReport r = verify_gronwall_randomized(100, 2024);
  EXPECT_EQ(r.trials, 100);
  EXPECT_EQ(r.violations, 0);
  EXPECT_LE(r.max_relative_violation, 1e-9);
  EXPECT_GT(r.samples, 0);
  EXPECT_EQ(r.rows.size(), 300u);
  for (const auto& row : r.rows) {
    EXPECT_TRUE(row.pass) << row.check;
    EXPECT_FALSE(row.k.has_value());
  }
}

TEST(RandomizedVerifier, SeedReproducesBitIdenticalReport) {
  const GronwallReport a = verify_gronwall_randomized(5, 77);
  const GronwallReport b = verify_gronwall_randomized(5, 77);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].lhs, b.rows[i].lhs);
    EXPECT_EQ(a.rows[i].rhs, b.rows[i].rhs);
    EXPECT_EQ(a.rows[i].t, b.rows[i].t);
  }
  EXPECT_EQ(a.max_relative_violation, b.max_relative_violation);
  const GronwallReport c = verify_gronwall_randomized(5, 78);
  EXPECT_NE(a.rows[0].rhs, c.rows[0].rhs);
}

TEST(RandomizedVerifier, ZeroTrialsIsEmptyPass) {
  const GronwallReport r = verify_gronwall_randomized(0, 1);
  EXPECT_EQ(r.trials, 0);
  EXPECT_EQ(r.violations, 0);
  EXPECT_TRUE(r.rows.empty());
  EXPECT_TRUE(all_pass(r.rows));
}
