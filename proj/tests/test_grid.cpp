#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "grid.hpp"
#include "oracles.hpp"

using namespace hprandtl;

namespace {

double sin_pi(double y) { return std::sin(oracle::pi * y); }

ComplexField random_field(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  ComplexField f(n);
  for (auto& v : f) v = {d(rng), d(rng)};
  return f;
}

double max_abs_diff(const ComplexField& a, const ComplexField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(Grid, SmallGridNodes) {
  const Grid g = build_grid(3);
  EXPECT_DOUBLE_EQ(g.h, 0.25);
  ASSERT_EQ(g.nodes.size(), 3u);
  EXPECT_DOUBLE_EQ(g.nodes[0], 0.25);
  EXPECT_DOUBLE_EQ(g.nodes[1], 0.5);
  EXPECT_DOUBLE_EQ(g.nodes[2], 0.75);
}

TEST(Grid, SpacingAndOrdering) {
  const Grid g = build_grid(127);
  EXPECT_DOUBLE_EQ(g.h, 1.0 / 128.0);
  EXPECT_NEAR(g.h * (g.n + 1), 1.0, 1e-15);
  for (int j = 1; j < g.n; ++j) EXPECT_LT(g.nodes[j - 1], g.nodes[j]);
  EXPECT_GT(g.nodes.front(), 0.0);
  EXPECT_LT(g.nodes.back(), 1.0);
}

TEST(Grid, RejectsTooFewNodes) {
  EXPECT_THROW(build_grid(2), std::invalid_argument);
  EXPECT_THROW(build_grid(-5), std::invalid_argument);
}

TEST(Grid, MismatchedFieldIsRejected) {
  const Grid g = build_grid(7);
  const ComplexField f(8);
  EXPECT_THROW(apply_dirichlet_laplacian(f, g), GridMismatch);
  EXPECT_THROW(cumulative_integral(f, g), GridMismatch);
  EXPECT_THROW(l2_norm(f, g), GridMismatch);
  EXPECT_THROW(derivative_norm(f, g), GridMismatch);
}

TEST(Laplacian, ExactOnQuadratic) {
  const Grid g = build_grid(31);
  ComplexField f(g.n);
  for (int j = 0; j < g.n; ++j) f[j] = g.nodes[j] * (1.0 - g.nodes[j]);
  for (const auto& v : apply_dirichlet_laplacian(f, g)) EXPECT_NEAR(v.real(), -2.0, 1e-9);
}

TEST(Laplacian, SineEigenfunction) {
  const Grid g = build_grid(127);
  const ComplexField f = oracle::sample(g.n, sin_pi);
  const ComplexField lf = apply_dirichlet_laplacian(f, g);
  double worst = 0.0;
  for (int j = 0; j < g.n; ++j) {
    const double expect = -oracle::pi * oracle::pi * f[j].real();
    worst = std::max(worst, std::abs(lf[j].real() - expect) / std::abs(expect));
  }
  EXPECT_LE(worst, 1e-3);
}

TEST(Laplacian, SecondOrderConvergence) {
  for (int m : {1, 2, 3}) {
    std::vector<double> errs;
    for (int n : {63, 127, 255}) {
      const Grid g = build_grid(n);
      ComplexField f(n);
      for (int j = 0; j < n; ++j) f[j] = std::sin(m * oracle::pi * g.nodes[j]);
      const ComplexField lf = apply_dirichlet_laplacian(f, g);
      double e = 0.0;
      for (int j = 0; j < n; ++j) e = std::max(e, std::abs(lf[j] + m * m * oracle::pi * oracle::pi * f[j]));
      errs.push_back(e);
    }
    EXPECT_GE(oracle::observed_order(errs[0], errs[1]), 1.9) << "m=" << m;
    EXPECT_GE(oracle::observed_order(errs[1], errs[2]), 1.9) << "m=" << m;
  }
}

TEST(CumulativeIntegral, ConstantGivesShiftedIdentity) {
  const Grid g = build_grid(63);
  const ComplexField one(g.n, 1.0);
  const ComplexField phi = cumulative_integral(one, g);
  for (int j = 0; j < g.n; ++j) {
    EXPECT_NEAR(phi[j].real(), g.nodes[j] - 0.5 * g.h, 1e-13);
    EXPECT_NEAR(phi[j].real(), g.nodes[j], g.h);
  }
}

TEST(CumulativeIntegral, SineAntiderivative) {
  std::vector<double> errs;
  for (int n : {63, 127, 255}) {
    const Grid g = build_grid(n);
    const ComplexField phi = cumulative_integral(oracle::sample(n, sin_pi), g);
    double e = 0.0;
    for (int j = 0; j < n; ++j) {
      e = std::max(e, std::abs(phi[j].real() - (1.0 - std::cos(oracle::pi * g.nodes[j])) / oracle::pi));
    }
    errs.push_back(e);
  }
  EXPECT_LT(errs[2], 1e-5);
  EXPECT_GE(oracle::observed_order(errs[0], errs[1]), 1.9);
  EXPECT_GE(oracle::observed_order(errs[1], errs[2]), 1.9);
}

TEST(Norms, SineL2) {
  const Grid g = build_grid(255);
  EXPECT_NEAR(l2_norm(oracle::sample(g.n, sin_pi), g), std::sqrt(0.5), 1e-12);
}

TEST(Norms, ZeroAndHomogeneity) {
  const Grid g = build_grid(31);
  EXPECT_EQ(l2_norm(zeros(g), g), 0.0);
  std::mt19937_64 rng(3);
  const ComplexField f = random_field(g.n, rng);
  const std::complex<double> c{-2.5, 1.25};
  ComplexField cf(g.n);
  for (int j = 0; j < g.n; ++j) cf[j] = c * f[j];
  EXPECT_NEAR(l2_norm(cf, g), std::abs(c) * l2_norm(f, g), 1e-12 * l2_norm(cf, g));
}

TEST(Norms, DerivativeNormIsLaplacianQuadraticForm) {
  const Grid g = build_grid(40);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexField f = random_field(g.n, rng);
    const ComplexField lf = apply_dirichlet_laplacian(f, g);
    std::complex<double> form = 0.0;
    for (int j = 0; j < g.n; ++j) form += std::conj(f[j]) * lf[j];
    form *= g.h;
    const double d = derivative_norm(f, g);
    EXPECT_NEAR(-form.real(), d * d, 1e-10 * d * d);
  }
}

TEST(Norms, DerivativeNormOfSine) {
  const Grid g = build_grid(255);
  EXPECT_NEAR(derivative_norm(oracle::sample(g.n, sin_pi), g), oracle::pi * std::sqrt(0.5), 1e-4);
}

TEST(Properties, DiscretePoincare) {
  std::mt19937_64 rng(7);
  for (int n : {3, 10, 63, 200}) {
    const Grid g = build_grid(n);
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexField f = random_field(n, rng);
      EXPECT_LE(l2_norm(cumulative_integral(f, g), g), l2_norm(f, g) * (1.0 + 10.0 * g.h));
    }
  }
}

TEST(Properties, OperatorsAreLinear) {
  const Grid g = build_grid(50);
  std::mt19937_64 rng(5);
  const ComplexField a = random_field(g.n, rng);
  const ComplexField b = random_field(g.n, rng);
  const std::complex<double> al{0.3, -1.7}, be{2.2, 0.4};
  ComplexField mix(g.n);
  for (int j = 0; j < g.n; ++j) mix[j] = al * a[j] + be * b[j];

  auto check = [&](auto op) {
    const ComplexField lhs = op(mix);
    const ComplexField oa = op(a), ob = op(b);
    ComplexField rhs(g.n);
    double scale = 0.0;
    for (int j = 0; j < g.n; ++j) {
      rhs[j] = al * oa[j] + be * ob[j];
      scale = std::max(scale, std::abs(rhs[j]));
    }
    EXPECT_LE(max_abs_diff(lhs, rhs), 1e-12 * scale);
  };
  check([&](const ComplexField& f) { return apply_dirichlet_laplacian(f, g); });
  check([&](const ComplexField& f) { return cumulative_integral(f, g); });
  check([&](const ComplexField& f) { return centered_derivative(f, g); });
}
