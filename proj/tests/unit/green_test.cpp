#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "poincare/green.hpp"
#include "poincare/spectral.hpp"

using namespace poincare;

namespace {

spectral::ShiftedSpectrum shifted(std::vector<double> gamma) {
  spectral::ShiftedSpectrum s;
  s.gamma = std::move(gamma);
  s.case_index = spectral::classify_case(s.gamma);
  s.base_index = s.case_index;
  return s;
}

// q(d/dt) g with q(s) = prod (s - gamma_l), derivatives from the closed form
double homogeneous_residual(const green::GreenKernel& k, double t, double s) {
  const auto c = spectral::monic_from_roots(k.gamma());
  const int d = static_cast<int>(c.size());
  double res = k.derivative(t, s, d);
  for (int m = 0; m < d; ++m) res += c[static_cast<std::size_t>(m)] * k.derivative(t, s, m);
  return res;
}

}  // namespace

TEST(Green, Upsilon) {
  const std::vector<double> v{1, 2, 3};
  EXPECT_DOUBLE_EQ(green::upsilon(v, 0), 2.0);
  EXPECT_DOUBLE_EQ(green::upsilon(v, 2), 2.0);
  EXPECT_DOUBLE_EQ(green::upsilon(std::vector<double>{0.7}, 1), 1.0);
  std::vector<double> wide{9, 7, 4, 2, 1, -1, -3, -6};
  double direct = 1.0;
  for (std::size_t i = 0; i < wide.size(); ++i)
    for (std::size_t j = i + 1; j < wide.size(); ++j) direct *= wide[j] - wide[i];
  EXPECT_NEAR(green::upsilon(wide, 0) / direct, 1.0, 1e-12);
}

TEST(Green, AnticausalFirstOrder) {
  const green::GreenKernel k(shifted({2.0}));
  // g(t,s) = -e^{2(t-s)} for s > t, 0 for s <= t
  EXPECT_EQ(k(1.0, 0.5), 0.0);
  EXPECT_NEAR(k.derivative(0.0, std::log(2.0) / 2.0, 0), -0.5, 1e-15);
  EXPECT_NEAR(k.jump(), 1.0, 1e-14);
  EXPECT_FALSE(k.printed_convention_matches());
}

TEST(Green, CausalFirstOrder) {
  const green::GreenKernel k(shifted({-1.0}));
  EXPECT_NEAR(k(2.0, 1.0), std::exp(-1.0), 1e-15);
  EXPECT_EQ(k(1.0, 2.0), 0.0);
  EXPECT_NEAR(k.jump(), 1.0, 1e-14);
}

TEST(Green, MiddleCaseContinuity) {
  const green::GreenKernel k(shifted({1.0, -1.0}));
  const double s = 0.3, h = 1e-9;
  EXPECT_NEAR(k(s + h, s), k(s - h, s), 1e-8);
  EXPECT_NEAR(k.derivative(s + h, s, 1) - k.derivative(s - h, s, 1), 1.0, 1e-8);
  EXPECT_TRUE(std::isfinite(k(s, s)));
}

TEST(Green, WeightsAndJumpRule) {
  const green::GreenKernel k(shifted({2.0, 1.0}));
  double jump = 0.0;
  for (std::size_t l = 0; l < k.gamma().size(); ++l) jump += k.weights()[l] * k.gamma()[l];
  EXPECT_NEAR(jump, 1.0, 1e-14);
}

TEST(Green, RandomSpectraResidualAndJump) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> g(-3.0, 3.0);
  std::uniform_int_distribution<int> dim(1, 4);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = dim(rng);
    std::vector<double> gamma;
    while (static_cast<int>(gamma.size()) < d) {
      const double x = g(rng);
      bool ok = std::abs(x) > 0.2;
      for (double y : gamma) ok = ok && std::abs(x - y) > 0.2;
      if (ok) gamma.push_back(x);
    }
    std::sort(gamma.rbegin(), gamma.rend());
    const green::GreenKernel k(shifted(gamma));
    EXPECT_NEAR(k.jump(), 1.0, 1e-10);
    const double s = 0.7;
    const int n = d + 1;
    const double h = 1e-7;
    EXPECT_NEAR(k.derivative(s + h, s, n - 2) - k.derivative(s - h, s, n - 2), 1.0, 1e-6);
    for (int q = 1; q <= 10; ++q) {
      for (double side : {-1.0, 1.0}) {
        const double t = s + side * 0.3 * q;
        double scale = 0.0;
        for (int j = 0; j <= d; ++j) scale = std::max(scale, std::abs(k.derivative(t, s, j)));
        EXPECT_LE(std::abs(homogeneous_residual(k, t, s)), 1e-10 * std::max(1.0, scale));
      }
    }
  }
}

TEST(Green, Support) {
  const green::GreenKernel first(shifted({-1.0, -2.0}));
  const green::GreenKernel last(shifted({2.0, 1.0}));
  const green::GreenKernel middle(shifted({1.0, -1.0}));
  for (double u : {0.1, 1.0, 5.0}) {
    EXPECT_EQ(first(0.0, u), 0.0);  // s > t
    EXPECT_EQ(last(u, 0.0), 0.0);   // s < t
    EXPECT_NE(middle(0.0, u), 0.0);
    EXPECT_NE(middle(u, 0.0), 0.0);
  }
  EXPECT_LT(std::abs(middle(50.0, 0.0)), 1e-10);
  EXPECT_LT(std::abs(middle(0.0, 50.0)), 1e-10);
  EXPECT_LT(std::abs(first(50.0, 0.0)), 1e-10);
  EXPECT_LT(std::abs(last(0.0, 50.0)), 1e-10);
}
