#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "poincare/solver.hpp"

using namespace poincare;

namespace {

solver::Solution solve_e1(int i, solver::SolveOptions o = {}) {
  const auto p = make_problem({-6, 11, -6}, {"1/(1+t)^3", "0", "0"});
  const auto s = spectral::find_roots(p.a);
  const auto table = reduction::build_reduced_rhs(3);
  if (o.t_max == 0.0) o.t_max = 200.0;
  return solver::solve(p, s, table, i, o);
}

}  // namespace

TEST(Solver, ZeroForcingIsExact) {
  const auto p = make_problem({-6, 11, -6}, {"0", "0", "0"});
  const auto s = spectral::find_roots(p.a);
  const auto table = reduction::build_reduced_rhs(3);
  for (int i = 1; i <= 3; ++i) {
    const auto sol = solver::solve(p, s, table, i, {});
    EXPECT_EQ(sol.certificate.iterations, 1);
    EXPECT_TRUE(sol.certificate.converged);
    EXPECT_EQ(sol.z.norm0, 0.0);
    const auto z0 = sol.op->zero();
    EXPECT_EQ(grid::distance0(sol.op->apply(z0), z0), 0.0);
  }
}

TEST(Solver, AffineOperatorMatchesClosedForm) {
  // z' + 2z = -e^{-3t}, z(0) = 0 (causal kernel): z = e^{-3t} - e^{-2t}
  const auto p = make_problem({-1, 0}, {"exp(-3*t)", "0"});
  const auto s = spectral::find_roots(p.a);
  const auto table = reduction::build_reduced_rhs(2);
  const auto sh = spectral::shift_spectrum(s, 1);
  const green::GreenKernel k(sh);
  const reduction::NumericOmega om(table, s.lambda[0], p.a);
  auto g = std::make_shared<grid::ChebyshevGrid>(0.0, 40.0, 24);
  solver::OperatorOptions opt;
  opt.forcing_only = true;
  const solver::FixedPointOperator op(p, k, om, g, opt);
  const auto z = op.apply(op.zero());
  for (std::size_t q = 0; q < g->size(); q += 7) {
    const double t = g->nodes()[q];
    EXPECT_NEAR(z.values[0][q], std::exp(-3 * t) - std::exp(-2 * t), 1e-13) << t;
  }
}

TEST(Solver, E1Converges) {
  for (int i = 1; i <= 3; ++i) {
    const auto sol = solve_e1(i);
    const auto& c = sol.certificate;
    EXPECT_TRUE(c.converged);
    EXPECT_TRUE(c.valid());
    for (double r : c.ratios) EXPECT_LT(r, 1.0);
    EXPECT_LT(c.final_residual, 1e-8);
    double ode = 0.0;
    for (double v : sol.op->ode_residual(sol.z, sol.b)) ode = std::max(ode, std::abs(v));
    EXPECT_LT(ode, 1e-6);
    // fixed point: one more application moves less than tol
    EXPECT_LT(grid::distance0(sol.op->apply(sol.z), sol.z), 1e-9);
    // decay at the end of the grid
    double end = 0.0;
    for (const auto& v : sol.z.values) end = std::max(end, std::abs(v.back()));
    EXPECT_LT(end, 1e-4);
  }
}

// Reference values from an independent integration of the original and
// Riccati equations (boundary-value solve for the middle root, backward
// integration of the recessive solution for the smallest).
TEST(Solver, E1MatchesReferenceJets) {
  const auto s1 = solve_e1(1);
  EXPECT_EQ(s1.z.values[0][0], 0.0);
  EXPECT_EQ(s1.z.values[1][0], 0.0);
  const auto s2 = solve_e1(2);
  EXPECT_NEAR(s2.z.values[0][0], 0.14653510862221786, 1e-8);
  EXPECT_NEAR(s2.z.values[1][0], 0.14653510862221786, 1e-8);
  EXPECT_NEAR(s2.z.value(0, 1.0), 0.1176668499303535, 1e-8);
  const auto s3 = solve_e1(3);
  EXPECT_NEAR(s3.z.values[0][0], -0.07359856402308684, 1e-8);
  EXPECT_NEAR(s3.z.values[1][0], 0.1408781172546858, 1e-8);
}

TEST(Solver, GridRefinementStable) {
  solver::SolveOptions coarse;
  coarse.grid_points = 20;
  solver::SolveOptions fine;
  fine.grid_points = 40;
  for (int i : {1, 3}) {
    const auto a = solve_e1(i, coarse);
    const auto b = solve_e1(i, fine);
    double gap = 0.0;
    for (double t : {0.0, 0.5, 1.0, 3.0, 10.0, 50.0}) {
      double sum = 0.0;
      for (int j = 0; j < 2; ++j) sum += std::abs(a.z.value(j, t) - b.z.value(j, t));
      gap = std::max(gap, sum);
    }
    EXPECT_LT(gap, 1e-9);
  }
}

TEST(Solver, LipschitzOnBall) {
  const auto sol = solve_e1(2);
  const auto& op = *sol.op;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  auto random_iterate = [&] {
    auto z = op.zero();
    const double c0 = u(rng), c1 = u(rng);
    const auto& nodes = z.grid->nodes();
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const double e = std::exp(-nodes[k]);
      z.values[0][k] = c0 * e;
      z.values[1][k] = -c0 * e + c1 * e * std::sin(nodes[k]);
    }
    z.refresh_norm();
    return z;
  };
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_iterate();
    const auto b = random_iterate();
    const double d = grid::distance0(a, b);
    if (d == 0.0) continue;
    EXPECT_LT(grid::distance0(op.apply(a), op.apply(b)) / d, 1.0);
  }
}

TEST(Solver, LargePerturbationFails) {
  const auto p = make_problem({-6, 11, -6}, {"10", "0", "0"});
  const auto s = spectral::find_roots(p.a);
  const auto table = reduction::build_reduced_rhs(3);
  solver::SolveOptions o;
  o.t_max = 40.0;
  try {
    solver::solve(p, s, table, 1, o);
    FAIL() << "expected a solver failure";
  } catch (const solver::InvarianceViolated& e) {
    EXPECT_FALSE(e.certificate().converged);
  } catch (const solver::DivergenceDetected& e) {
    EXPECT_FALSE(e.certificate().converged);
  }
}

TEST(Solver, CertificateRecordsRegime) {
  solver::SolveOptions o;
  o.eta = 0.3;
  const auto sol = solve_e1(1, o);
  EXPECT_TRUE(sol.certificate.eta_below_one_over_n);
  EXPECT_NE(sol.certificate.summary().find("eta < 1/n"), std::string::npos);
  const auto other = solve_e1(1);
  EXPECT_FALSE(other.certificate.eta_below_one_over_n);
}
