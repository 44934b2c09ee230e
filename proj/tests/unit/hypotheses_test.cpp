#include <gtest/gtest.h>

#include <cmath>

#include "poincare/hypotheses.hpp"

using namespace poincare;
using hypotheses::Verdict;

namespace {

struct Setup {
  Problem problem;
  spectral::Spectrum spectrum;
  reduction::OmegaTable table;
  spectral::ShiftedSpectrum shifted;
  green::GreenKernel kernel;
  reduction::NumericOmega omega;
  hypotheses::Context context() const { return {&problem, &kernel, &omega, 1e-12, 1e-15}; }
};

Setup make(std::vector<double> a, std::vector<std::string> r, int i) {
  auto p = make_problem(std::move(a), r);
  auto s = spectral::find_roots(p.a);
  auto t = reduction::build_reduced_rhs(p.order);
  auto sh = spectral::shift_spectrum(s, i);
  green::GreenKernel k(sh);
  reduction::NumericOmega om(t, s.lambda[static_cast<std::size_t>(i - 1)], p.a);
  return {p, s, t, sh, k, om};
}

}  // namespace

TEST(Hypotheses, ForcedResponseClosedForm) {
  // gamma = -2 (causal): R(t) = |int_0^t e^{-2(t-s)} (-e^{-3s}) ds| = e^{-2t} - e^{-3t}
  const auto s = make({-1, 0}, {"exp(-3*t)", "0"}, 1);
  const auto c = s.context();
  EXPECT_NEAR(hypotheses::compute_R(c, 0.0).value, 0.0, 1e-16);
  for (double t : {0.5, 1.0, 3.0}) {
    EXPECT_NEAR(hypotheses::compute_R(c, t).value, std::exp(-2 * t) - std::exp(-3 * t), 1e-13);
  }
  EXPECT_LT(hypotheses::compute_R(c, 20.0).value, 1e-15);
}

TEST(Hypotheses, ZeroPerturbation) {
  const auto s = make({-1, 0}, {"0", "0"}, 1);
  const auto c = s.context();
  for (double t : {0.0, 1.0, 10.0}) {
    EXPECT_EQ(hypotheses::compute_R(c, t).value, 0.0);
    EXPECT_EQ(hypotheses::compute_L(c, t, 1).value, 0.0);
  }
  // |Omega_(2)| = 1: L_2(t) = int_0^t e^{-2(t-s)} ds -> 1/2
  EXPECT_NEAR(hypotheses::compute_L(c, 20.0, 2).value, 0.5, 1e-15);
  EXPECT_NEAR(hypotheses::compute_L(c, 1.0, 2).value, 0.5 * (1 - std::exp(-2.0)), 1e-14);
}

TEST(Hypotheses, Phi1) {
  auto sh = [](std::vector<double> g) {
    spectral::ShiftedSpectrum s;
    s.gamma = std::move(g);
    s.case_index = spectral::classify_case(s.gamma);
    return s;
  };
  EXPECT_DOUBLE_EQ(hypotheses::compute_phi1(sh({2, 1})), 5.0);
  EXPECT_DOUBLE_EQ(hypotheses::compute_phi1(sh({1, -1})), 2.0);
  EXPECT_DOUBLE_EQ(hypotheses::compute_phi1(sh({-0.7})), 1.0);
}

TEST(Hypotheses, SigmaClosedForm) {
  const auto grid = hypotheses::geometric_grid(0.0, 50.0);
  // sup_t int_t^inf e^{2(t-s)} e^{-3s} ds = sup e^{-3t}/5 = 1/5
  const auto est = hypotheses::estimate_sigma(-2.0, [](double s) { return std::exp(-3.0 * s); }, 0.0, grid);
  EXPECT_NEAR(est.value, 0.2, 1e-10);
  EXPECT_NEAR(est.t_at, 0.0, 1e-6);
  EXPECT_TRUE(est.converged);
  // constant mass on the bounded side: mass / |gamma|
  const auto flat = hypotheses::estimate_sigma(-2.0, [](double) { return 1.0; }, 0.0, grid);
  EXPECT_NEAR(flat.value, 0.5, 1e-10);
  // scaling the mass never decreases sigma
  const auto big = hypotheses::estimate_sigma(-2.0, [](double s) { return 2.0 * std::exp(-3.0 * s); }, 0.0, grid);
  EXPECT_GE(big.value, est.value);
}

TEST(Hypotheses, ThresholdSemantics) {
  const auto grid = hypotheses::geometric_grid(0.0, 10.0);
  EXPECT_EQ(grid.front(), 0.0);
  EXPECT_EQ(grid.back(), 10.0);
  EXPECT_EQ(hypotheses::worst(Verdict::Pass, Verdict::Fail), Verdict::Fail);
  EXPECT_EQ(hypotheses::worst(Verdict::PassNumerical, Verdict::Indeterminate), Verdict::Indeterminate);
  EXPECT_EQ(hypotheses::to_string(Verdict::PassNumerical), "pass_numerical");
}

TEST(Hypotheses, UnperturbedReport) {
  const auto p = make_problem({-6, 11, -6}, {"0", "0", "0"});
  const auto table = reduction::build_reduced_rhs(3);
  const auto reports = hypotheses::evaluate_all(p, table, {});
  ASSERT_EQ(reports.size(), 3u);
  for (const auto& rep : reports) {
    EXPECT_TRUE(rep.h1);
    for (const auto& s : rep.r_samples) EXPECT_EQ(s.value, 0.0);
    for (const auto& s : rep.l_samples[0]) EXPECT_EQ(s.value, 0.0);
    EXPECT_EQ(rep.rows.front().hypothesis, "H1");
    EXPECT_EQ(rep.rows.front().verdict, Verdict::Pass);
  }
}

TEST(Hypotheses, ForcedProblemDecays) {
  const auto p = make_problem({-6, 11, -6}, {"1/(1+t)^3", "0", "0"});
  const auto s = spectral::find_roots(p.a);
  const auto table = reduction::build_reduced_rhs(3);
  const auto rep = hypotheses::evaluate_hypotheses(p, s, table, 1, {});
  EXPECT_GT(rep.r_samples[1].value, rep.r_samples.back().value);
  EXPECT_LT(rep.r_samples.back().value, 1e-6);
  EXPECT_GT(rep.phi1, 0.0);
  for (const auto& row : rep.rows) {
    if (row.hypothesis == "R3" && row.verdict == Verdict::Pass) EXPECT_LT(row.value, 1.0);
  }
}

TEST(Hypotheses, RepeatedRootsSuppress) {
  const auto p = make_problem({1, -2}, {"0", "0"});
  const auto table = reduction::build_reduced_rhs(2);
  const auto reports = hypotheses::evaluate_all(p, table, {});
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_FALSE(reports[0].h1);
  EXPECT_EQ(reports[0].overall(), Verdict::Fail);
  bool suppressed = false;
  for (const auto& row : reports[0].rows) suppressed = suppressed || row.verdict == Verdict::Suppressed;
  EXPECT_TRUE(suppressed);
  EXPECT_NE(hypotheses::to_csv(reports).find("hypothesis,i,quantity,value,threshold,verdict"), std::string::npos);
}

TEST(Hypotheses, TighterToleranceReproduces) {
  const auto s = make({-6, 11, -6}, {"1/(1+t)^3", "0", "0"}, 2);
  auto c = s.context();
  c.rel_tol = 1e-9;
  const double loose = hypotheses::compute_R(c, 4.0).value;
  c.rel_tol = 1e-10;
  const double tight = hypotheses::compute_R(c, 4.0).value;
  EXPECT_NEAR(loose, tight, 1e-8);
}
