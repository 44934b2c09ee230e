// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "poincare/asymptotics.hpp"
#include "poincare/green.hpp"
#include "poincare/hypotheses.hpp"
#include "poincare/oracle.hpp"
#include "poincare/printed_formulas.hpp"
#include "poincare/reduction.hpp"
#include "poincare/solver.hpp"
#include "poincare/spectral.hpp"

using namespace poincare;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int failures = 0;

void report(const char* id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0.0 && secs > limit_s) {
    o.pass = false;
    o.detail += fmt("; took %.2f s, limit %.0f s", secs, limit_s);
  }
  if (!o.pass) ++failures;
  std::printf("%s %-4s %-34s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::vector<double> distinct_roots(std::mt19937_64& rng, int n, double lo, double hi, double sep) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> roots;
  while (static_cast<int>(roots.size()) < n) {
    const double x = u(rng);
    if (std::all_of(roots.begin(), roots.end(), [&](double y) { return std::abs(x - y) >= sep; })) roots.push_back(x);
  }
  std::sort(roots.rbegin(), roots.rend());
  return roots;
}

struct E1 {
  Problem problem = make_problem({-6, 11, -6}, {"1/(1+t)^3", "0", "0"});
  spectral::Spectrum spectrum;
  std::vector<std::shared_ptr<const solver::Solution>> solutions;
  std::shared_ptr<asymptotics::FundamentalSystem> fs;
};

std::vector<std::shared_ptr<const solver::Solution>> solve_all(const Problem& p, const spectral::Spectrum& s,
                                                                double t_max) {
  const auto table = reduction::build_reduced_rhs(p.order);
  solver::SolveOptions o;
  o.t_max = t_max;
  std::vector<std::shared_ptr<const solver::Solution>> out;
  for (int i = 1; i <= p.order; ++i) {
    out.push_back(std::make_shared<solver::Solution>(solver::solve(p, s, table, i, o)));
  }
  return out;
}

const E1& e1() {
  static const E1 e = [] {
    E1 out;
    out.spectrum = spectral::find_roots(out.problem.a);
    out.solutions = solve_all(out.problem, out.spectrum, 200.0);
    out.fs = std::make_shared<asymptotics::FundamentalSystem>(out.problem, out.spectrum, out.solutions);
    return out;
  }();
  return e;
}

Outcome spectrum_shift() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> order(2, 6);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = order(rng);
    const auto lambda = distinct_roots(rng, n, -3.0, 3.0, 0.1);
    const auto a = spectral::monic_from_roots(lambda);
    const auto s = spectral::find_roots(a);
    for (int i = 1; i <= n; ++i) {
      const double mu = s.lambda[static_cast<std::size_t>(i - 1)];
      const auto reduced = spectral::real_simple_roots(spectral::reduced_linear_coefficients(a, mu));
      std::vector<double> expected;
      for (int j = 1; j <= n; ++j) {
        if (j != i) expected.push_back(lambda[static_cast<std::size_t>(j - 1)] - lambda[static_cast<std::size_t>(i - 1)]);
      }
      std::sort(expected.rbegin(), expected.rend());
      if (reduced.size() != expected.size()) return {false, fmt("trial %d: %zu reduced roots", trial, reduced.size())};
      for (std::size_t k = 0; k < expected.size(); ++k) worst = std::max(worst, std::abs(reduced[k] - expected[k]));
    }
  }
  return {worst < 1e-8, fmt("200 polynomials, max root error %.2e (limit 1e-8)", worst)};
}

Outcome symbolic_identities() {
  for (int n = 2; n <= 6; ++n) {
    const auto parts = reduction::build_reduced_parts(n);
    const auto table = reduction::build_reduced_rhs(n);
    const auto& L = table.layout;
    reduction::Polynomial omega0(L.count());
    for (int l = 0; l < n; ++l) omega0 -= L.var(L.mu()).pow(static_cast<unsigned>(l)) * L.var(L.r(l));
    if (!(table.omega0() == omega0)) return {false, fmt("n=%d: Omega_0 differs from -sum mu^l r_l", n)};
    if (!(table.full() - parts.linear - parts.constant == -parts.Q)) return {false, fmt("n=%d: sum rule", n)};
    reduction::Polynomial ones(L.count());
    for (const auto& [alpha, c] : table.omega) ones += c;
    if (!(ones - table.omega0() == table.h_hat())) return {false, fmt("n=%d: H-hat", n)};
  }
  return {true, "n = 2..6 exact in rational arithmetic"};
}

Outcome printed_cross_check() {
  std::string detail;
  for (int n : {3, 4}) {
    const auto r = printed::cross_check(n, 100);
    const auto path = std::filesystem::path("printed_crosscheck_n" + std::to_string(n) + ".txt");
    std::ofstream(path) << r.text;
    if (r.text.empty() || !std::filesystem::exists(path)) return {false, fmt("n=%d: no report", n)};
    if (!r.agrees && r.mismatches.empty()) return {false, fmt("n=%d: disagreement without mismatches", n)};
    if (r.agrees && r.max_abs_gap > 1e-12) return {false, fmt("n=%d: numeric gap %.2e", n, r.max_abs_gap)};
    detail += fmt("%sn=%d %s (%zu mismatching monomials, report %s)", detail.empty() ? "" : "; ", n,
                  r.agrees ? "agrees" : "disagrees", r.mismatches.size(), path.string().c_str());
  }
  return {true, detail};
}

Outcome green_kernels() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dim(1, 5);
  double worst_res = 0.0;
  double worst_jump = 0.0;
  int cases[3] = {0, 0, 0};  // all negative, all positive, mixed
  for (int trial = 0; trial < 20; ++trial) {
    const int d = trial < 6 ? 1 + trial % 5 : dim(rng);
    auto gamma = distinct_roots(rng, d, 0.2, 3.0, 0.2);
    const int kind = trial % 3;
    if (kind == 0) {
      for (double& g : gamma) g = -g;
    } else if (kind == 2 && d >= 2) {
      for (std::size_t k = 0; k < gamma.size(); k += 2) gamma[k] = -gamma[k];
    }
    std::sort(gamma.rbegin(), gamma.rend());
    spectral::ShiftedSpectrum s;
    s.gamma = gamma;
    s.case_index = spectral::classify_case(gamma);
    s.base_index = s.case_index;
    if (s.case_index == 1) ++cases[0];
    else if (s.case_index == d + 1) ++cases[1];
    else ++cases[2];
    const green::GreenKernel k(s);
    const auto c = spectral::monic_from_roots(gamma);
    const double s0 = 0.4;
    const double below = k.derivative(s0 - 1e-13, s0, d - 1);
    const double above = k.derivative(s0 + 1e-13, s0, d - 1);
    worst_jump = std::max(worst_jump, std::abs(above - below - 1.0));
    for (int q = 1; q <= 20; ++q) {
      for (double side : {-1.0, 1.0}) {
        const double t = s0 + side * 0.25 * q;
        double res = k.derivative(t, s0, d);
        double scale = std::abs(res);
        for (int m = 0; m < d; ++m) {
          const double term = c[static_cast<std::size_t>(m)] * k.derivative(t, s0, m);
          res += term;
          scale = std::max(scale, std::abs(term));
        }
        worst_res = std::max(worst_res, std::abs(res) / std::max(1.0, scale));
      }
    }
  }
  const bool all_kinds = cases[0] > 0 && cases[1] > 0 && cases[2] > 0;
  return {all_kinds && worst_res < 1e-10 && worst_jump < 1e-10,
          fmt("cases %d/%d/%d (causal/anticausal/mixed), residual %.2e, jump error %.2e", cases[0], cases[1],
              cases[2], worst_res, worst_jump)};
}

Outcome e1_convergence() {
  const auto& e = e1();
  bool ok = true;
  std::string detail;
  for (const auto& s : e.solutions) {
    const auto& c = s->certificate;
    double ratio = 0.0;
    for (double r : c.ratios) ratio = std::max(ratio, r);
    double ode = 0.0;
    for (double v : s->op->ode_residual(s->z, s->b)) ode = std::max(ode, std::abs(v));
    ok = ok && c.converged && ratio < 1.0 && c.final_residual < 1e-8 && ode < 1e-6;
    detail += fmt("%si=%d: %d it, ratio %.3f, residual %.1e, ode %.1e", detail.empty() ? "" : "; ", s->index,
                  c.iterations, ratio, c.final_residual, ode);
  }
  return {ok, detail};
}

Outcome oracle_equivalence() {
  const auto& e = e1();
  bool ok = true;
  std::string detail;
  for (int i = 1; i <= 3; ++i) {
    const auto c = oracle::compare_to_fixed_point(*e.fs, e.problem, i, 10.0, 1e-10);
    const double limit = c.log_derivative ? 1e-3 : 1e-4;
    ok = ok && c.max_error < limit;
    detail += fmt("%si=%d %s %.1e", detail.empty() ? "" : "; ", i, c.log_derivative ? "y'/y" : "value", c.max_error);
  }
  return {ok, detail};
}

Outcome asymptotic_ratios() {
  const auto& e = e1();
  double worst = 0.0;
  for (int i = 1; i <= 3; ++i) worst = std::max(worst, std::abs(e.fs->ratios(i, 50.0)[1] - e.fs->lambda(i)));
  return {worst < 0.01, fmt("max |y'/y - lambda| at t=50: %.2e", worst)};
}

Outcome wronskian() {
  const auto [w, v] = asymptotics::wronskian_diagnostic(*e1().fs, 50.0);
  const double rel = std::abs(w - v) / std::abs(v);
  return {std::abs(v + 2.0) < 1e-12 && rel < 0.02, fmt("W/prod y = %.6f, expected %.1f, rel %.1e", w, v, rel)};
}

Outcome envelope_stability() {
  const auto& e = e1();
  bool ok = true;
  std::string detail;
  for (int i = 1; i <= 3; ++i) {
    const double beta = asymptotics::beta_range(e.spectrum, i).midpoint();
    const auto c = asymptotics::check_envelope(*e.fs, e.problem, i, beta, 10.0, 100.0);
    ok = ok && c.pass;
    detail += fmt("%si=%d beta=%.2f sup %.3g -> %.3g", detail.empty() ? "" : "; ", i, beta, c.sup, c.sup_extended);
  }
  return {ok, detail};
}

Outcome quadrature_identity(bool corrected) {
  auto H = [](double s) { return std::exp(-2.0 * s); };
  double worst = 0.0;
  for (double a : {1.0, -1.0}) {
    for (double t : {1.0, 5.0}) {
      const auto id = asymptotics::quadrature_identity(H, a, 0.0, t);
      worst = std::max(worst, std::abs(id.lhs - (corrected ? id.corrected_rhs : id.printed_rhs)));
    }
  }
  return {worst < 1e-8, fmt("max |lhs - rhs| %.2e over a = +-1, t = 1, 5 (limit 1e-8)%s", worst,
                            corrected ? ", last term -(1/a) int H" : ", as printed")};
}

Outcome trivial_limit() {
  const auto p = make_problem({-6, 11, -6}, {"0", "0", "0"});
  const auto s = spectral::find_roots(p.a);
  const auto sols = solve_all(p, s, 40.0);
  const asymptotics::FundamentalSystem fs(p, s, sols);
  double z_max = 0.0;
  for (const auto& sol : sols) {
    for (const auto& row : sol->z.values) {
      for (double v : row) z_max = std::max(z_max, std::abs(v));
    }
  }
  double y_err = 0.0;
  for (int i = 1; i <= 3; ++i) {
    for (double t = 0.0; t <= 40.0; t += 0.5) {
      y_err = std::max(y_err, std::abs(std::expm1(fs.log_y(i, t) - fs.lambda(i) * t)));
    }
  }
  const auto table = reduction::build_reduced_rhs(3);
  hypotheses::Options ho;
  ho.t_max = 40.0;
  double rl = 0.0;
  for (int i = 1; i <= 3; ++i) {
    const auto rep = hypotheses::evaluate_hypotheses(p, s, table, i, ho);
    for (const auto& x : rep.r_samples) rl = std::max(rl, std::abs(x.value));
    for (const auto& x : rep.l_samples.at(0)) rl = std::max(rl, std::abs(x.value));
  }
  return {z_max == 0.0 && y_err < 1e-9 && rl == 0.0,
          fmt("max |z| %.1e, max rel y error %.1e, max |R|,|L1| %.1e", z_max, y_err, rl)};
}

}  // namespace

int main() {
  report("C1", "spectrum shift", 10.0, spectrum_shift);
  report("C2", "symbolic identities", 30.0, symbolic_identities);
  report("C3", "printed-formula cross-check", 0.0, printed_cross_check);
  report("C4", "Green kernel", 5.0, green_kernels);
  report("C5", "fixed-point convergence (E1)", 60.0, e1_convergence);
  report("C6", "oracle equivalence (E1)", 0.0, oracle_equivalence);
  report("C7", "asymptotic ratios (E1, t=50)", 0.0, asymptotic_ratios);
  report("C8", "Wronskian asymptote (E1, t=50)", 0.0, wronskian);
  report("C9", "envelope stability (E1)", 0.0, envelope_stability);
  report("C10", "quadrature identity", 0.0, [] { return quadrature_identity(false); });
  report("C11", "trivial limit", 0.0, trivial_limit);
  const int criteria_failures = failures;
  report("C10'", "quadrature identity, sign corrected", 0.0, [] { return quadrature_identity(true); });
  std::printf("%d of 11 criteria failed\n", criteria_failures);
  return criteria_failures == 0 ? 0 : 1;
}
