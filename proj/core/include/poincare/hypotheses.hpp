#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "poincare/green.hpp"
#include "poincare/problem.hpp"
#include "poincare/reduction.hpp"
#include "poincare/spectral.hpp"

namespace poincare::hypotheses {

enum class Verdict { Pass, PassNumerical, Fail, Indeterminate, Suppressed };

std::string_view to_string(Verdict v);
/// The more pessimistic of two verdicts (Fail > Indeterminate > PassNumerical > Pass).
Verdict worst(Verdict a, Verdict b);

struct Sample {
  double t = 0.0;
  double value = 0.0;
};

/// A kernel integral at one t, with the quadrature's own verdict.
struct Integral {
  double value = 0.0;
  bool converged = true;
};

/// Everything the integrals need for one mu.
struct Context {
  const Problem* problem = nullptr;
  const green::GreenKernel* kernel = nullptr;
  const reduction::NumericOmega* omega = nullptr;
  double rel_tol = 1e-10;
  double tail_tol = 1e-14;
};

/// sum_j | int d^j g/dt^j (t,s) w(s) ds | for a forcing w on the kernel's support.
Integral forced_response(const Context& c, double t, const std::function<double(double)>& w);

/// R(t): the forced response to Omega_0.
Integral compute_R(const Context& c, double t);

/// L_k(t) = int [sum_j |d^j g/dt^j|] sum_{|alpha|=k} |Omega_alpha| ds.
Integral compute_L(const Context& c, double t, int k);

/// int sum_j |d^j g/dt^j (t,s)| ds over the kernel's support.
Integral kernel_mass(const Context& c, double t);

/// |Upsilon_0|^-1 sum_l |Upsilon_l| sum_{j<=n-2} |gamma_l|^j.
double compute_phi1(const spectral::ShiftedSpectrum& gamma);

struct SigmaEstimate {
  double gamma = 0.0;
  double value = 0.0;
  double t_at = 0.0;  // where the sup was attained
  bool converged = true;
};

/// sup over t of int e^{-gamma (t-s)} mass(s) ds, the integral taken where
/// the exponential is at most 1 (s >= t for gamma < 0, t0 <= s <= t for
/// gamma > 0). The sup is taken over `t_grid` and refined by golden-section
/// search around the best sample.
SigmaEstimate estimate_sigma(double gamma, const std::function<double(double)>& mass, double t0,
                             const std::vector<double>& t_grid, double rel_tol = 1e-10);

/// sigma with the nonlinear coefficient mass sum_{|alpha|>=1} |Omega_alpha|.
SigmaEstimate estimate_sigma(const Context& c, double gamma, const std::vector<double>& t_grid);

/// t0 + {0, 1, 2, 4, ...} capped at t_max, with t_max always included.
std::vector<double> geometric_grid(double t0, double t_max);

struct Row {
  std::string hypothesis;
  int i = 0;
  std::string quantity;
  double value = 0.0;
  double threshold = 0.0;
  Verdict verdict = Verdict::Indeterminate;
};

struct HypothesisReport {
  int i = 0;
  double mu = 0.0;
  bool h1 = false;
  std::string h1_message;
  std::vector<Sample> r_samples;
  std::vector<std::vector<Sample>> l_samples;  // index k-1 for k = 1..n
  std::vector<bool> l_monotone;                // nonincreasing over the samples
  double l_tail_sum = 0.0;                     // sum_{k>=2} L_k at the last sample
  double phi1 = 0.0;
  std::vector<SigmaEstimate> sigma;            // per gamma_k, (R3) mass
  std::vector<SigmaEstimate> sigma_h;          // per gamma_k, |H| mass
  double certified_until = 0.0;
  std::vector<Row> rows;

  Verdict overall() const;
  std::string text() const;
};

struct Options {
  double t_max = 100.0;     // sampling horizon for the limits
  double limit_threshold = 1e-6;
  double rel_tol = 1e-10;
};

/// Report for lambda_i, given a spectrum that already passed (H1).
HypothesisReport evaluate_hypotheses(const Problem& problem, const spectral::Spectrum& spectrum,
                                     const reduction::OmegaTable& table, int i, const Options& options);

/// Report for every i; when the spectrum fails (H1) a single report with
/// the failure and suppressed downstream verdicts is returned.
std::vector<HypothesisReport> evaluate_all(const Problem& problem, const reduction::OmegaTable& table,
                                           const Options& options);

/// "hypothesis,i,quantity,value,threshold,verdict" rows with a header.
std::string to_csv(const std::vector<HypothesisReport>& reports);

}  // namespace poincare::hypotheses
