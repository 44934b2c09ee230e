#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "poincare/problem.hpp"
#include "poincare/reduction.hpp"
#include "poincare/solver.hpp"
#include "poincare/spectral.hpp"

namespace poincare::asymptotics {

/// y_i = exp(lambda_i (t - t0) + int_{t0}^t z_i), reconstructed in log
/// space from the converged solves, with y_i^(j)/y_i = P_j(lambda_i, z-jet).
class FundamentalSystem {
 public:
  FundamentalSystem(const Problem& problem, const spectral::Spectrum& spectrum,
                    std::vector<std::shared_ptr<const solver::Solution>> solutions);

  int order() const { return static_cast<int>(solutions_.size()); }
  double lambda(int i) const { return spectrum_.lambda.at(static_cast<std::size_t>(i - 1)); }
  const solver::Solution& solution(int i) const { return *solutions_.at(static_cast<std::size_t>(i - 1)); }
  double t0() const { return t0_; }
  /// Largest t at which the solves carry data.
  double t_max() const;

  /// (z, z', ..., z^(n-1)) of solve i at t; zero beyond t_max.
  std::vector<double> jet(int i, double t) const;
  /// int_{t0}^t z_i.
  double integral_z(int i, double t) const;
  double log_y(int i, double t) const;
  /// y_i^(j)/y_i for j = 0..n.
  std::vector<double> ratios(int i, double t) const;

 private:
  int n_;
  double t0_;
  spectral::Spectrum spectrum_;
  std::vector<std::shared_ptr<const solver::Solution>> solutions_;
  reduction::DerivativePolynomials derivs_;
  std::vector<std::vector<double>> cumulative_;  // per i: int z up to each node
};

/// (W[y_1..y_n](t) / prod y_i(t), prod_{k<l} (lambda_l - lambda_k)).
std::pair<double, double> wronskian_diagnostic(const FundamentalSystem& fs, double t);

/// Admissible beta interval for solution i and whether each end is closed.
struct BetaRange {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = false;
  double midpoint() const { return 0.5 * (lo + hi); }
  bool contains(double beta) const;
};
BetaRange beta_range(const spectral::Spectrum& spectrum, int i);

/// Case integral of e^{-beta (t-s)} |sum_l lambda_i^l r_l(s)|: over (t, inf)
/// for i = 1, (t0, inf) for middle i, (t0, t) for i = n. Throws
/// std::invalid_argument for beta outside beta_range.
double envelope(const Problem& problem, const spectral::Spectrum& spectrum, int i, double beta, double t);

struct EnvelopeCheck {
  int i = 0;
  double beta = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double sup = 0.0;          // over [lo, hi]
  double sup_extended = 0.0; // over [lo, 2 hi]
  int excluded = 0;          // samples dropped for envelope underflow
  bool pass = false;
};

/// sup of sum_{j<=n-2} |z^(j)| / envelope on the window and on the window
/// with its upper end doubled; pass when the two sups agree within 3x.
EnvelopeCheck check_envelope(const FundamentalSystem& fs, const Problem& problem, int i, double beta,
                             double window_lo, double window_hi);

/// log of exp(lambda_i (t - t0)) exp( (1/prod_{j!=i}(lambda_i - lambda_j)) int_{t0}^t P ds ).
double refined_log_estimate(const FundamentalSystem& fs, const Problem& problem, int i, double t);
double refined_estimate(const FundamentalSystem& fs, const Problem& problem, int i, double t);

/// Both sides of
///   int_{t0}^t e^{-a tau} int_tau^inf e^{a s} H(s) ds dtau
///     = -(1/a) [ int_t^inf e^{-a(t-s)} H - int_{t0}^inf e^{-a(t0-s)} H ] + c (1/a) int_{t0}^t H
/// with c = +1 as printed and c = -1 (the sign that makes it hold).
struct IdentityCheck {
  double lhs = 0.0;
  double printed_rhs = 0.0;
  double corrected_rhs = 0.0;
};
IdentityCheck quadrature_identity(const std::function<double(double)>& H, double a, double t0, double t);

}  // namespace poincare::asymptotics
