#pragma once

#include <span>
#include <vector>

#include "poincare/spectral.hpp"

namespace poincare::green {

/// l = 0: prod_{i<j} (y_j - y_i). l >= 1 (1-based): the same product over
/// pairs that avoid index l. Empty products are 1.
double upsilon(std::span<const double> values, int ell);

/// Piecewise-exponential kernel of the reduced linear operator
/// q(d/dt) = prod_l (d/dt - gamma_l):
///
///   g(t,s) = sum_l w_l e^{gamma_l (t-s)} * ( H(t-s)   if gamma_l < 0,
///                                           -H(s-t)  if gamma_l > 0 )
///
/// with w_l = 1/q'(gamma_l). Derivatives up to order n-3 are continuous at
/// t = s and the (n-2)-th jumps by +1. At t = s only the t > s branch is
/// used.
class GreenKernel {
 public:
  explicit GreenKernel(const spectral::ShiftedSpectrum& shifted);

  int order() const { return static_cast<int>(gamma_.size()) + 1; }  // n
  int case_index() const { return case_index_; }
  const std::vector<double>& gamma() const { return gamma_; }
  /// w_l = (-1)^{n-1-l} Upsilon_l / Upsilon_0.
  const std::vector<double>& weights() const { return weights_; }
  double upsilon0() const { return upsilon0_; }
  /// The printed weights G_l = (-1)^l Upsilon_l.
  const std::vector<double>& printed_weights() const { return printed_weights_; }
  bool causal(std::size_t l) const { return gamma_[l] < 0.0; }
  /// Signed factor of term l on its own side: +1 causal, -1 anticausal.
  double side(std::size_t l) const { return causal(l) ? 1.0 : -1.0; }

  /// d^j/dt^j g(t,s), j = 0..n-1.
  double derivative(double t, double s, int j) const;
  double operator()(double t, double s) const { return derivative(t, s, 0); }

  /// Jump of the (n-2)-th derivative across t = s, recorded at construction.
  double jump() const { return jump_; }
  /// Whether the printed kernel -(1/Upsilon_0) sum G_l e^{-gamma_l (t-s)}
  /// agrees with this one at sample points.
  bool printed_convention_matches() const { return printed_matches_; }
  /// The printed kernel, for comparison.
  double printed_value(double t, double s) const;

 private:
  std::vector<double> gamma_;
  std::vector<double> weights_;
  std::vector<double> printed_weights_;
  double upsilon0_ = 0.0;
  int case_index_ = 0;
  double jump_ = 0.0;
  bool printed_matches_ = false;
};

}  // namespace poincare::green
