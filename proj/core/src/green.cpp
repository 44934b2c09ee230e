#include "poincare/green.hpp"

#include <cmath>
#include <stdexcept>

namespace poincare::green {

namespace {

// Sign and log-magnitude of upsilon, for long products.
std::pair<int, double> upsilon_log(std::span<const double> y, int ell) {
  int sign = 1;
  double log_mag = 0.0;
  const int d = static_cast<int>(y.size());
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      if (ell >= 1 && (i + 1 == ell || j + 1 == ell)) continue;
      const double diff = y[static_cast<std::size_t>(j)] - y[static_cast<std::size_t>(i)];
      if (diff == 0.0) return {0, -INFINITY};
      if (diff < 0.0) sign = -sign;
      log_mag += std::log(std::abs(diff));
    }
  }
  return {sign, log_mag};
}

}  // namespace

double upsilon(std::span<const double> values, int ell) {
  const int d = static_cast<int>(values.size());
  if (ell < 0 || ell > d) throw std::out_of_range("upsilon: index out of range");
  if (d > 5) {
    const auto [sign, log_mag] = upsilon_log(values, ell);
    return sign * std::exp(log_mag);
  }
  double p = 1.0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      if (ell >= 1 && (i + 1 == ell || j + 1 == ell)) continue;
      p *= values[static_cast<std::size_t>(j)] - values[static_cast<std::size_t>(i)];
    }
  }
  return p;
}

GreenKernel::GreenKernel(const spectral::ShiftedSpectrum& shifted)
    : gamma_(shifted.gamma), case_index_(shifted.case_index) {
  const int d = static_cast<int>(gamma_.size());
  if (d < 1) throw std::invalid_argument("GreenKernel: empty shifted spectrum");
  for (int l = 0; l < d; ++l) {
    if (gamma_[static_cast<std::size_t>(l)] == 0.0) {
      throw std::invalid_argument("GreenKernel: shifted spectrum contains zero");
    }
  }
  upsilon0_ = upsilon(gamma_, 0);
  if (upsilon0_ == 0.0 || !std::isfinite(upsilon0_)) {
    throw std::invalid_argument("GreenKernel: degenerate shifted spectrum");
  }

  const auto [sign0, log0] = upsilon_log(gamma_, 0);
  for (int l = 1; l <= d; ++l) {
    const auto [sign, log_mag] = upsilon_log(gamma_, l);
    const int parity = ((d - l) % 2 == 0) ? 1 : -1;
    weights_.push_back(parity * sign * sign0 * std::exp(log_mag - log0));
    printed_weights_.push_back((l % 2 == 0 ? 1.0 : -1.0) * upsilon(gamma_, l));
  }

  jump_ = 0.0;
  for (int l = 0; l < d; ++l) {
    const auto k = static_cast<std::size_t>(l);
    jump_ += weights_[k] * std::pow(gamma_[k], d - 1);
  }
  if (std::abs(jump_ - 1.0) > 1e-8 * (1.0 + std::abs(jump_))) {
    throw std::logic_error("GreenKernel: jump condition failed");
  }

  printed_matches_ = true;
  for (double u : {-0.7, -0.2, 0.3, 1.1}) {
    const double mine = derivative(u, 0.0, 0);
    const double theirs = printed_value(u, 0.0);
    if (std::abs(mine - theirs) > 1e-12 * (1.0 + std::abs(mine))) printed_matches_ = false;
  }
}

double GreenKernel::derivative(double t, double s, int j) const {
  const double u = t - s;
  double sum = 0.0;
  for (std::size_t l = 0; l < gamma_.size(); ++l) {
    const bool active = causal(l) ? u >= 0.0 : u < 0.0;
    if (!active) continue;
    sum += side(l) * weights_[l] * std::pow(gamma_[l], j) * std::exp(gamma_[l] * u);
  }
  return sum;
}

double GreenKernel::printed_value(double t, double s) const {
  const double u = t - s;
  const int d = static_cast<int>(gamma_.size());
  double sum = 0.0;
  for (int l = 1; l <= d; ++l) {
    const auto k = static_cast<std::size_t>(l - 1);
    bool active = false;
    if (case_index_ == 1) {
      active = u <= 0.0;
    } else if (case_index_ == d + 1) {
      active = u >= 0.0;
    } else {
      active = l < case_index_ ? u >= 0.0 : u <= 0.0;
    }
    if (active) sum += printed_weights_[k] * std::exp(-gamma_[k] * u);
  }
  return -sum / upsilon0_;
}

}  // namespace poincare::green
