#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "poincare/polynomial.hpp"
#include "poincare/reduction.hpp"

namespace poincare::printed {

/// The closed-form right side F of the reduced equation exactly as
/// printed, built symbolically over reduction::SymbolLayout{n}. A factor
/// (z+mu)^(l) becomes v_l for l >= 1 and v_0 + mu for l = 0. Requires
/// 3 <= n <= reduction::kMaxSymbolicOrder.
poly::Polynomial printed_F(int n);

/// The inner sum S_{m,j} (m >= 0) as printed.
poly::Polynomial printed_S(const reduction::SymbolLayout& layout, int m, int j);

double printed_F_reference(int n, std::span<const double> a, double mu, std::span<const double> r,
                           std::span<const double> z);

/// The printed closed form of H(t, mu), taking the inner sums from m = 1
/// with an empty product when m = 1.
double printed_H_hat(int n, std::span<const double> a, double mu, std::span<const double> r);

struct Mismatch {
  poly::Exponents monomial;  // over the full layout
  poly::Rational printed;
  poly::Rational recurrence;
};

struct CrossCheckReport {
  int n = 0;
  std::vector<Mismatch> mismatches;  // printed F against Q - L - C
  int samples = 0;
  double max_abs_gap = 0.0;          // numeric, over the random samples
  double max_abs_gap_h = 0.0;        // printed H-hat against the table
  bool agrees = false;               // true iff no mismatching monomial
  std::string text;
};

/// Compares the printed F with the recurrence-built polynomial (exactly,
/// monomial by monomial) and at `samples` random points.
CrossCheckReport cross_check(int n, int samples = 100, std::uint64_t seed = 1);

}  // namespace poincare::printed
