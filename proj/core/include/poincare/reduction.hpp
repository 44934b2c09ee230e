#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "poincare/polynomial.hpp"

namespace poincare::reduction {

using poly::Exponents;
using poly::Polynomial;
using poly::Rational;

/// Variable numbering shared by every symbolic object of one order n:
/// v_0..v_{n-1} (v_k stands for z^(k)), mu, a_0..a_{n-1}, r_0..r_{n-1}.
struct SymbolLayout {
  int n = 0;

  std::size_t v(int k) const { return static_cast<std::size_t>(k); }
  std::size_t mu() const { return static_cast<std::size_t>(n); }
  std::size_t a(int k) const { return static_cast<std::size_t>(n + 1 + k); }
  std::size_t r(int k) const { return static_cast<std::size_t>(2 * n + 1 + k); }
  std::size_t count() const { return static_cast<std::size_t>(3 * n + 1); }

  std::vector<std::string> names() const;
  /// Indices of v_0..v_{n-2}, the variables of the multi-index.
  std::vector<std::size_t> jet_vars() const;

  Polynomial var(std::size_t index) const { return Polynomial::variable(count(), index); }
  Polynomial constant(Rational c) const { return Polynomial::constant(count(), c); }
};

constexpr int kMaxSymbolicOrder = 8;

/// P_0..P_n with y^(j) = P_j y when z = y'/y - mu.
struct DerivativePolynomials {
  SymbolLayout layout;
  std::vector<Polynomial> P;
};

/// P_0 = 1, P_{j+1} = (v_0 + mu) P_j + D(P_j) with D v_k = v_{k+1}.
/// Throws std::invalid_argument outside 2 <= n <= kMaxSymbolicOrder.
DerivativePolynomials build_derivative_polynomials(int n);

/// The pieces of the reduced equation L z = P, all over one layout:
/// Q = P_n + sum (a_i + r_i) P_i, L = v_{n-1} + sum b_{i-1} v_{i-1},
/// C = mu^n + sum a_i mu^i and rhs = L + C - Q.
struct ReducedParts {
  SymbolLayout layout;
  Polynomial Q;
  Polynomial linear;
  Polynomial constant;
  Polynomial rhs;
};

ReducedParts build_reduced_parts(int n);

/// rhs grouped by the exponents of (v_0, ..., v_{n-2}); each entry is a
/// polynomial in mu, a and r only.
struct OmegaTable {
  SymbolLayout layout;
  std::map<Exponents, Polynomial> omega;

  int order() const { return layout.n; }
  Exponents zero_index() const { return Exponents(static_cast<std::size_t>(layout.n - 1), 0); }
  /// Omega for the all-zero index (zero polynomial if absent).
  Polynomial omega0() const;
  /// Reassembles sum Omega_alpha v^alpha.
  Polynomial full() const;
  /// sum over alpha != 0 of Omega_alpha (every z-derivative set to 1).
  Polynomial h_hat() const;
};

OmegaTable build_reduced_rhs(int n);

/// Sum of |alpha| over the index.
int index_degree(const Exponents& alpha);

/// One row per alpha, ordered by degree: "(i_0,...,i_{n-2})  <polynomial>".
std::string format_omega_table(const OmegaTable& table);

/// The table with mu and a fixed numerically. Each Omega_alpha is affine in
/// r, so it is stored as base + sum_k rcoef[k] r_k.
class NumericOmega {
 public:
  NumericOmega() = default;
  NumericOmega(const OmegaTable& table, double mu, std::span<const double> a);

  int order() const { return n_; }
  double mu() const { return mu_; }
  std::size_t size() const { return alphas_.size(); }
  const Exponents& alpha(std::size_t k) const { return alphas_[k]; }

  double omega(std::size_t k, std::span<const double> r) const;
  /// Value of Omega for the all-zero index.
  double omega0(std::span<const double> r) const;
  /// sum_alpha Omega_alpha(r) z^alpha with z = (z, z', ..., z^(n-2)).
  double evaluate(std::span<const double> r, std::span<const double> z) const;
  /// Coefficients Omega_alpha(r) in index order.
  void coefficients(std::span<const double> r, std::vector<double>& out) const;
  /// sum_{|alpha| = k} |Omega_alpha(r)| for k = 0..n.
  std::vector<double> mass_by_degree(std::span<const double> r) const;
  /// sum_{alpha != 0} |Omega_alpha(r)|.
  double nonlinear_mass(std::span<const double> r) const;
  /// sum_{alpha != 0} Omega_alpha(r).
  double h_hat(std::span<const double> r) const;

 private:
  int n_ = 0;
  double mu_ = 0.0;
  std::vector<Exponents> alphas_;
  std::vector<double> base_;
  std::vector<double> rcoef_;  // alpha-major, n entries per alpha
  std::size_t zero_ = 0;
  bool has_zero_ = false;
};

/// Direct evaluation of sum Omega_alpha z^alpha from the symbolic table.
double evaluate_rhs(const OmegaTable& table, std::span<const double> a, double mu,
                    std::span<const double> r, std::span<const double> z);

}  // namespace poincare::reduction
