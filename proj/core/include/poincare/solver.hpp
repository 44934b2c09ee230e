#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "poincare/green.hpp"
#include "poincare/grid.hpp"
#include "poincare/problem.hpp"
#include "poincare/reduction.hpp"
#include "poincare/spectral.hpp"

namespace poincare::solver {

struct ContractionCertificate {
  double eta = 0.5;
  bool eta_below_one_over_n = false;
  double tol = 0.0;
  std::vector<double> diffs;   // ||omega_{m+1} - omega_m||_0
  std::vector<double> ratios;  // diffs[m] / diffs[m-1]
  std::vector<double> norms;   // ||omega_m||_0
  double final_residual = 0.0; // ||T z - z||_0 after the last step
  double tail_error_bound = 0.0;
  int iterations = 0;
  bool converged = false;
  bool machine_floor = false;  // stopped on rounding noise, not the tol test
  bool retried = false;        // eta was raised after an invariance failure
  std::string stop_reason;

  /// All ratios below 1 and the final residual within tolerance.
  bool valid() const;
  std::string summary() const;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, ContractionCertificate cert)
      : std::runtime_error(what), certificate_(std::move(cert)) {}
  const ContractionCertificate& certificate() const { return certificate_; }

 private:
  ContractionCertificate certificate_;
};
class DivergenceDetected : public SolverError {
 public:
  using SolverError::SolverError;
};
class InvarianceViolated : public SolverError {
 public:
  using SolverError::SolverError;
};
class MaxIterations : public SolverError {
 public:
  using SolverError::SolverError;
};

struct OperatorOptions {
  int quad_points = 12;       // Gauss-Legendre points between neighbouring nodes
  bool forcing_only = false;  // keep only Omega_0 (the operator becomes affine)
  double tail_tol = 1e-14;
};

/// Result of one application of T beyond the iterate itself.
struct Application {
  grid::IterateGrid next;
  std::vector<double> rhs;          // P at the nodes, evaluated on the input
  std::vector<double> top;          // (T z)^(n-1) at the nodes
};

/// z -> T z on a fixed grid, with everything that does not depend on z
/// (interpolation rows, r values, Omega coefficients, exponentials, the
/// tail integrals) computed once. Each kernel term is a one-sided
/// exponentially weighted integral, accumulated node to node in its
/// stable direction.
class FixedPointOperator {
 public:
  FixedPointOperator(const Problem& problem, const green::GreenKernel& kernel,
                     const reduction::NumericOmega& omega, std::shared_ptr<const grid::ChebyshevGrid> grid,
                     OperatorOptions options = {});

  int order() const { return n_; }
  const green::GreenKernel& kernel() const { return kernel_; }
  const reduction::NumericOmega& omega() const { return omega_; }
  const std::shared_ptr<const grid::ChebyshevGrid>& grid() const { return grid_; }
  grid::IterateGrid zero() const;

  grid::IterateGrid apply(const grid::IterateGrid& z) const;
  Application apply_full(const grid::IterateGrid& z) const;

  /// Bound on the error from replacing z by 0 beyond t_max, for input z.
  double tail_error(const grid::IterateGrid& z) const;

  /// Pointwise residual of z^(n-1) + sum b_i z^(i) - P(z) at the nodes,
  /// with z^(n-1) from the kernel form of T z.
  std::vector<double> ode_residual(const grid::IterateGrid& z, std::span<const double> b) const;

 private:
  void rhs_at_quadrature(const grid::IterateGrid& z, std::vector<double>& f) const;
  double rhs_at(std::span<const double> r, std::span<const double> jet) const;

  int n_;
  green::GreenKernel kernel_;
  reduction::NumericOmega omega_;
  std::shared_ptr<const grid::ChebyshevGrid> grid_;
  OperatorOptions options_;
  int q_;
  // per quadrature point (interval-major)
  std::vector<std::size_t> row_first_;
  std::vector<double> rows_;       // p weights per point
  std::vector<double> rq_;         // n values of r per point
  std::vector<double> node_r_;     // n values of r per node
  // per kernel term and interval
  std::vector<double> step_;       // e^{gamma h_k}
  std::vector<double> qweight_;    // [term][interval][q] local exponential weights times GL weights
  std::vector<double> tail_;       // per term: contribution beyond t_max with z = 0
};

struct SolveOptions {
  double eta = 0.5;
  double retry_eta = 0.9;
  double tol = 1e-10;
  int max_iter = 200;
  int grid_points = 24;
  double t_max = 0.0;  // 0: t0 + 40 / min |gamma|
  OperatorOptions op;
};

/// Picard iteration omega_{m+1} = T omega_m from omega_0 = 0 with the
/// stopping and failure rules of the certificate.
std::pair<grid::IterateGrid, ContractionCertificate> picard_solve(const FixedPointOperator& op, double eta,
                                                                  double tol, int max_iter);

/// Everything needed downstream for one lambda_i.
struct Solution {
  int index = 0;  // i, 1-based
  double mu = 0.0;
  spectral::ShiftedSpectrum shifted;
  std::vector<double> b;  // reduced linear coefficients
  std::shared_ptr<FixedPointOperator> op;
  grid::IterateGrid z;
  std::vector<double> top;  // z^(n-1) at the nodes
  ContractionCertificate certificate;
};

double default_t_max(const Problem& problem, const spectral::Spectrum& spectrum);

/// Builds the operator for lambda_i and runs picard_solve, retrying once
/// with the larger eta if the iterate leaves the ball.
Solution solve(const Problem& problem, const spectral::Spectrum& spectrum, const reduction::OmegaTable& table,
               int i, const SolveOptions& options);

}  // namespace poincare::solver
