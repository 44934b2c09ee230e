#pragma once

#include <functional>
#include <span>
#include <vector>

namespace poincare::quad {

using Integrand = std::function<double(double)>;

struct Result {
  double value = 0.0;
  double error = 0.0;      // quadrature error estimate plus any tail bound
  double tail_bound = 0.0; // part of `error` owed to truncation at `horizon`
  double horizon = 0.0;    // where a semi-infinite integral was truncated
  double l1 = 0.0;         // integral of |f| as seen by the rule
  bool converged = true;
};

/// Adaptive Gauss-Kronrod (G10/K21) on [a, b] to relative tolerance
/// rel_tol (measured against the integral of |f|).
Result integrate(const Integrand& f, double a, double b, double rel_tol = 1e-12);

/// integrate() over consecutive pieces of at most `chunk`, starting from b.
/// Keeps a narrow peak near b visible to the adaptive rule on long ranges.
Result integrate_chunked(const Integrand& f, double a, double b, double chunk = 8.0, double rel_tol = 1e-12);

struct TailOptions {
  double tol = 1e-12;       // absolute tolerance on the truncated tail
  double rel_tol = 1e-12;   // per-panel relative tolerance
  double decay_rate = 0.0;  // known exponential decay of |f|, 0 if unknown
  double first_panel = 1.0;
  double max_panel = 16.0;
  double max_length = 1e4;
};

/// Integral over [a, inf): panels of doubling width until the tail bound
/// |f(b)| / rate falls below max(tol, rel_tol |I|) / 100, with `rate` the known decay rate
/// or, failing that, the local decay observed across the last panel.
/// Reports converged = false when the bound cannot be met.
Result integrate_to_infinity(const Integrand& f, double a, const TailOptions& options = {});

/// n-point Gauss-Legendre nodes and weights on [-1, 1], ascending.
/// n must be one of 4, 8, 12, 16, 20, 30.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int points);

}  // namespace poincare::quad
