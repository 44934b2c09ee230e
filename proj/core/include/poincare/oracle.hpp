#pragma once

#include <vector>

#include "poincare/asymptotics.hpp"
#include "poincare/problem.hpp"

namespace poincare::oracle {

class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrajectorySample {
  std::vector<double> times;
  std::vector<std::vector<double>> states;  // (y, y', ..., y^(n-1)) per time
  long steps = 0;
  long rejected_steps = -1;  // not reported by the integrator
  double tol = 0.0;
};

/// Dormand-Prince 5(4) with dense output on the companion system of the
/// original equation, sampled at `times` (monotone, starting at the
/// initial time). `times` may decrease, in which case the system is
/// integrated backward. abs_tol < 0 means abs_tol = tol.
TrajectorySample integrate_original(const Problem& problem, const std::vector<double>& y0,
                                    const std::vector<double>& times, double tol, double abs_tol = -1.0);

/// Convenience: `samples` equally spaced times from problem.t0 to t_end.
TrajectorySample integrate_original(const Problem& problem, const std::vector<double>& y0, double t_end, double tol,
                                    int samples = 101);

struct Comparison {
  int i = 0;
  bool log_derivative = false;  // false: value comparison
  bool backward = false;
  double max_error = 0.0;
  double t_worst = 0.0;
};

/// Value comparison (i = 1) or y'/y comparison (i > 1) on [t0, t_end]
/// between the fixed-point reconstruction and the original equation
/// integrated from the same jet. Dominated solutions are integrated in
/// whichever direction their competitors grow less.
Comparison compare_to_fixed_point(const asymptotics::FundamentalSystem& fs, const Problem& problem, int i,
                                  double t_end, double tol, int samples = 101);

/// max relative deviation of the oracle Wronskian from
/// W(t0) exp(-int (a_{n-1} + r_{n-1})) on [t0, t_end], trajectories
/// started from the fixed-point jets.
double abel_deviation(const asymptotics::FundamentalSystem& fs, const Problem& problem, double t_end, double tol,
                      int samples = 51);

}  // namespace poincare::oracle
