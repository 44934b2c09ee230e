#pragma once

#include <string>
#include <vector>

#include "poincare/expression.hpp"

namespace poincare {

/// y^(n) + sum_{i<n} (a_i + r_i(t)) y^(i) = 0 on [t0, inf).
struct Problem {
  int order = 0;                        // n
  std::vector<double> a;                // a_0 .. a_{n-1}
  std::vector<expr::Expression> r;      // r_0 .. r_{n-1}
  double t0 = 0.0;

  /// r_0(t) .. r_{n-1}(t).
  std::vector<double> r_at(double t) const;
  void r_at(double t, std::vector<double>& out) const;
  /// True when every perturbation is the literal 0.
  bool unperturbed() const;
  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Convenience builder from expression strings.
Problem make_problem(std::vector<double> a, const std::vector<std::string>& r, double t0 = 0.0);

}  // namespace poincare
