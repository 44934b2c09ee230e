#include "poincare/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace poincare {

std::vector<double> Problem::r_at(double t) const {
  std::vector<double> out;
  r_at(t, out);
  return out;
}

void Problem::r_at(double t, std::vector<double>& out) const {
  out.resize(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i].evaluate(t);
}

bool Problem::unperturbed() const {
  for (const auto& e : r) {
    if (!e.is_zero_literal()) return false;
  }
  return true;
}

void Problem::validate() const {
  if (order < 2) throw std::invalid_argument("n: order must be at least 2");
  if (a.size() != static_cast<std::size_t>(order)) {
    throw std::invalid_argument("a: expected " + std::to_string(order) + " coefficients, got " +
                                std::to_string(a.size()));
  }
  if (r.size() != static_cast<std::size_t>(order)) {
    throw std::invalid_argument("r: expected " + std::to_string(order) + " expressions, got " +
                                std::to_string(r.size()));
  }
  for (double v : a) {
    if (!std::isfinite(v)) throw std::invalid_argument("a: coefficients must be finite");
  }
  if (!std::isfinite(t0)) throw std::invalid_argument("t0: must be finite");
}

Problem make_problem(std::vector<double> a, const std::vector<std::string>& r, double t0) {
  Problem p;
  p.order = static_cast<int>(a.size());
  p.a = std::move(a);
  for (const auto& s : r) p.r.push_back(expr::parse_expression(s));
  p.t0 = t0;
  p.validate();
  return p;
}

}  // namespace poincare
