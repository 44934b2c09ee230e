#include "poincare/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace poincare::quad {

Result integrate(const Integrand& f, double a, double b, double rel_tol) {
  Result res;
  if (a == b) return res;
  // Below a few hundred ulps the error estimate is rounding noise and the
  // recursion would only burn evaluations.
  const double tol = std::max(rel_tol, 64.0 * std::numeric_limits<double>::epsilon());
  double err = 0.0;
  double l1 = 0.0;
  res.value = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, 15, tol, &err, &l1);
  res.error = err;
  res.l1 = l1;
  res.converged = std::isfinite(res.value) && err <= 10.0 * tol * std::max(l1, 1e-300);
  return res;
}

Result integrate_chunked(const Integrand& f, double a, double b, double chunk, double rel_tol) {
  Result res;
  if (!(b > a)) return res;
  if (!(chunk > 0.0)) throw std::invalid_argument("integrate_chunked: chunk must be positive");
  double x = b;
  while (x > a) {
    const double lo = std::max(a, x - chunk);
    const Result piece = integrate(f, lo, x, rel_tol);
    res.value += piece.value;
    res.error += piece.error;
    res.l1 += piece.l1;
    x = lo;
  }
  // judged on the whole range: a chunk with negligible mass may miss its own
  // relative target without hurting the total
  const double tol = std::max(rel_tol, 64.0 * std::numeric_limits<double>::epsilon());
  res.converged = std::isfinite(res.value) && res.error <= 10.0 * tol * std::max(res.l1, 1e-300);
  return res;
}

Result integrate_to_infinity(const Integrand& f, double a, const TailOptions& opt) {
  Result res;
  double x = a;
  double h = opt.first_panel;
  int quiet_panels = 0;
  while (x - a < opt.max_length) {
    const double b = x + h;
    const Result piece = integrate(f, x, b, opt.rel_tol);
    res.value += piece.value;
    res.error += piece.error;
    res.l1 += piece.l1;

    const double fa = std::abs(f(x));
    const double fb = std::abs(f(b));
    double rate = opt.decay_rate;
    if (rate <= 0.0 && fa > 0.0 && fb > 0.0 && fb < fa) rate = std::log(fa / fb) / h;
    double bound = 0.0;
    if (fb > 0.0) bound = rate > 0.0 ? fb / rate : std::numeric_limits<double>::infinity();
    res.horizon = b;
    res.tail_bound = bound;
    x = b;
    const double allowed = std::max(opt.tol, opt.rel_tol * std::abs(res.value));
    if (bound <= 0.01 * allowed && std::abs(piece.value) <= allowed) {
      if (++quiet_panels >= 2) {
        res.error += bound;
        const double tol = std::max(opt.rel_tol, 64.0 * std::numeric_limits<double>::epsilon());
        res.converged = std::isfinite(res.value) && res.error <= std::max(10.0 * tol * res.l1, opt.tol) + bound;
        return res;
      }
    } else {
      quiet_panels = 0;
    }
    h = std::min(2.0 * h, opt.max_panel);
  }
  res.error += res.tail_bound;
  res.converged = false;
  return res;
}

namespace {

template <unsigned N>
GaussRule expand_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  GaussRule rule;
  // Boost stores the nonnegative half; mirror it.
  for (std::size_t k = x.size(); k-- > 0;) {
    if (x[k] == 0.0) continue;
    rule.nodes.push_back(-x[k]);
    rule.weights.push_back(w[k]);
  }
  for (std::size_t k = 0; k < x.size(); ++k) {
    rule.nodes.push_back(x[k]);
    rule.weights.push_back(w[k]);
  }
  return rule;
}

}  // namespace

GaussRule gauss_legendre(int points) {
  switch (points) {
    case 4: return expand_rule<4>();
    case 8: return expand_rule<8>();
    case 12: return expand_rule<12>();
    case 16: return expand_rule<16>();
    case 20: return expand_rule<20>();
    case 30: return expand_rule<30>();
    default:
      throw std::invalid_argument("gauss_legendre: supported point counts are 4, 8, 12, 16, 20, 30");
  }
}

}  // namespace poincare::quad
