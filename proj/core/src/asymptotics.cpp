#include "poincare/asymptotics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "poincare/quadrature.hpp"

namespace poincare::asymptotics {

FundamentalSystem::FundamentalSystem(const Problem& problem, const spectral::Spectrum& spectrum,
                                     std::vector<std::shared_ptr<const solver::Solution>> solutions)
    : n_(problem.order),
      t0_(problem.t0),
      spectrum_(spectrum),
      solutions_(std::move(solutions)),
      derivs_(reduction::build_derivative_polynomials(problem.order)) {
  if (static_cast<int>(solutions_.size()) != n_) {
    throw std::invalid_argument("FundamentalSystem: need one converged solve per characteristic root");
  }
  const auto rule = quad::gauss_legendre(12);
  for (int i = 1; i <= n_; ++i) {
    const auto& sol = solutions_[static_cast<std::size_t>(i - 1)];
    if (!sol || sol->index != i) throw std::invalid_argument("FundamentalSystem: missing solve for index " + std::to_string(i));
    const auto& g = *sol->z.grid;
    const auto& x = g.nodes();
    std::vector<double> cum(x.size(), 0.0);
    for (std::size_t k = 0; k + 1 < x.size(); ++k) {
      const double mid = 0.5 * (x[k] + x[k + 1]);
      const double half = 0.5 * (x[k + 1] - x[k]);
      double s = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        s += rule.weights[q] * g.interpolate(sol->z.values[0], mid + half * rule.nodes[q]);
      }
      cum[k + 1] = cum[k] + half * s;
    }
    cumulative_.push_back(std::move(cum));
  }
}

double FundamentalSystem::t_max() const {
  double t = INFINITY;
  for (const auto& s : solutions_) t = std::min(t, s->z.grid->t_max());
  return t;
}

std::vector<double> FundamentalSystem::jet(int i, double t) const {
  const auto& sol = solution(i);
  std::vector<double> out(static_cast<std::size_t>(n_), 0.0);
  if (t > sol.z.grid->t_max()) return out;
  if (t < t0_) throw std::out_of_range("FundamentalSystem: t before t0");
  for (int j = 0; j + 1 < n_; ++j) out[static_cast<std::size_t>(j)] = sol.z.value(j, t);
  out[static_cast<std::size_t>(n_ - 1)] = sol.z.grid->interpolate(sol.top, t);
  return out;
}

double FundamentalSystem::integral_z(int i, double t) const {
  if (t < t0_) throw std::out_of_range("FundamentalSystem: t before t0");
  const auto& sol = solution(i);
  const auto& g = *sol.z.grid;
  const auto& cum = cumulative_[static_cast<std::size_t>(i - 1)];
  if (t >= g.t_max()) return cum.back();
  const auto& x = g.nodes();
  auto it = std::upper_bound(x.begin(), x.end(), t);
  const auto k = static_cast<std::size_t>(it - x.begin()) - 1;
  if (t == x[k]) return cum[k];
  const auto rule = quad::gauss_legendre(12);
  const double mid = 0.5 * (x[k] + t);
  const double half = 0.5 * (t - x[k]);
  double s = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    s += rule.weights[q] * g.interpolate(sol.z.values[0], mid + half * rule.nodes[q]);
  }
  return cum[k] + half * s;
}

double FundamentalSystem::log_y(int i, double t) const { return lambda(i) * (t - t0_) + integral_z(i, t); }

std::vector<double> FundamentalSystem::ratios(int i, double t) const {
  const auto z = jet(i, t);
  const auto& L = derivs_.layout;
  std::vector<double> values(L.count(), 0.0);
  for (int k = 0; k < n_; ++k) values[L.v(k)] = z[static_cast<std::size_t>(k)];
  values[L.mu()] = lambda(i);
  std::vector<double> out;
  for (const auto& p : derivs_.P) out.push_back(p.evaluate(values));
  return out;
}

std::pair<double, double> wronskian_diagnostic(const FundamentalSystem& fs, double t) {
  const int n = fs.order();
  Eigen::MatrixXd m(n, n);
  std::vector<double> lambda;
  for (int i = 1; i <= n; ++i) {
    const auto r = fs.ratios(i, t);
    for (int j = 0; j < n; ++j) m(j, i - 1) = r[static_cast<std::size_t>(j)];
    lambda.push_back(fs.lambda(i));
  }
  return {m.determinant(), spectral::vandermonde_product(lambda)};
}

bool BetaRange::contains(double beta) const {
  const bool above = lo_closed ? beta >= lo : beta > lo;
  const bool below = hi_closed ? beta <= hi : beta < hi;
  return above && below;
}

BetaRange beta_range(const spectral::Spectrum& spectrum, int i) {
  const int n = spectrum.order();
  if (i < 1 || i > n) throw std::out_of_range("beta_range: index out of range");
  const auto& l = spectrum.lambda;
  auto lam = [&](int k) { return l[static_cast<std::size_t>(k - 1)]; };
  BetaRange r;
  if (i < n) {
    r.lo = lam(i + 1) - lam(i);
    r.hi = 0.0;
    r.lo_closed = true;
    r.hi_closed = false;
  } else {
    r.lo = 0.0;
    r.hi = lam(n - 1) - lam(n);
    r.lo_closed = false;
    r.hi_closed = true;
  }
  return r;
}

double envelope(const Problem& problem, const spectral::Spectrum& spectrum, int i, double beta, double t) {
  const auto range = beta_range(spectrum, i);
  if (!range.contains(beta)) throw std::invalid_argument("envelope: beta outside the admissible interval");
  const int n = problem.order;
  const double lam = spectrum.lambda[static_cast<std::size_t>(i - 1)];
  std::vector<double> r;
  auto mass = [&](double s) {
    problem.r_at(s, r);
    double v = 0.0;
    for (int l = n - 1; l >= 0; --l) v = v * lam + r[static_cast<std::size_t>(l)];
    return std::abs(v);
  };
  const double t0 = problem.t0;
  quad::TailOptions opt;
  opt.tol = 0.0;
  opt.rel_tol = 1e-10;
  opt.decay_rate = -beta;
  opt.max_length = 2e4;
  if (i == 1) {
    return quad::integrate_to_infinity([&](double s) { return std::exp(beta * (s - t)) * mass(s); }, t, opt).value;
  }
  if (i < n) {
    const double inner =
        quad::integrate_to_infinity([&](double s) { return std::exp(beta * (s - t0)) * mass(s); }, t0, opt).value;
    return std::exp(-beta * (t - t0)) * inner;
  }
  return quad::integrate_chunked([&](double s) { return std::exp(-beta * (t - s)) * mass(s); }, t0, t, 8.0, 1e-10)
      .value;
}

EnvelopeCheck check_envelope(const FundamentalSystem& fs, const Problem& problem, int i, double beta,
                             double window_lo, double window_hi) {
  if (!(window_hi > window_lo)) throw std::invalid_argument("check_envelope: empty window");
  EnvelopeCheck c;
  c.i = i;
  c.beta = beta;
  c.window_lo = window_lo;
  c.window_hi = window_hi;
  const spectral::Spectrum spectrum = [&] {
    spectral::Spectrum s;
    for (int k = 1; k <= fs.order(); ++k) s.lambda.push_back(fs.lambda(k));
    return s;
  }();
  const double ext_hi = window_lo + 2.0 * (window_hi - window_lo);
  const auto& nodes = fs.solution(i).z.grid->nodes();
  for (double t : nodes) {
    if (t < window_lo || t > ext_hi) continue;
    const double env = envelope(problem, spectrum, i, beta, t);
    if (!(env >= 1e-300)) {
      ++c.excluded;
      continue;
    }
    const auto z = fs.jet(i, t);
    double mag = 0.0;
    for (int j = 0; j + 1 < fs.order(); ++j) mag += std::abs(z[static_cast<std::size_t>(j)]);
    const double ratio = mag / env;
    if (t <= window_hi) c.sup = std::max(c.sup, ratio);
    c.sup_extended = std::max(c.sup_extended, ratio);
  }
  if (c.sup == 0.0) {
    c.pass = c.sup_extended == 0.0;
  } else {
    c.pass = std::isfinite(c.sup_extended) && c.sup_extended <= 3.0 * c.sup;
  }
  return c;
}

double refined_log_estimate(const FundamentalSystem& fs, const Problem& problem, int i, double t) {
  const int n = fs.order();
  const double lam = fs.lambda(i);
  double denom = 1.0;
  for (int j = 1; j <= n; ++j) {
    if (j != i) denom *= lam - fs.lambda(j);
  }
  const auto& omega = fs.solution(i).op->omega();
  std::vector<double> r;
  auto rhs = [&](double s) {
    problem.r_at(s, r);
    auto z = fs.jet(i, s);
    z.pop_back();
    return omega.evaluate(r, z);
  };
  const double integral = quad::integrate_chunked(rhs, problem.t0, t, 1.0, 1e-10).value;
  return lam * (t - problem.t0) + integral / denom;
}

double refined_estimate(const FundamentalSystem& fs, const Problem& problem, int i, double t) {
  return std::exp(refined_log_estimate(fs, problem, i, t));
}

IdentityCheck quadrature_identity(const std::function<double(double)>& H, double a, double t0, double t) {
  if (a == 0.0) throw std::invalid_argument("quadrature_identity: a must be nonzero");
  quad::TailOptions opt;
  opt.tol = 0.0;
  opt.rel_tol = 1e-13;
  auto tail = [&](double from, double shift) {
    return quad::integrate_to_infinity([&](double s) { return std::exp(-a * (shift - s)) * H(s); }, from, opt).value;
  };
  IdentityCheck out;
  out.lhs = quad::integrate_chunked([&](double tau) { return std::exp(-a * tau) * tail(tau, 0.0); }, t0, t, 1.0,
                                    1e-13)
                .value;
  const double bracket = tail(t, t) - tail(t0, t0);
  const double mass = quad::integrate_chunked(H, t0, t, 1.0, 1e-13).value;
  out.printed_rhs = -bracket / a + mass / a;
  out.corrected_rhs = -bracket / a - mass / a;
  return out;
}

}  // namespace poincare::asymptotics
