#include "poincare/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "poincare/number_format.hpp"
#include "poincare/quadrature.hpp"

namespace poincare::solver {

bool ContractionCertificate::valid() const {
  if (!converged) return false;
  for (double r : ratios) {
    if (!(r < 1.0)) return false;
  }
  return final_residual <= std::max(tol, 1e3 * std::numeric_limits<double>::epsilon());
}

std::string ContractionCertificate::summary() const {
  std::ostringstream os;
  double max_ratio = 0.0;
  for (double r : ratios) max_ratio = std::max(max_ratio, r);
  os << "eta = " << format_double(eta) << '\n';
  os << "eta_regime = " << (eta_below_one_over_n ? "eta < 1/n" : "1/n <= eta < 1") << '\n';
  os << "retried_with_larger_eta = " << (retried ? "yes" : "no") << '\n';
  os << "tol = " << format_double(tol) << '\n';
  os << "iterations = " << iterations << '\n';
  os << "converged = " << (converged ? "yes" : "no") << '\n';
  os << "stop_reason = " << stop_reason << '\n';
  os << "max_ratio = " << format_double(max_ratio) << '\n';
  os << "final_residual = " << format_double(final_residual) << '\n';
  os << "tail_error_bound = " << format_double(tail_error_bound) << '\n';
  os << "valid = " << (valid() ? "yes" : "no") << '\n';
  os << "ratios = " << format_list(ratios) << '\n';
  os << "norms = " << format_list(norms) << '\n';
  return os.str();
}

FixedPointOperator::FixedPointOperator(const Problem& problem, const green::GreenKernel& kernel,
                                       const reduction::NumericOmega& omega,
                                       std::shared_ptr<const grid::ChebyshevGrid> grid, OperatorOptions options)
    : n_(problem.order), kernel_(kernel), omega_(omega), grid_(std::move(grid)), options_(options) {
  if (kernel_.order() != n_ || omega_.order() != n_) {
    throw std::invalid_argument("FixedPointOperator: kernel, table and problem disagree on the order");
  }
  const auto rule = quad::gauss_legendre(options_.quad_points);
  q_ = options_.quad_points;
  const auto& x = grid_->nodes();
  const std::size_t intervals = x.size() - 1;
  const std::size_t p = static_cast<std::size_t>(grid_->points_per_panel());
  const auto nn = static_cast<std::size_t>(n_);

  std::vector<double> r(nn);
  std::vector<double> row;
  row_first_.reserve(intervals * static_cast<std::size_t>(q_));
  rows_.reserve(intervals * static_cast<std::size_t>(q_) * p);
  std::vector<double> s_points;
  std::vector<double> s_weights;
  for (std::size_t k = 0; k < intervals; ++k) {
    const double mid = 0.5 * (x[k] + x[k + 1]);
    const double half = 0.5 * (x[k + 1] - x[k]);
    for (int q = 0; q < q_; ++q) {
      const double s = mid + half * rule.nodes[static_cast<std::size_t>(q)];
      s_points.push_back(s);
      s_weights.push_back(half * rule.weights[static_cast<std::size_t>(q)]);
      std::size_t first = 0;
      grid_->interpolation_row(s, first, row);
      row_first_.push_back(first);
      rows_.insert(rows_.end(), row.begin(), row.end());
      problem.r_at(s, r);
      rq_.insert(rq_.end(), r.begin(), r.end());
    }
  }
  for (double t : x) {
    problem.r_at(t, r);
    node_r_.insert(node_r_.end(), r.begin(), r.end());
  }

  const auto& gamma = kernel_.gamma();
  step_.resize(gamma.size() * intervals);
  qweight_.resize(gamma.size() * intervals * static_cast<std::size_t>(q_));
  for (std::size_t l = 0; l < gamma.size(); ++l) {
    const double g = gamma[l];
    const bool causal = kernel_.causal(l);
    for (std::size_t k = 0; k < intervals; ++k) {
      const double h = x[k + 1] - x[k];
      step_[l * intervals + k] = std::exp(-std::abs(g) * h);
      for (int q = 0; q < q_; ++q) {
        const std::size_t idx = k * static_cast<std::size_t>(q_) + static_cast<std::size_t>(q);
        const double s = s_points[idx];
        const double anchor = causal ? x[k + 1] : x[k];
        qweight_[l * intervals * static_cast<std::size_t>(q_) + idx] = s_weights[idx] * std::exp(g * (anchor - s));
      }
    }
  }

  // Beyond t_max the iterate is 0, so only Omega_0 drives the anticausal terms.
  tail_.assign(gamma.size(), 0.0);
  const double T = grid_->t_max();
  for (std::size_t l = 0; l < gamma.size(); ++l) {
    if (kernel_.causal(l)) continue;
    const double g = gamma[l];
    quad::TailOptions topt;
    topt.tol = options_.tail_tol;
    topt.decay_rate = g;
    std::vector<double> rr(nn);
    const auto res = quad::integrate_to_infinity(
        [&](double s) {
          problem.r_at(s, rr);
          return std::exp(g * (T - s)) * omega_.omega0(rr);
        },
        T, topt);
    tail_[l] = res.value;
  }
}

grid::IterateGrid FixedPointOperator::zero() const {
  grid::IterateGrid z(grid_, n_ - 1);
  double slowest = std::numeric_limits<double>::infinity();
  for (double g : kernel_.gamma()) slowest = std::min(slowest, std::abs(g));
  z.tail_rate = slowest;
  return z;
}

double FixedPointOperator::rhs_at(std::span<const double> r, std::span<const double> jet) const {
  return options_.forcing_only ? omega_.omega0(r) : omega_.evaluate(r, jet);
}

void FixedPointOperator::rhs_at_quadrature(const grid::IterateGrid& z, std::vector<double>& f) const {
  const std::size_t count = row_first_.size();
  const std::size_t p = static_cast<std::size_t>(grid_->points_per_panel());
  const auto nn = static_cast<std::size_t>(n_);
  f.resize(count);
  std::vector<double> jet(nn - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const double* w = rows_.data() + i * p;
    const std::size_t first = row_first_[i];
    for (std::size_t j = 0; j + 1 < nn; ++j) {
      const double* v = z.values[j].data() + first;
      double s = 0.0;
      for (std::size_t k = 0; k < p; ++k) s += w[k] * v[k];
      jet[j] = s;
    }
    f[i] = rhs_at(std::span<const double>(rq_.data() + i * nn, nn), jet);
  }
}

Application FixedPointOperator::apply_full(const grid::IterateGrid& z) const {
  if (z.grid != grid_ || z.derivatives() != n_ - 1) {
    throw std::invalid_argument("FixedPointOperator: iterate does not live on this grid");
  }
  std::vector<double> f;
  rhs_at_quadrature(z, f);

  const auto& x = grid_->nodes();
  const std::size_t N = x.size();
  const std::size_t intervals = N - 1;
  const auto& gamma = kernel_.gamma();
  const auto& w = kernel_.weights();
  const auto qn = static_cast<std::size_t>(q_);

  Application out;
  out.next = zero();
  out.top.assign(N, 0.0);
  std::vector<double> K(N);
  for (std::size_t l = 0; l < gamma.size(); ++l) {
    const double* qw = qweight_.data() + l * intervals * qn;
    const double* st = step_.data() + l * intervals;
    if (kernel_.causal(l)) {
      K[0] = 0.0;
      for (std::size_t k = 0; k < intervals; ++k) {
        double local = 0.0;
        for (std::size_t q = 0; q < qn; ++q) local += qw[k * qn + q] * f[k * qn + q];
        K[k + 1] = st[k] * K[k] + local;
      }
    } else {
      K[N - 1] = tail_[l];
      for (std::size_t k = intervals; k-- > 0;) {
        double local = 0.0;
        for (std::size_t q = 0; q < qn; ++q) local += qw[k * qn + q] * f[k * qn + q];
        K[k] = st[k] * K[k + 1] + local;
      }
    }
    double coeff = kernel_.side(l) * w[l];
    for (int j = 0; j <= n_ - 1; ++j) {
      auto& dst = j < n_ - 1 ? out.next.values[static_cast<std::size_t>(j)] : out.top;
      for (std::size_t k = 0; k < N; ++k) dst[k] += coeff * K[k];
      coeff *= gamma[l];
    }
  }

  const auto nn = static_cast<std::size_t>(n_);
  out.rhs.resize(N);
  std::vector<double> jet(nn - 1);
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t j = 0; j + 1 < nn; ++j) jet[j] = z.values[j][k];
    out.rhs[k] = rhs_at(std::span<const double>(node_r_.data() + k * nn, nn), jet);
    out.top[k] += out.rhs[k];
  }
  out.next.refresh_norm();
  return out;
}

grid::IterateGrid FixedPointOperator::apply(const grid::IterateGrid& z) const { return apply_full(z).next; }

double FixedPointOperator::tail_error(const grid::IterateGrid& z) const {
  const auto nn = static_cast<std::size_t>(n_);
  const std::size_t last = grid_->size() - 1;
  std::vector<double> jet(nn - 1);
  for (std::size_t j = 0; j + 1 < nn; ++j) jet[j] = z.values[j][last];
  const std::span<const double> r(node_r_.data() + last * nn, nn);
  const double jump = std::abs(rhs_at(r, jet) - omega_.omega0(r));
  double bound = 0.0;
  const auto& gamma = kernel_.gamma();
  for (std::size_t l = 0; l < gamma.size(); ++l) {
    if (kernel_.causal(l)) continue;
    double reach = 0.0;
    for (int j = 0; j <= n_ - 2; ++j) reach += std::pow(std::abs(gamma[l]), j);
    bound += std::abs(kernel_.weights()[l]) * reach * jump / gamma[l];
  }
  return bound;
}

std::vector<double> FixedPointOperator::ode_residual(const grid::IterateGrid& z, std::span<const double> b) const {
  if (static_cast<int>(b.size()) != n_ - 1) throw std::invalid_argument("ode_residual: need n-1 coefficients");
  const Application a = apply_full(z);
  std::vector<double> res(grid_->size());
  for (std::size_t k = 0; k < res.size(); ++k) {
    double v = a.top[k] - a.rhs[k];
    for (std::size_t i = 0; i < b.size(); ++i) v += b[i] * z.values[i][k];
    res[k] = v;
  }
  return res;
}

std::pair<grid::IterateGrid, ContractionCertificate> picard_solve(const FixedPointOperator& op, double eta,
                                                                  double tol, int max_iter) {
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("picard_solve: eta must lie in ]0,1[");
  if (!(tol > 0.0)) throw std::invalid_argument("picard_solve: tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("picard_solve: max_iter must be positive");

  ContractionCertificate cert;
  cert.eta = eta;
  cert.eta_below_one_over_n = eta < 1.0 / op.order();
  cert.tol = tol;

  grid::IterateGrid omega = op.zero();
  cert.norms.push_back(0.0);
  int rising = 0;
  for (int m = 1; m <= max_iter; ++m) {
    grid::IterateGrid next = op.apply(omega);
    const double diff = grid::distance0(next, omega);
    cert.iterations = m;
    cert.norms.push_back(next.norm0);
    cert.diffs.push_back(diff);
    if (cert.diffs.size() >= 2) {
      const double prev = cert.diffs[cert.diffs.size() - 2];
      cert.ratios.push_back(prev > 0.0 ? diff / prev : 0.0);
    }
    if (next.norm0 > eta) {
      cert.stop_reason = "iterate left the ball of radius eta";
      throw InvarianceViolated("iterate norm " + format_double(next.norm0) + " exceeds eta = " +
                                   format_double(eta) + " at iteration " + std::to_string(m),
                               cert);
    }
    omega = std::move(next);

    const double floor = 1e3 * std::numeric_limits<double>::epsilon() * std::max(omega.norm0, 1e-300);
    if (diff == 0.0 || diff <= floor) {
      cert.converged = true;
      cert.machine_floor = diff != 0.0;
      cert.stop_reason = diff == 0.0 ? "exact fixed point" : "rounding floor reached";
      // Noise-level steps say nothing about contraction.
      if (cert.machine_floor && !cert.ratios.empty()) cert.ratios.pop_back();
      break;
    }
    if (!cert.ratios.empty()) {
      const double L = cert.ratios.back();
      rising = L >= 1.0 ? rising + 1 : 0;
      if (rising >= 3) {
        cert.stop_reason = "contraction ratio >= 1 for 3 consecutive steps";
        throw DivergenceDetected("Picard iteration diverges (ratio " + format_double(L) + ")", cert);
      }
      if (L < 1.0 && diff < tol * (1.0 - L) / std::max(L, 1e-300)) {
        cert.converged = true;
        cert.stop_reason = "a posteriori bound below tol";
        break;
      }
    }
  }
  if (!cert.converged) {
    cert.stop_reason = "max_iter reached";
    throw MaxIterations("Picard iteration did not converge in " + std::to_string(max_iter) + " steps", cert);
  }

  const Application check = op.apply_full(omega);
  cert.final_residual = grid::distance0(check.next, omega);
  cert.tail_error_bound = op.tail_error(omega);
  return {std::move(omega), std::move(cert)};
}

double default_t_max(const Problem& problem, const spectral::Spectrum& spectrum) {
  return problem.t0 + 40.0 / spectrum.separation;
}

Solution solve(const Problem& problem, const spectral::Spectrum& spectrum, const reduction::OmegaTable& table,
               int i, const SolveOptions& options) {
  Solution sol;
  sol.index = i;
  sol.mu = spectrum.lambda.at(static_cast<std::size_t>(i - 1));
  sol.shifted = spectral::shift_spectrum(spectrum, i);
  sol.b = spectral::reduced_linear_coefficients(problem.a, sol.mu);
  const green::GreenKernel kernel(sol.shifted);
  const reduction::NumericOmega omega(table, sol.mu, problem.a);
  const double t_max = options.t_max > 0.0 ? options.t_max : default_t_max(problem, spectrum);
  auto g = std::make_shared<const grid::ChebyshevGrid>(problem.t0, t_max, options.grid_points);
  sol.op = std::make_shared<FixedPointOperator>(problem, kernel, omega, g, options.op);

  try {
    std::tie(sol.z, sol.certificate) = picard_solve(*sol.op, options.eta, options.tol, options.max_iter);
  } catch (const InvarianceViolated&) {
    if (!(options.retry_eta > options.eta)) throw;
    std::tie(sol.z, sol.certificate) = picard_solve(*sol.op, options.retry_eta, options.tol, options.max_iter);
    sol.certificate.retried = true;
  }
  sol.top = sol.op->apply_full(sol.z).top;
  return sol;
}

}  // namespace poincare::solver
