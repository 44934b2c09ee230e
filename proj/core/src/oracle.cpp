#include "poincare/oracle.hpp"

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>
#include <algorithm>
#include <cmath>

#include "poincare/quadrature.hpp"

namespace poincare::oracle {

namespace odeint = boost::numeric::odeint;
using State = std::vector<double>;

TrajectorySample integrate_original(const Problem& problem, const std::vector<double>& y0,
                                    const std::vector<double>& times, double tol, double abs_tol) {
  const int n = problem.order;
  if (static_cast<int>(y0.size()) != n) throw std::invalid_argument("integrate_original: y0 needs n values");
  if (times.size() < 2) throw std::invalid_argument("integrate_original: need at least two times");
  const double start = times.front();
  const double dir = times.back() >= start ? 1.0 : -1.0;

  // Integrate in tau = dir * (t - start) so the stepper always runs forward.
  std::vector<double> r(static_cast<std::size_t>(n));
  auto rhs = [&](const State& y, State& dy, double tau) {
    const double t = start + dir * tau;
    problem.r_at(t, r);
    double top = 0.0;
    for (int k = 0; k < n; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      top -= (problem.a[kk] + r[kk]) * y[kk];
    }
    for (int k = 0; k + 1 < n; ++k) dy[static_cast<std::size_t>(k)] = dir * y[static_cast<std::size_t>(k) + 1];
    dy[static_cast<std::size_t>(n - 1)] = dir * top;
  };

  std::vector<double> taus;
  for (double t : times) {
    const double tau = dir * (t - start);
    if (!taus.empty() && tau < taus.back()) throw std::invalid_argument("integrate_original: times must be monotone");
    taus.push_back(tau);
  }

  TrajectorySample out;
  out.tol = tol;
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_original: tol must be positive");
  State y = y0;
  auto stepper = odeint::make_dense_output(abs_tol < 0.0 ? tol : abs_tol, tol, odeint::runge_kutta_dopri5<State>());
  auto observer = [&](const State& s, double tau) {
    for (double v : s) {
      if (!std::isfinite(v)) throw IntegrationError("non-finite state at t = " + std::to_string(start + dir * tau));
    }
    out.times.push_back(start + dir * tau);
    out.states.push_back(s);
  };
  const double dt = 1e-3 * std::max(1e-6, std::abs(taus.back()));
  out.steps = static_cast<long>(odeint::integrate_times(stepper, rhs, y, taus.begin(), taus.end(), dt, observer));
  if (out.times.size() != times.size()) throw IntegrationError("integrator stopped early");
  return out;
}

TrajectorySample integrate_original(const Problem& problem, const std::vector<double>& y0, double t_end, double tol,
                                    int samples) {
  std::vector<double> times;
  for (int k = 0; k < samples; ++k) times.push_back(problem.t0 + (t_end - problem.t0) * k / (samples - 1));
  return integrate_original(problem, y0, times, tol);
}

Comparison compare_to_fixed_point(const asymptotics::FundamentalSystem& fs, const Problem& problem, int i,
                                  double t_end, double tol, int samples) {
  const int n = fs.order();
  Comparison c;
  c.i = i;
  c.log_derivative = i > 1;
  std::vector<double> times;
  for (int k = 0; k < samples; ++k) times.push_back(problem.t0 + (t_end - problem.t0) * k / (samples - 1));

  if (!c.log_derivative) {
    auto jet = fs.ratios(i, problem.t0);
    jet.resize(static_cast<std::size_t>(n));
    double low = 0.0;
    for (double t : times) low = std::min(low, fs.log_y(i, t));
    const auto traj = integrate_original(problem, jet, times, tol, tol * std::exp(low));
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double y = traj.states[k][0];
      const double gap = std::log(std::abs(y)) - fs.log_y(i, times[k]);
      const double err = y > 0.0 ? std::abs(std::expm1(gap)) : INFINITY;
      if (err > c.max_error) {
        c.max_error = err;
        c.t_worst = times[k];
      }
    }
    return c;
  }

  // Competitors of y_i grow like e^{(lambda_1 - lambda_i) T} forward and
  // e^{(lambda_i - lambda_n) T} backward.
  const double span = t_end - problem.t0;
  const double forward = (fs.lambda(1) - fs.lambda(i)) * span;
  const double backward = (fs.lambda(i) - fs.lambda(n)) * span;
  c.backward = backward < forward;
  if (c.backward) std::reverse(times.begin(), times.end());
  auto jet = fs.ratios(i, times.front());
  jet.resize(static_cast<std::size_t>(n));
  // y is normalised to 1 at the start; keep the absolute tolerance below
  // the smallest value it reaches
  double low = 0.0;
  for (double t : times) low = std::min(low, fs.log_y(i, t) - fs.log_y(i, times.front()));
  const auto traj = integrate_original(problem, jet, times, tol, tol * std::exp(low));
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double oracle = traj.states[k][1] / traj.states[k][0];
    const double mine = fs.ratios(i, times[k])[1];
    const double err = std::abs(oracle - mine);
    if (err > c.max_error) {
      c.max_error = err;
      c.t_worst = times[k];
    }
  }
  return c;
}

double abel_deviation(const asymptotics::FundamentalSystem& fs, const Problem& problem, double t_end, double tol,
                      int samples) {
  const int n = fs.order();
  std::vector<TrajectorySample> trajs;
  for (int i = 1; i <= n; ++i) {
    auto jet = fs.ratios(i, problem.t0);
    jet.resize(static_cast<std::size_t>(n));
    trajs.push_back(integrate_original(problem, jet, t_end, tol, samples));
  }
  auto wronskian = [&](std::size_t k) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(j, i) = trajs[static_cast<std::size_t>(i)].states[k][static_cast<std::size_t>(j)];
    }
    return m.determinant();
  };
  const double w0 = wronskian(0);
  const auto& times = trajs[0].times;
  double worst = 0.0;
  double integral = 0.0;
  auto trace = [&](double s) {
    return problem.a[static_cast<std::size_t>(n - 1)] + problem.r[static_cast<std::size_t>(n - 1)].evaluate(s);
  };
  for (std::size_t k = 1; k < times.size(); ++k) {
    integral += quad::integrate(trace, times[k - 1], times[k], 1e-13).value;
    const double expected = w0 * std::exp(-integral);
    worst = std::max(worst, std::abs(wronskian(k) - expected) / std::abs(expected));
  }
  return worst;
}

}  // namespace poincare::oracle
