#include "poincare/hypotheses.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "poincare/number_format.hpp"
#include "poincare/quadrature.hpp"

namespace poincare::hypotheses {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::PassNumerical: return "pass_numerical";
    case Verdict::Fail: return "fail";
    case Verdict::Indeterminate: return "indeterminate";
    case Verdict::Suppressed: return "suppressed";
  }
  return "?";
}

namespace {

int severity(Verdict v) {
  switch (v) {
    case Verdict::Pass: return 0;
    case Verdict::PassNumerical: return 1;
    case Verdict::Suppressed: return 2;
    case Verdict::Indeterminate: return 3;
    case Verdict::Fail: return 4;
  }
  return 4;
}

Integral integrate_chunked(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  const auto r = quad::integrate_chunked(f, a, b, 8.0, rel_tol);
  return {r.value, r.converged};
}

Integral integrate_tail(const std::function<double(double)>& f, double a, double rate, const Context& c) {
  quad::TailOptions opt;
  opt.tol = c.tail_tol;
  opt.rel_tol = c.rel_tol;
  opt.decay_rate = rate;
  const auto r = quad::integrate_to_infinity(f, a, opt);
  return {r.value, r.converged};
}

double slowest_anticausal(const green::GreenKernel& k) {
  double rate = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < k.gamma().size(); ++l) {
    if (!k.causal(l)) rate = std::min(rate, k.gamma()[l]);
  }
  return rate;
}

bool has_causal(const green::GreenKernel& k) {
  for (std::size_t l = 0; l < k.gamma().size(); ++l) {
    if (k.causal(l)) return true;
  }
  return false;
}

// sum_j |d^j g/dt^j (t,s)| restricted to one side of the diagonal.
double abs_jet(const green::GreenKernel& k, double t, double s, bool causal_side) {
  const int n = k.order();
  double total = 0.0;
  for (int j = 0; j <= n - 2; ++j) {
    double v = 0.0;
    for (std::size_t l = 0; l < k.gamma().size(); ++l) {
      if (k.causal(l) != causal_side) continue;
      v += k.side(l) * k.weights()[l] * std::pow(k.gamma()[l], j) * std::exp(k.gamma()[l] * (t - s));
    }
    total += std::abs(v);
  }
  return total;
}

// Offsets u = |t - s| where one of the derivative sums in abs_jet changes
// sign; |.| has a kink there and the quadrature is split at them.
std::vector<double> kink_offsets(const green::GreenKernel& k, bool causal_side) {
  double slowest = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < k.gamma().size(); ++l) {
    if (k.causal(l) == causal_side) slowest = std::min(slowest, std::abs(k.gamma()[l]));
  }
  std::vector<double> out;
  if (!std::isfinite(slowest)) return out;
  const double span = 40.0 / slowest;
  const int samples = 4000;
  for (int j = 0; j <= k.order() - 2; ++j) {
    auto v = [&](double u) {
      const double t_minus_s = causal_side ? u : -u;
      double sum = 0.0;
      for (std::size_t l = 0; l < k.gamma().size(); ++l) {
        if (k.causal(l) != causal_side) continue;
        sum += k.side(l) * k.weights()[l] * std::pow(k.gamma()[l], j) * std::exp(k.gamma()[l] * t_minus_s);
      }
      return sum;
    };
    double prev_u = 0.0;
    double prev = v(0.0);
    for (int q = 1; q <= samples; ++q) {
      const double u = span * q / samples;
      const double cur = v(u);
      if (prev != 0.0 && cur != 0.0 && (prev < 0.0) != (cur < 0.0)) {
        std::uintmax_t iters = 100;
        const auto root = boost::math::tools::toms748_solve(v, prev_u, u, prev, cur,
                                                            boost::math::tools::eps_tolerance<double>(50), iters);
        out.push_back(0.5 * (root.first + root.second));
      }
      prev_u = u;
      prev = cur;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Integral weighted_abs_kernel(const Context& c, double t, const std::function<double(double)>& mass) {
  const auto& k = *c.kernel;
  Integral out;
  double error = 0.0;
  double l1 = 0.0;
  auto add = [&](const quad::Result& r) {
    out.value += r.value;
    error += r.error;
    l1 += r.l1;
    out.converged = out.converged && std::isfinite(r.value);
  };
  if (has_causal(k)) {
    auto f = [&](double s) { return abs_jet(k, t, s, true) * mass(s); };
    double hi = t;
    for (double u : kink_offsets(k, true)) {
      const double s = t - u;
      if (s <= c.problem->t0) break;
      add(quad::integrate_chunked(f, s, hi, 8.0, c.rel_tol));
      hi = s;
    }
    add(quad::integrate_chunked(f, c.problem->t0, hi, 8.0, c.rel_tol));
  }
  const double rate = slowest_anticausal(k);
  if (std::isfinite(rate)) {
    auto f = [&](double s) { return abs_jet(k, t, s, false) * mass(s); };
    double lo = t;
    for (double u : kink_offsets(k, false)) {
      add(quad::integrate_chunked(f, lo, t + u, 8.0, c.rel_tol));
      lo = t + u;
    }
    quad::TailOptions opt;
    opt.tol = c.tail_tol;
    opt.rel_tol = c.rel_tol;
    opt.decay_rate = rate;
    const auto r = quad::integrate_to_infinity(f, lo, opt);
    add(r);
    out.converged = out.converged && r.converged;
  }
  const double tol = std::max(c.rel_tol, 64.0 * std::numeric_limits<double>::epsilon());
  out.converged = out.converged && error <= 10.0 * tol * std::max(l1, 1e-300) + c.tail_tol;
  return out;
}

}  // namespace

Verdict worst(Verdict a, Verdict b) { return severity(a) >= severity(b) ? a : b; }

Integral forced_response(const Context& c, double t, const std::function<double(double)>& w) {
  const auto& k = *c.kernel;
  const auto& gamma = k.gamma();
  std::vector<double> I(gamma.size(), 0.0);
  Integral out;
  for (std::size_t l = 0; l < gamma.size(); ++l) {
    const double g = gamma[l];
    auto f = [&](double s) { return std::exp(g * (t - s)) * w(s); };
    const Integral r = k.causal(l) ? integrate_chunked(f, c.problem->t0, t, c.rel_tol) : integrate_tail(f, t, g, c);
    I[l] = r.value;
    out.converged = out.converged && r.converged;
  }
  for (int j = 0; j <= k.order() - 2; ++j) {
    double v = 0.0;
    for (std::size_t l = 0; l < gamma.size(); ++l) v += k.side(l) * k.weights()[l] * std::pow(gamma[l], j) * I[l];
    out.value += std::abs(v);
  }
  return out;
}

Integral compute_R(const Context& c, double t) {
  std::vector<double> r;
  return forced_response(c, t, [&](double s) {
    c.problem->r_at(s, r);
    return c.omega->omega0(r);
  });
}

Integral compute_L(const Context& c, double t, int k) {
  if (k < 1 || k > c.problem->order) throw std::out_of_range("compute_L: k must lie in 1..n");
  std::vector<double> r;
  return weighted_abs_kernel(c, t, [&](double s) {
    c.problem->r_at(s, r);
    return c.omega->mass_by_degree(r)[static_cast<std::size_t>(k)];
  });
}

Integral kernel_mass(const Context& c, double t) {
  return weighted_abs_kernel(c, t, [](double) { return 1.0; });
}

double compute_phi1(const spectral::ShiftedSpectrum& gamma) {
  const auto& g = gamma.gamma;
  const int d = static_cast<int>(g.size());
  double sum = 0.0;
  for (int l = 1; l <= d; ++l) {
    double reach = 0.0;
    for (int j = 0; j <= d - 1; ++j) reach += std::pow(std::abs(g[static_cast<std::size_t>(l - 1)]), j);
    sum += std::abs(green::upsilon(g, l)) * reach;
  }
  return sum / std::abs(green::upsilon(g, 0));
}

SigmaEstimate estimate_sigma(double gamma, const std::function<double(double)>& mass, double t0,
                             const std::vector<double>& t_grid, double rel_tol) {
  SigmaEstimate est;
  est.gamma = gamma;
  if (t_grid.empty()) throw std::invalid_argument("estimate_sigma: empty t grid");
  Context tail_ctx;
  tail_ctx.rel_tol = rel_tol;
  auto at = [&](double t) {
    auto f = [&](double s) { return std::exp(-gamma * (t - s)) * mass(s); };
    Integral r = gamma < 0.0 ? integrate_tail(f, t, -gamma, tail_ctx) : integrate_chunked(f, t0, t, rel_tol);
    est.converged = est.converged && r.converged;
    return r.value;
  };

  std::vector<double> values;
  for (double t : t_grid) values.push_back(at(t));
  const auto best = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
  est.value = values[best];
  est.t_at = t_grid[best];

  double lo = t_grid[best > 0 ? best - 1 : best];
  double hi = t_grid[best + 1 < t_grid.size() ? best + 1 : best];
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - phi * (hi - lo);
  double x2 = lo + phi * (hi - lo);
  double f1 = at(x1);
  double f2 = at(x2);
  for (int it = 0; it < 60 && hi - lo > 1e-6 * (1.0 + std::abs(hi)); ++it) {
    if (f1 > f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = at(x2);
    }
  }
  for (auto [x, f] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
    if (f > est.value) {
      est.value = f;
      est.t_at = x;
    }
  }
  return est;
}

SigmaEstimate estimate_sigma(const Context& c, double gamma, const std::vector<double>& t_grid) {
  std::vector<double> r;
  return estimate_sigma(
      gamma,
      [&](double s) {
        c.problem->r_at(s, r);
        return c.omega->nonlinear_mass(r);
      },
      c.problem->t0, t_grid, c.rel_tol);
}

std::vector<double> geometric_grid(double t0, double t_max) {
  std::vector<double> grid{t0};
  for (double d = 1.0; t0 + d < t_max; d *= 2.0) grid.push_back(t0 + d);
  if (t_max > t0) grid.push_back(t_max);
  return grid;
}

namespace {

// Verdict for "lim f(t) = 0" judged from samples.
Verdict limit_zero(const std::vector<Sample>& s, double threshold, bool converged) {
  if (!converged) return Verdict::Indeterminate;
  const double last = s.back().value;
  if (last == 0.0) {
    bool all_zero = std::all_of(s.begin(), s.end(), [](const Sample& x) { return x.value == 0.0; });
    if (all_zero) return Verdict::Pass;
  }
  if (last < threshold) return Verdict::PassNumerical;
  double peak = 0.0;
  for (const auto& x : s) peak = std::max(peak, x.value);
  return last < 0.5 * peak ? Verdict::Indeterminate : Verdict::Fail;
}

}  // namespace

HypothesisReport evaluate_hypotheses(const Problem& problem, const spectral::Spectrum& spectrum,
                                     const reduction::OmegaTable& table, int i, const Options& options) {
  HypothesisReport rep;
  rep.i = i;
  rep.h1 = true;
  rep.mu = spectrum.lambda.at(static_cast<std::size_t>(i - 1));
  const int n = problem.order;
  const auto shifted = spectral::shift_spectrum(spectrum, i);
  const green::GreenKernel kernel(shifted);
  const reduction::NumericOmega omega(table, rep.mu, problem.a);
  Context c{&problem, &kernel, &omega, options.rel_tol, 1e-14};

  rep.rows.push_back({"H1", i, "root_separation", spectrum.separation, 0.0, Verdict::Pass});
  double min_gamma = std::numeric_limits<double>::infinity();
  for (double g : shifted.gamma) min_gamma = std::min(min_gamma, std::abs(g));
  rep.rows.push_back({"R1", i, "min_abs_gamma", min_gamma, 0.0, min_gamma > 0.0 ? Verdict::Pass : Verdict::Fail});

  const auto grid = geometric_grid(problem.t0, std::max(options.t_max, problem.t0 + 1.0));
  rep.certified_until = grid.back();
  bool r_ok = true;
  for (double t : grid) {
    const auto v = compute_R(c, t);
    r_ok = r_ok && v.converged;
    rep.r_samples.push_back({t, v.value});
  }
  rep.l_samples.assign(static_cast<std::size_t>(n), {});
  std::vector<bool> l_ok(static_cast<std::size_t>(n), true);
  for (int k = 1; k <= n; ++k) {
    auto& samples = rep.l_samples[static_cast<std::size_t>(k - 1)];
    for (double t : grid) {
      const auto v = compute_L(c, t, k);
      l_ok[static_cast<std::size_t>(k - 1)] = l_ok[static_cast<std::size_t>(k - 1)] && v.converged;
      samples.push_back({t, v.value});
    }
    bool mono = true;
    for (std::size_t s = 1; s < samples.size(); ++s) {
      if (samples[s].value > samples[s - 1].value * (1.0 + 1e-9) + 1e-300) mono = false;
    }
    rep.l_monotone.push_back(mono);
  }

  const double thr = options.limit_threshold;
  rep.rows.push_back({"R2", i, "R(t_max)", rep.r_samples.back().value, thr, limit_zero(rep.r_samples, thr, r_ok)});
  rep.rows.push_back({"R2", i, "L1(t_max)", rep.l_samples[0].back().value, thr,
                      limit_zero(rep.l_samples[0], thr, l_ok[0])});
  bool tail_ok = true;
  for (int k = 2; k <= n; ++k) {
    rep.l_tail_sum += rep.l_samples[static_cast<std::size_t>(k - 1)].back().value;
    tail_ok = tail_ok && l_ok[static_cast<std::size_t>(k - 1)];
  }
  rep.rows.push_back({"R2", i, "sum_k>=2 Lk(t_max)", rep.l_tail_sum, 1.0,
                      !tail_ok ? Verdict::Indeterminate
                               : (rep.l_tail_sum < 1.0 ? Verdict::PassNumerical : Verdict::Fail)});

  rep.phi1 = compute_phi1(shifted);
  std::vector<double> rr;
  for (std::size_t l = 0; l < shifted.gamma.size(); ++l) {
    const double g = shifted.gamma[l];
    auto est = estimate_sigma(c, g, grid);
    rep.sigma.push_back(est);
    const double prod = est.value * rep.phi1;
    rep.rows.push_back({"R3", i, "sigma*phi1[gamma" + std::to_string(l + 1) + "]", prod, 1.0,
                        !est.converged ? Verdict::Indeterminate : (prod < 1.0 ? Verdict::Pass : Verdict::Fail)});
  }

  for (int j = 0; j < n; ++j) {
    std::vector<Sample> samples;
    bool ok = true;
    for (double t : grid) {
      const auto v = forced_response(c, t, [&](double s) {
        problem.r_at(s, rr);
        return rr[static_cast<std::size_t>(j)];
      });
      ok = ok && v.converged;
      samples.push_back({t, v.value});
    }
    rep.rows.push_back({"H2", i, "response_to_r" + std::to_string(j) + "(t_max)", samples.back().value, thr,
                        limit_zero(samples, thr, ok)});
  }
  {
    std::vector<Sample> samples;
    bool ok = true;
    for (double t : grid) {
      problem.r_at(t, rr);
      double forcing = 0.0;
      for (int l = n - 1; l >= 0; --l) forcing = forcing * rep.mu + rr[static_cast<std::size_t>(l)];
      const auto m = kernel_mass(c, t);
      ok = ok && m.converged;
      samples.push_back({t, m.value * std::abs(forcing)});
    }
    rep.rows.push_back({"H2", i, "kernel_mass*|sum mu^l r_l|(t_max)", samples.back().value, thr,
                        limit_zero(samples, thr, ok)});
  }
  for (std::size_t l = 0; l < shifted.gamma.size(); ++l) {
    const double g = shifted.gamma[l];
    auto est = estimate_sigma(
        g,
        [&](double s) {
          problem.r_at(s, rr);
          return std::abs(omega.h_hat(rr));
        },
        problem.t0, grid, options.rel_tol);
    rep.sigma_h.push_back(est);
    const double prod = est.value * rep.phi1;
    rep.rows.push_back({"H3", i, "sigma_H*phi[gamma" + std::to_string(l + 1) + "]", prod, 1.0,
                        !est.converged ? Verdict::Indeterminate : (prod < 1.0 ? Verdict::Pass : Verdict::Fail)});
  }
  return rep;
}

std::vector<HypothesisReport> evaluate_all(const Problem& problem, const reduction::OmegaTable& table,
                                           const Options& options) {
  std::vector<HypothesisReport> out;
  spectral::Spectrum spectrum;
  try {
    spectrum = spectral::find_roots(problem.a);
  } catch (const spectral::SpectrumError& e) {
    HypothesisReport rep;
    rep.h1 = false;
    rep.h1_message = e.what();
    rep.rows.push_back({"H1", 0, "spectrum", 0.0, 0.0, Verdict::Fail});
    for (const char* h : {"R1", "R2", "R3", "H2", "H3"}) rep.rows.push_back({h, 0, "-", 0.0, 0.0, Verdict::Suppressed});
    out.push_back(std::move(rep));
    return out;
  }
  for (int i = 1; i <= problem.order; ++i) out.push_back(evaluate_hypotheses(problem, spectrum, table, i, options));
  return out;
}

Verdict HypothesisReport::overall() const {
  Verdict v = Verdict::Pass;
  for (const auto& r : rows) v = worst(v, r.verdict);
  return v;
}

std::string HypothesisReport::text() const {
  std::ostringstream os;
  if (!h1) {
    os << "H1 fail: " << h1_message << "\ndownstream verdicts suppressed\n";
    return os.str();
  }
  os << "lambda_" << i << " = " << format_double(mu) << '\n';
  os << "  phi1 = " << format_double(phi1) << ", certified on [t0, " << format_double(certified_until) << "]\n";
  os << "  R(t):";
  for (const auto& s : r_samples) os << ' ' << format_double(s.t) << ':' << format_double(s.value);
  os << '\n';
  for (std::size_t k = 0; k < l_samples.size(); ++k) {
    os << "  L" << k + 1 << "(t)" << (l_monotone[k] ? " [nonincreasing]" : " [not monotone]") << ':';
    for (const auto& s : l_samples[k]) os << ' ' << format_double(s.t) << ':' << format_double(s.value);
    os << '\n';
  }
  for (const auto& r : rows) {
    os << "  " << r.hypothesis << ' ' << r.quantity << " = " << format_double(r.value) << " (threshold "
       << format_double(r.threshold) << ") " << to_string(r.verdict) << '\n';
  }
  return os.str();
}

std::string to_csv(const std::vector<HypothesisReport>& reports) {
  std::ostringstream os;
  os << "hypothesis,i,quantity,value,threshold,verdict\n";
  for (const auto& rep : reports) {
    for (const auto& r : rep.rows) {
      os << r.hypothesis << ',' << r.i << ",\"" << r.quantity << "\"," << format_double(r.value) << ','
         << format_double(r.threshold) << ',' << to_string(r.verdict) << '\n';
    }
  }
  return os.str();
}

}  // namespace poincare::hypotheses
