#include "poincare/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "poincare/number_format.hpp"
#include "poincare/oracle.hpp"
#include "poincare/printed_formulas.hpp"

namespace poincare::pipeline {

Stage parse_stage(std::string_view name) {
  if (name == "roots") return Stage::Roots;
  if (name == "reduce") return Stage::Reduce;
  if (name == "check") return Stage::Check;
  if (name == "solve") return Stage::Solve;
  if (name == "verify") return Stage::Verify;
  if (name == "all") return Stage::All;
  throw std::invalid_argument("unknown subcommand '" + std::string(name) + "'");
}

std::string diagnostics_csv(const std::vector<DiagnosticRow>& rows) {
  std::ostringstream os;
  os << "quantity,i,j,t,value,reference,verdict\n";
  for (const auto& r : rows) {
    os << r.quantity << ',' << r.i << ',' << r.j << ',' << format_double(r.t) << ',' << format_double(r.value) << ','
       << format_double(r.reference) << ',' << r.verdict << '\n';
  }
  return os.str();
}

int exit_code(const std::vector<DiagnosticRow>& rows) {
  bool indeterminate = false;
  for (const auto& r : rows) {
    if (r.verdict == "fail") return kFailure;
    if (r.verdict == "indeterminate") indeterminate = true;
  }
  return indeterminate ? kIndeterminate : kSuccess;
}

std::string solution_csv(const solver::Solution& s) {
  const auto& z = s.z;
  const std::size_t m = z.values.size();
  std::ostringstream os;
  os << "t,z";
  for (std::size_t j = 1; j < m; ++j) os << ",z" << j;
  os << '\n';
  const auto& nodes = z.grid->nodes();
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    os << format_double(nodes[k]);
    for (std::size_t j = 0; j < m; ++j) os << ',' << format_double(z.values[j][k]);
    os << '\n';
  }
  return os.str();
}

std::string certificate_text(const solver::Solution& s) {
  std::ostringstream os;
  os << "i = " << s.index << '\n';
  os << "mu = " << format_double(s.mu) << '\n';
  os << "gamma = [" << format_list(s.shifted.gamma) << "]\n";
  os << "case = " << s.shifted.case_index << '\n';
  os << "nodes = " << s.z.grid->size() << '\n';
  os << "t_max = " << format_double(s.z.grid->nodes().back()) << '\n';
  os << "norm0 = " << format_double(s.z.norm0) << '\n';
  os << s.certificate.summary();
  return os.str();
}

Pipeline::Pipeline(config::Config config, std::ostream& log) : config_(std::move(config)), log_(log) {}

void Pipeline::write(const std::string& name, const std::string& content) {
  std::filesystem::create_directories(config_.output);
  const auto path = config_.output / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

const spectral::Spectrum& Pipeline::spectrum() {
  if (!spectrum_) spectrum_ = spectral::find_roots(config_.problem.a);
  return *spectrum_;
}

const reduction::OmegaTable& Pipeline::table() {
  if (!table_) table_ = reduction::build_reduced_rhs(config_.problem.order);
  return *table_;
}

const std::vector<std::shared_ptr<const solver::Solution>>& Pipeline::solutions() {
  if (solutions_.empty()) {
    const auto options = config_.solve_options();
    for (int i = 1; i <= config_.problem.order; ++i) {
      solutions_.push_back(
          std::make_shared<solver::Solution>(solver::solve(config_.problem, spectrum(), table(), i, options)));
    }
  }
  return solutions_;
}

const asymptotics::FundamentalSystem& Pipeline::fundamental_system() {
  if (!fs_) fs_.emplace(config_.problem, spectrum(), solutions());
  return *fs_;
}

int Pipeline::roots() {
  try {
    const auto& s = spectrum();
    std::ostringstream roots;
    roots << std::setprecision(12);
    for (std::size_t k = 0; k < s.lambda.size(); ++k) roots << (k ? ", " : "") << s.lambda[k];
    log_ << "Lambda = " << roots.str() << '\n';
    log_ << "separation = " << format_double(s.separation) << '\n';
    log_ << "H1 pass\n";
    return kSuccess;
  } catch (const spectral::SpectrumError& e) {
    log_ << "H1 fail: " << e.what() << '\n';
    return kFailure;
  }
}

int Pipeline::reduce() {
  const std::string text = reduction::format_omega_table(table());
  write("omega_table.txt", text);
  log_ << text;
  const int n = config_.problem.order;
  if (n >= 3) {
    const auto report = printed::cross_check(n);
    write("printed_crosscheck.txt", report.text);
    log_ << (report.agrees ? "printed right side agrees with the table\n"
                           : "printed right side disagrees with the table; see printed_crosscheck.txt\n");
  }
  return kSuccess;
}

int Pipeline::check() {
  hypotheses::Options options;
  options.t_max = config_.hypotheses_t_max;
  const auto reports = hypotheses::evaluate_all(config_.problem, table(), options);
  write("hypotheses.csv", hypotheses::to_csv(reports));
  for (const auto& r : reports) log_ << r.text();
  // the hypotheses are sufficient conditions; only a failed spectrum stops the run
  if (reports.size() == 1 && !reports.front().h1) return kFailure;
  return kSuccess;
}

bool Pipeline::spectrum_ok() {
  try {
    spectrum();
    return true;
  } catch (const spectral::SpectrumError& e) {
    log_ << "H1 fail: " << e.what() << '\n';
    return false;
  }
}

int Pipeline::solve() {
  if (!spectrum_ok()) return kFailure;
  try {
    for (const auto& s : solutions()) {
      write("z_lambda_" + std::to_string(s->index) + ".csv", solution_csv(*s));
      write("certificate_" + std::to_string(s->index) + ".txt", certificate_text(*s));
      log_ << "lambda_" << s->index << ": " << s->certificate.iterations << " iterations, residual "
           << format_double(s->certificate.final_residual) << ", " << s->certificate.stop_reason << '\n';
    }
  } catch (const solver::SolverError& e) {
    log_ << "solve failed: " << e.what() << '\n' << e.certificate().summary();
    return kFailure;
  }
  return kSuccess;
}

int Pipeline::verify() {
  if (!spectrum_ok()) return kFailure;
  try {
    solutions();
  } catch (const solver::SolverError& e) {
    log_ << "solve failed: " << e.what() << '\n';
    return kFailure;
  }
  const auto& problem = config_.problem;
  const auto& sp = spectrum();
  const auto& fs = fundamental_system();
  const int n = problem.order;
  std::vector<DiagnosticRow> rows;
  auto verdict = [](bool ok) { return std::string(ok ? "pass" : "fail"); };

  for (const auto& s : solutions_) {
    const auto& cert = s->certificate;
    double max_ratio = 0.0;
    for (double r : cert.ratios) max_ratio = std::max(max_ratio, r);
    rows.push_back({"contraction_ratio", s->index, 0, 0.0, max_ratio, 1.0, verdict(cert.converged && max_ratio < 1.0)});
    const double residual_ref = 100.0 * config_.tol;
    rows.push_back({"final_residual", s->index, 0, 0.0, cert.final_residual, residual_ref,
                    verdict(cert.final_residual < residual_ref)});
    double ode = 0.0;
    for (double v : s->op->ode_residual(s->z, s->b)) ode = std::max(ode, std::abs(v));
    rows.push_back({"ode_residual", s->index, 0, 0.0, ode, 1e-6, verdict(ode < 1e-6)});
  }

  const double t_end = config_.oracle_t_end;
  for (int i = 1; i <= n; ++i) {
    const auto c = oracle::compare_to_fixed_point(fs, problem, i, t_end, config_.oracle_tol);
    const double ref = c.log_derivative ? 1e-3 : 1e-4;
    rows.push_back({c.log_derivative ? "oracle_log_derivative_error" : "oracle_value_error", i, 0, t_end, c.max_error,
                    ref, verdict(c.max_error < ref)});
  }
  const double abel = oracle::abel_deviation(fs, problem, t_end, config_.oracle_tol);
  rows.push_back({"abel_deviation", 0, 0, t_end, abel, 1e-6, verdict(abel < 1e-6)});

  const double t_diag = std::min(config_.diag_t, fs.t_max());
  for (int i = 1; i <= n; ++i) {
    const auto ratios = fs.ratios(i, t_diag);
    for (int j = 1; j < n; ++j) {
      const double ref = std::pow(fs.lambda(i), j);
      const double v = ratios[static_cast<std::size_t>(j)];
      rows.push_back({"ratio", i, j, t_diag, v, ref, verdict(std::abs(v - ref) < 0.01 * std::max(1.0, std::abs(ref)))});
    }
  }

  // ratio limits at the end of the data against the envelope
  const double t_end_data = fs.t_max();
  for (int i = 1; i <= n; ++i) {
    const double beta = config_.beta.count(i) ? config_.beta.at(i) : asymptotics::beta_range(sp, i).midpoint();
    const double env = asymptotics::envelope(problem, sp, i, beta, t_end_data);
    const auto ratios = fs.ratios(i, t_end_data);
    for (int j = 1; j < n; ++j) {
      const double gap = std::abs(ratios[static_cast<std::size_t>(j)] - std::pow(fs.lambda(i), j));
      // both sides vanish for unperturbed problems
      const bool ok = gap <= 10.0 * env || gap < 1e-12;
      rows.push_back({"ratio_limit", i, j, t_end_data, gap, 10.0 * env, verdict(ok)});
    }
  }

  const auto [w, vandermonde] = asymptotics::wronskian_diagnostic(fs, t_diag);
  const double w_gap = std::abs(w - vandermonde) / std::abs(vandermonde);
  rows.push_back({"wronskian_ratio", 0, 0, t_diag, w, vandermonde, verdict(w_gap < 0.02)});
  {
    const int samples = 41;
    const double lo = config_.window_lo;
    const double hi = std::min(config_.window_hi, fs.t_max());
    int pairs = 0;
    int good = 0;
    double prev = std::abs(asymptotics::wronskian_diagnostic(fs, lo).first - vandermonde);
    for (int k = 1; k < samples; ++k) {
      const double t = lo + (hi - lo) * k / (samples - 1);
      const double gap = std::abs(asymptotics::wronskian_diagnostic(fs, t).first - vandermonde);
      ++pairs;
      if (gap <= prev || std::max(gap, prev) < 1e-10 * std::abs(vandermonde)) ++good;
      prev = gap;
    }
    const double fraction = static_cast<double>(good) / pairs;
    rows.push_back({"wronskian_monotone_fraction", 0, 0, hi, fraction, 0.8, verdict(fraction >= 0.8)});
  }

  for (int i = 1; i <= n; ++i) {
    const double beta = config_.beta.count(i) ? config_.beta.at(i) : asymptotics::beta_range(sp, i).midpoint();
    try {
      const auto e = asymptotics::check_envelope(fs, problem, i, beta, config_.window_lo, config_.window_hi);
      rows.push_back({"envelope_sup", i, 0, e.window_hi, e.sup, e.sup_extended, verdict(e.pass)});
    } catch (const std::exception& e) {
      log_ << "envelope " << i << ": " << e.what() << '\n';
      rows.push_back({"envelope_sup", i, 0, config_.window_hi, NAN, NAN, "indeterminate"});
    }
  }

  const double t_ref = std::min(config_.refined_t, fs.t_max());
  for (int i = 1; i <= n; ++i) {
    const double factor = std::exp(asymptotics::refined_log_estimate(fs, problem, i, t_ref) - fs.log_y(i, t_ref));
    rows.push_back({"refined_factor", i, 0, t_ref, factor, 1.0, "info"});
  }

  if (problem.unperturbed()) {
    for (int i = 1; i <= n; ++i) {
      double gap = 0.0;
      for (double t : fs.solution(i).z.grid->nodes()) {
        gap = std::max(gap, std::abs(std::expm1(fs.log_y(i, t) - fs.lambda(i) * (t - problem.t0))));
      }
      rows.push_back({"exponential_gap", i, 0, fs.t_max(), gap, 1e-9, verdict(gap < 1e-9)});
    }
  }

  diagnostics_ = rows;
  write("diagnostics.csv", diagnostics_csv(rows));
  int failed = 0;
  for (const auto& r : rows) failed += r.verdict == "fail";
  log_ << rows.size() << " diagnostics, " << failed << " failed\n";
  return exit_code(rows);
}

int Pipeline::run(Stage stage) {
  switch (stage) {
    case Stage::Roots: return roots();
    case Stage::Reduce: return reduce();
    case Stage::Check: return check();
    case Stage::Solve: return solve();
    case Stage::Verify: return verify();
    case Stage::All: {
      if (int code = roots(); code != kSuccess) return code;
      if (int code = reduce(); code != kSuccess) return code;
      if (int code = check(); code != kSuccess) return code;
      if (int code = solve(); code != kSuccess) return code;
      return verify();
    }
  }
  return kUsageError;
}

int run(Stage stage, const config::Config& config, std::ostream& log) {
  Pipeline p(config, log);
  return p.run(stage);
}

}  // namespace poincare::pipeline
