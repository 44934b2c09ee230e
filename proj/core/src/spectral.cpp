#include "poincare/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "poincare/number_format.hpp"

namespace poincare::spectral {

namespace {

// p(x) and p'(x) for the monic polynomial with coefficients c_0..c_{d-1}.
std::pair<double, double> horner(std::span<const double> c, double x) {
  double p = 1.0;
  double dp = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) {
    dp = dp * x + p;
    p = p * x + c[k];
  }
  return {p, dp};
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::vector<double> real_simple_roots(std::span<const double> c) {
  const auto d = static_cast<Eigen::Index>(c.size());
  if (d < 1) throw std::invalid_argument("real_simple_roots: degree must be at least 1");
  if (d == 1) return {-c[0]};

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < d; ++i) companion(i, d - 1) = -c[static_cast<std::size_t>(i)];

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw SpectrumError("companion eigenvalue iteration failed");
  const Eigen::VectorXcd ev = solver.eigenvalues();

  double scale = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) scale = std::max(scale, std::abs(ev(i)));
  const double tol = 1e-7 * (1.0 + scale);

  std::vector<double> roots;
  roots.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) {
    const double im = std::abs(ev(i).imag());
    if (im > tol) {
      // A multiple real root splits into a tight complex cluster; anything
      // wider is a genuine complex pair.
      if (im < 1e-4 * (1.0 + scale)) {
        throw RepeatedRootsError("near-multiple root at " + format_double(ev(i).real()));
      }
      throw ComplexRootsError("complex root " + format_double(ev(i).real()) + " +/- " +
                              format_double(im) + "i");
    }
    double x = ev(i).real();
    const auto [p, dp] = horner(c, x);
    const double step = dp != 0.0 ? p / dp : 0.0;
    // near a multiple root dp vanishes and the step is meaningless
    if (std::isfinite(step) && std::abs(step) <= tol) x -= step;
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  for (std::size_t k = 1; k < roots.size(); ++k) {
    if (roots[k - 1] - roots[k] < tol) {
      throw RepeatedRootsError("repeated root near " + format_double(roots[k]));
    }
  }
  return roots;
}

Spectrum find_roots(std::span<const double> a) {
  if (a.size() < 2) throw std::invalid_argument("find_roots: need n >= 2 coefficients");
  Spectrum s;
  s.lambda = real_simple_roots(a);
  s.separation = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < s.lambda.size(); ++k) {
    s.separation = std::min(s.separation, s.lambda[k - 1] - s.lambda[k]);
  }
  return s;
}

int classify_case(std::span<const double> gamma) {
  const int m = static_cast<int>(gamma.size());
  if (m == 0) throw std::invalid_argument("classify_case: empty shifted spectrum");
  if (gamma[0] < 0.0) return 1;
  if (gamma[static_cast<std::size_t>(m - 1)] > 0.0) return m + 1;
  for (int k = 2; k <= m; ++k) {
    if (gamma[static_cast<std::size_t>(k - 1)] < 0.0 && 0.0 < gamma[static_cast<std::size_t>(k - 2)]) {
      return k;
    }
  }
  throw std::invalid_argument("classify_case: shifted spectrum contains zero or is unordered");
}

ShiftedSpectrum shift_spectrum(const Spectrum& s, int i) {
  const int n = s.order();
  if (i < 1 || i > n) throw std::out_of_range("shift_spectrum: index out of range");
  ShiftedSpectrum out;
  out.base_index = i;
  const double mu = s.lambda[static_cast<std::size_t>(i - 1)];
  for (int j = 1; j <= n - 1; ++j) {
    const int src = j < i ? j : j + 1;
    out.gamma.push_back(s.lambda[static_cast<std::size_t>(src - 1)] - mu);
  }
  out.case_index = classify_case(out.gamma);
  return out;
}

std::vector<double> reduced_linear_coefficients(std::span<const double> a, double mu) {
  const int n = static_cast<int>(a.size());
  auto coeff = [&](int k) { return k == n ? 1.0 : a[static_cast<std::size_t>(k)]; };
  std::vector<double> b(static_cast<std::size_t>(n - 1), 0.0);
  for (int i = 1; i <= n - 1; ++i) {
    double sum = 0.0;
    for (int k = i; k <= n; ++k) sum += coeff(k) * binomial(k, i) * std::pow(mu, k - i);
    b[static_cast<std::size_t>(i - 1)] = sum;
  }
  return b;
}

double characteristic_value(std::span<const double> a, double x) { return horner(a, x).first; }

std::vector<double> monic_from_roots(std::span<const double> roots) {
  // coefficients low to high, including the leading 1 while building
  std::vector<double> poly{1.0};
  for (double r : roots) {
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= r * poly[k];
    }
    poly = std::move(next);
  }
  poly.pop_back();
  return poly;
}

double vandermonde_product(std::span<const double> lambda) {
  double p = 1.0;
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    for (std::size_t l = k + 1; l < lambda.size(); ++l) p *= lambda[l] - lambda[k];
  }
  return p;
}

double pi_product(const Spectrum& s, int i) {
  const double li = s.lambda.at(static_cast<std::size_t>(i - 1));
  double p = 1.0;
  for (int j = 1; j <= s.order(); ++j) {
    if (j != i) p *= s.lambda[static_cast<std::size_t>(j - 1)] - li;
  }
  return p;
}

}  // namespace poincare::spectral
