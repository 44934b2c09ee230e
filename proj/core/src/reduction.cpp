#include "poincare/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace poincare::reduction {

namespace {

Rational binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return Rational(r);
}

}  // namespace

std::vector<std::string> SymbolLayout::names() const {
  std::vector<std::string> out(count());
  for (int k = 0; k < n; ++k) {
    out[v(k)] = "v" + std::to_string(k);
    out[a(k)] = "a" + std::to_string(k);
    out[r(k)] = "r" + std::to_string(k);
  }
  out[mu()] = "mu";
  return out;
}

std::vector<std::size_t> SymbolLayout::jet_vars() const {
  std::vector<std::size_t> out;
  for (int k = 0; k + 1 < n; ++k) out.push_back(v(k));
  return out;
}

DerivativePolynomials build_derivative_polynomials(int n) {
  if (n < 2 || n > kMaxSymbolicOrder) {
    throw std::invalid_argument("build_derivative_polynomials: order " + std::to_string(n) +
                                " outside 2.." + std::to_string(kMaxSymbolicOrder));
  }
  DerivativePolynomials d;
  d.layout.n = n;
  const auto& L = d.layout;

  std::vector<Polynomial> images(L.count(), Polynomial(L.count()));
  for (int k = 0; k + 1 < n; ++k) images[L.v(k)] = L.var(L.v(k + 1));

  const Polynomial first = L.var(L.v(0)) + L.var(L.mu());
  d.P.push_back(L.constant(Rational(1)));
  for (int j = 0; j < n; ++j) d.P.push_back(first * d.P.back() + d.P.back().derive(images));
  return d;
}

ReducedParts build_reduced_parts(int n) {
  const DerivativePolynomials d = build_derivative_polynomials(n);
  ReducedParts parts;
  parts.layout = d.layout;
  const auto& L = parts.layout;

  parts.Q = d.P[static_cast<std::size_t>(n)];
  for (int i = 0; i < n; ++i) {
    parts.Q += (L.var(L.a(i)) + L.var(L.r(i))) * d.P[static_cast<std::size_t>(i)];
  }

  auto coeff = [&](int k) { return k == n ? L.constant(Rational(1)) : L.var(L.a(k)); };
  const Polynomial mu = L.var(L.mu());

  parts.linear = L.var(L.v(n - 1));
  for (int i = 1; i <= n - 1; ++i) {
    Polynomial b(L.count());
    for (int k = i; k <= n; ++k) b += binomial(k, i) * (coeff(k) * mu.pow(static_cast<unsigned>(k - i)));
    parts.linear += b * L.var(L.v(i - 1));
  }

  parts.constant = Polynomial(L.count());
  for (int k = 0; k <= n; ++k) parts.constant += coeff(k) * mu.pow(static_cast<unsigned>(k));

  parts.rhs = parts.linear + parts.constant - parts.Q;
  return parts;
}

Polynomial OmegaTable::omega0() const {
  const auto it = omega.find(zero_index());
  return it == omega.end() ? Polynomial(layout.count()) : it->second;
}

Polynomial OmegaTable::full() const {
  Polynomial out(layout.count());
  for (const auto& [alpha, coeff] : omega) {
    Polynomial mono = layout.constant(Rational(1));
    for (int k = 0; k + 1 < layout.n; ++k) {
      mono = mono * layout.var(layout.v(k)).pow(alpha[static_cast<std::size_t>(k)]);
    }
    out += coeff * mono;
  }
  return out;
}

Polynomial OmegaTable::h_hat() const {
  Polynomial out(layout.count());
  for (const auto& [alpha, coeff] : omega) {
    if (index_degree(alpha) > 0) out += coeff;
  }
  return out;
}

OmegaTable build_reduced_rhs(int n) {
  const ReducedParts parts = build_reduced_parts(n);
  const auto& L = parts.layout;
  const std::size_t top[] = {L.v(n - 1)};
  if (parts.rhs.degree_in(top) > 0) {
    throw std::logic_error("build_reduced_rhs: highest derivative survived on the right side");
  }
  OmegaTable table;
  table.layout = L;
  const auto jets = L.jet_vars();
  table.omega = parts.rhs.group_by(jets);
  return table;
}

int index_degree(const Exponents& alpha) {
  int d = 0;
  for (auto e : alpha) d += e;
  return d;
}

std::string format_omega_table(const OmegaTable& table) {
  std::vector<std::pair<Exponents, const Polynomial*>> rows;
  for (const auto& [alpha, coeff] : table.omega) rows.emplace_back(alpha, &coeff);
  std::stable_sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
    const int dx = index_degree(x.first);
    const int dy = index_degree(y.first);
    if (dx != dy) return dx < dy;
    return x.first > y.first;
  });
  const auto names = table.layout.names();
  std::ostringstream os;
  os << "# n = " << table.order() << ", index over (z, z', ..., z^(n-2)), "
     << rows.size() << " entries\n";
  for (const auto& [alpha, coeff] : rows) {
    os << '(';
    for (std::size_t k = 0; k < alpha.size(); ++k) {
      if (k > 0) os << ',';
      os << static_cast<int>(alpha[k]);
    }
    os << ")  " << poly::to_string(*coeff, names) << '\n';
  }
  return os.str();
}

NumericOmega::NumericOmega(const OmegaTable& table, double mu, std::span<const double> a)
    : n_(table.order()), mu_(mu) {
  if (static_cast<int>(a.size()) != n_) throw std::invalid_argument("NumericOmega: a has wrong length");
  const auto& L = table.layout;
  std::vector<double> values(L.count(), 0.0);
  values[L.mu()] = mu;
  for (int k = 0; k < n_; ++k) values[L.a(k)] = a[static_cast<std::size_t>(k)];

  for (const auto& [alpha, coeff] : table.omega) {
    const double base = coeff.evaluate(values);
    alphas_.push_back(alpha);
    base_.push_back(base);
    for (int k = 0; k < n_; ++k) {
      values[L.r(k)] = 1.0;
      rcoef_.push_back(coeff.evaluate(values) - base);
      values[L.r(k)] = 0.0;
    }
    if (index_degree(alpha) == 0) {
      zero_ = alphas_.size() - 1;
      has_zero_ = true;
    }
  }
}

double NumericOmega::omega(std::size_t k, std::span<const double> r) const {
  double v = base_[k];
  const double* c = rcoef_.data() + k * static_cast<std::size_t>(n_);
  for (int j = 0; j < n_; ++j) v += c[j] * r[static_cast<std::size_t>(j)];
  return v;
}

double NumericOmega::omega0(std::span<const double> r) const { return has_zero_ ? omega(zero_, r) : 0.0; }

double NumericOmega::evaluate(std::span<const double> r, std::span<const double> z) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < alphas_.size(); ++k) {
    double term = omega(k, r);
    const auto& alpha = alphas_[k];
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      for (int p = 0; p < alpha[j]; ++p) term *= z[j];
    }
    sum += term;
  }
  return sum;
}

void NumericOmega::coefficients(std::span<const double> r, std::vector<double>& out) const {
  out.resize(alphas_.size());
  for (std::size_t k = 0; k < alphas_.size(); ++k) out[k] = omega(k, r);
}

std::vector<double> NumericOmega::mass_by_degree(std::span<const double> r) const {
  std::vector<double> mass(static_cast<std::size_t>(n_ + 1), 0.0);
  for (std::size_t k = 0; k < alphas_.size(); ++k) {
    mass[static_cast<std::size_t>(index_degree(alphas_[k]))] += std::abs(omega(k, r));
  }
  return mass;
}

double NumericOmega::nonlinear_mass(std::span<const double> r) const {
  double m = 0.0;
  for (std::size_t k = 0; k < alphas_.size(); ++k) {
    if (!(has_zero_ && k == zero_)) m += std::abs(omega(k, r));
  }
  return m;
}

double NumericOmega::h_hat(std::span<const double> r) const {
  double m = 0.0;
  for (std::size_t k = 0; k < alphas_.size(); ++k) {
    if (!(has_zero_ && k == zero_)) m += omega(k, r);
  }
  return m;
}

double evaluate_rhs(const OmegaTable& table, std::span<const double> a, double mu,
                    std::span<const double> r, std::span<const double> z) {
  const auto& L = table.layout;
  const int n = L.n;
  if (static_cast<int>(a.size()) != n || static_cast<int>(r.size()) != n ||
      static_cast<int>(z.size()) != n - 1) {
    throw std::invalid_argument("evaluate_rhs: argument lengths do not match the order");
  }
  std::vector<double> values(L.count(), 0.0);
  values[L.mu()] = mu;
  for (int k = 0; k < n; ++k) {
    values[L.a(k)] = a[static_cast<std::size_t>(k)];
    values[L.r(k)] = r[static_cast<std::size_t>(k)];
  }
  double sum = 0.0;
  for (const auto& [alpha, coeff] : table.omega) {
    double term = coeff.evaluate(values);
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      for (int p = 0; p < alpha[j]; ++p) term *= z[j];
    }
    sum += term;
  }
  return sum;
}

}  // namespace poincare::reduction
