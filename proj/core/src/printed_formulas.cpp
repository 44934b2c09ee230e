#include "poincare/printed_formulas.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "poincare/number_format.hpp"

namespace poincare::printed {

using poly::Polynomial;
using poly::Rational;
using reduction::SymbolLayout;

namespace {

std::int64_t choose(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// (z+mu)^(l)
Polynomial shifted(const SymbolLayout& L, int l) {
  if (l == 0) return L.var(L.v(0)) + L.var(L.mu());
  return L.var(L.v(l));
}

// Walks every (l_1..l_m) of the nested sums of S_{m,j}, handing the tuple
// and its binomial weight to `visit`.
void for_each_tuple(int m, int j, const std::function<void(const std::vector<int>&, std::int64_t)>& visit) {
  std::vector<int> l(static_cast<std::size_t>(m), 0);
  std::function<void(int, int)> rec = [&](int k, int used) {
    if (k == m) {
      std::int64_t w = choose(j - 1, l[0]);
      int partial = l[0];
      for (int i = 1; i <= m - 1; ++i) {
        w *= choose(j - partial - i - 1, l[static_cast<std::size_t>(i)]);
        partial += l[static_cast<std::size_t>(i)];
      }
      visit(l, w);
      return;
    }
    const int upper = j - used - (m + 2);
    for (int v = 0; v <= upper; ++v) {
      l[static_cast<std::size_t>(k)] = v;
      rec(k + 1, used + v);
    }
  };
  rec(0, 0);
}

}  // namespace

Polynomial printed_S(const SymbolLayout& L, int m, int j) {
  if (m == 0) {
    return L.var(L.v(j - 1)) + Rational(j - 1) * (L.var(L.v(j - 2)) * shifted(L, 0));
  }
  Polynomial out(L.count());
  for_each_tuple(m, j, [&](const std::vector<int>& l, std::int64_t w) {
    if (w == 0) return;
    int sum = 0;
    Polynomial term = L.constant(Rational(w));
    for (int x : l) {
      term = term * shifted(L, x);
      sum += x;
    }
    const int rest = j - sum - m - 1;
    term = term * (shifted(L, rest) + Rational(rest) * (shifted(L, rest - 1) * shifted(L, 0)));
    out += term;
  });
  return out;
}

Polynomial printed_F(int n) {
  if (n < 3 || n > reduction::kMaxSymbolicOrder) {
    throw std::invalid_argument("printed_F: order must be between 3 and " +
                                std::to_string(reduction::kMaxSymbolicOrder));
  }
  SymbolLayout L{n};
  const Polynomial v0 = L.var(L.v(0));
  const Polynomial v1 = L.var(L.v(1));
  const Polynomial mu = L.var(L.mu());
  const Polynomial zmu = v0 + mu;

  Polynomial F = Rational(n - 1) * (L.var(L.v(n - 2)) * v0);
  for (int m = 1; m <= n - 3; ++m) F += printed_S(L, m, n);

  for (int i = 3; i <= n - 1; ++i) {
    Polynomial ai = Rational(i - 1) * (L.var(L.v(i - 2)) * v0);
    for (int m = 1; m <= i - 3; ++m) ai += printed_S(L, m, i);
    ai += L.var(L.v(i - 1)) * v1;
    for (int j = 1; j <= i - 2; ++j) {
      ai += Rational(choose(i, j)) * (L.var(L.v(i - j)) * mu.pow(static_cast<unsigned>(j)));
    }
    F += L.var(L.a(i)) * ai;

    Polynomial ri(L.count());
    for (int m = 0; m <= i - 3; ++m) ri += printed_S(L, m, i);
    ri += L.var(L.v(i - 1)) * v1;
    ri += zmu.pow(static_cast<unsigned>(i));
    F += L.var(L.r(i)) * ri;
  }

  F += L.var(L.a(2)) * v0.pow(2);
  F += L.var(L.r(2)) * (v1 + zmu.pow(2));
  F += L.var(L.r(1)) * zmu;
  F += L.var(L.r(0));
  return F;
}

double printed_F_reference(int n, std::span<const double> a, double mu, std::span<const double> r,
                           std::span<const double> z) {
  if (static_cast<int>(a.size()) != n || static_cast<int>(r.size()) != n ||
      static_cast<int>(z.size()) != n - 1) {
    throw std::invalid_argument("printed_F_reference: argument lengths do not match the order");
  }
  SymbolLayout L{n};
  std::vector<double> values(L.count(), 0.0);
  for (int k = 0; k + 1 < n; ++k) values[L.v(k)] = z[static_cast<std::size_t>(k)];
  values[L.mu()] = mu;
  for (int k = 0; k < n; ++k) {
    values[L.a(k)] = a[static_cast<std::size_t>(k)];
    values[L.r(k)] = r[static_cast<std::size_t>(k)];
  }
  return printed_F(n).evaluate(values);
}

namespace {

double hat_S(int m, int j, double mu) {
  if (m == 0) return j + mu * (j - 1);
  double sum = 0.0;
  for_each_tuple(m, j, [&](const std::vector<int>& l, std::int64_t w) {
    int s = 0;
    for (int x : l) s += x;
    const int rest = j - s - m - 1;
    sum += static_cast<double>(w) * (1.0 + rest * (1.0 + mu));
  });
  return sum;
}

}  // namespace

double printed_H_hat(int n, std::span<const double> a, double mu, std::span<const double> r) {
  if (n < 3) throw std::invalid_argument("printed_H_hat: order must be at least 3");
  auto A = [&](int k) { return a[static_cast<std::size_t>(k)]; };
  auto R = [&](int k) { return r[static_cast<std::size_t>(k)]; };
  double h = (n - 1) + A(2) + R(2) * (2.0 + 2.0 * mu) + R(1);
  for (int m = 1; m <= n - 3; ++m) h += hat_S(m, n, mu);
  for (int i = 3; i <= n - 1; ++i) {
    double ai = (i - 1) + 1.0;
    for (int m = 1; m <= i - 3; ++m) ai += hat_S(m, i, mu);
    for (int j = 1; j <= i - 2; ++j) ai += static_cast<double>(choose(i, j)) * std::pow(mu, j);
    double ri = std::pow(1.0 + mu, i);
    for (int m = 0; m <= i - 3; ++m) ri += hat_S(m, i, mu);
    h += A(i) * ai + R(i) * ri;
  }
  return h;
}

CrossCheckReport cross_check(int n, int samples, std::uint64_t seed) {
  CrossCheckReport rep;
  rep.n = n;
  rep.samples = samples;

  const auto parts = reduction::build_reduced_parts(n);
  const auto table = reduction::build_reduced_rhs(n);
  const Polynomial reference = parts.Q - parts.linear - parts.constant;  // = -rhs
  const Polynomial printed = printed_F(n);
  const Polynomial diff = printed - reference;
  for (const auto& [e, c] : diff.terms()) {
    rep.mismatches.push_back({e, printed.coefficient(e), reference.coefficient(e)});
  }
  rep.agrees = rep.mismatches.empty();

  const auto& L = parts.layout;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> values(L.count());
  std::vector<double> a(static_cast<std::size_t>(n)), r(static_cast<std::size_t>(n));
  for (int s = 0; s < samples; ++s) {
    for (auto& v : values) v = unit(rng);
    for (int k = 0; k < n; ++k) {
      a[static_cast<std::size_t>(k)] = values[L.a(k)];
      r[static_cast<std::size_t>(k)] = values[L.r(k)];
    }
    rep.max_abs_gap = std::max(rep.max_abs_gap, std::abs(printed.evaluate(values) - reference.evaluate(values)));
    // The table's H-hat is the signed sum for the right side, the printed one
    // is for F, so they differ by a sign.
    std::vector<double> tv = values;
    for (int k = 0; k + 1 < n; ++k) tv[L.v(k)] = 0.0;
    const double table_h = -table.h_hat().evaluate(tv);
    rep.max_abs_gap_h =
        std::max(rep.max_abs_gap_h, std::abs(printed_H_hat(n, a, values[L.mu()], r) - table_h));
  }

  const auto names = L.names();
  std::ostringstream os;
  os << "# printed F versus the recurrence-built right side, n = " << n << '\n';
  os << "# the printed F is compared with Q - L - C (the negated table polynomial)\n";
  os << "# exact comparison: " << (rep.agrees ? "agree" : "DISAGREE") << ", " << rep.mismatches.size()
     << " mismatching monomial(s)\n";
  if (!rep.mismatches.empty()) os << "monomial\tprinted\trecurrence\n";
  for (const auto& mm : rep.mismatches) {
    Polynomial mono(L.count());
    mono.add_term(mm.monomial, Rational(1));
    os << poly::to_string(mono, names) << '\t' << poly::to_string(mm.printed) << '\t'
       << poly::to_string(mm.recurrence) << '\n';
  }
  os << "# numeric comparison at " << samples << " random points: max |printed - recurrence| = "
     << format_double(rep.max_abs_gap) << (rep.max_abs_gap <= 1e-12 ? " (agree to 1e-12)" : " (disagree)")
     << '\n';
  os << "# printed H-hat versus table sum over nonzero indices (all z-derivatives = 1): max gap = "
     << format_double(rep.max_abs_gap_h) << (rep.max_abs_gap_h <= 1e-12 ? " (agree)" : " (disagree)") << '\n';
  rep.text = os.str();
  return rep;
}

}  // namespace poincare::printed
