#include "poincare/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace poincare::poly {

Polynomial Polynomial::constant(std::size_t nvars, Rational c) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw std::out_of_range("Polynomial::variable: index out of range");
  Exponents e(nvars, 0);
  e[index] = 1;
  Polynomial p(nvars);
  p.add_term(e, Rational(1));
  return p;
}

void Polynomial::check_same(const Polynomial& o) const {
  if (o.nvars_ != nvars_) throw std::invalid_argument("Polynomial: variable count mismatch");
}

void Polynomial::add_term(const Exponents& e, Rational c) {
  if (e.size() != nvars_) throw std::invalid_argument("Polynomial: exponent length mismatch");
  if (c.numerator() == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.numerator() == 0) terms_.erase(it);
  }
}

Rational Polynomial::coefficient(const Exponents& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::degree_in(std::span<const std::size_t> vars) const {
  int best = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (std::size_t v : vars) d += e.at(v);
    best = std::max(best, d);
  }
  return best;
}

int Polynomial::total_degree() const {
  int best = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (auto x : e) d += x;
    best = std::max(best, d);
  }
  return best;
}

Polynomial Polynomial::derive(const std::vector<Polynomial>& images) const {
  if (images.size() != nvars_) throw std::invalid_argument("Polynomial::derive: need one image per variable");
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    for (std::size_t k = 0; k < nvars_; ++k) {
      if (e[k] == 0 || images[k].is_zero()) continue;
      Exponents reduced = e;
      reduced[k] -= 1;
      Polynomial factor(nvars_);
      factor.add_term(reduced, c * Rational(e[k]));
      out += factor * images[k];
    }
  }
  return out;
}

double Polynomial::evaluate(std::span<const double> values) const {
  if (values.size() != nvars_) throw std::invalid_argument("Polynomial::evaluate: wrong number of values");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = static_cast<double>(c.numerator()) / static_cast<double>(c.denominator());
    for (std::size_t k = 0; k < nvars_; ++k) {
      for (int p = 0; p < e[k]; ++p) term *= values[k];
    }
    sum += term;
  }
  return sum;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_same(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_same(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c.numerator() == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_same(b);
  Polynomial out(a.nvars_);
  Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) {
        const int s = ea[k] + eb[k];
        if (s > 255) throw std::overflow_error("Polynomial: exponent overflow");
        e[k] = static_cast<std::uint8_t>(s);
      }
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  out *= Rational(-1);
  return out;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial out = constant(nvars_, Rational(1));
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

std::map<Exponents, Polynomial> Polynomial::group_by(std::span<const std::size_t> vars) const {
  std::map<Exponents, Polynomial> groups;
  for (const auto& [e, c] : terms_) {
    Exponents key;
    key.reserve(vars.size());
    Exponents rest = e;
    for (std::size_t v : vars) {
      key.push_back(e.at(v));
      rest[v] = 0;
    }
    auto [it, inserted] = groups.try_emplace(key, nvars_);
    it->second.add_term(rest, c);
  }
  return groups;
}

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

std::string to_string(const Polynomial& p, std::span<const std::string> names) {
  if (names.size() != p.nvars()) throw std::invalid_argument("to_string: need one name per variable");
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    Rational mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) out += '-';
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += names[k];
      if (e[k] > 1) mono += "^" + std::to_string(e[k]);
    }
    if (mono.empty()) {
      out += to_string(mag);
    } else if (mag.numerator() == 1 && mag.denominator() == 1) {
      out += mono;
    } else {
      out += to_string(mag) + "*" + mono;
    }
  }
  return out;
}

}  // namespace poincare::poly
