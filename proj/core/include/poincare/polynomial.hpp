#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace poincare::poly {

using Rational = boost::rational<std::int64_t>;
using Exponents = std::vector<std::uint8_t>;

/// Sparse multivariate polynomial with exact rational coefficients over a
/// fixed number of variables. Zero coefficients are never stored.
class Polynomial {
 public:
  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, Rational c);
  static Polynomial variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Exponents& e, Rational c);
  Rational coefficient(const Exponents& e) const;

  /// Largest sum of exponents over the selected variables.
  int degree_in(std::span<const std::size_t> vars) const;
  int total_degree() const;

  /// Extends a derivation from its values on the variables by the
  /// product rule.
  Polynomial derive(const std::vector<Polynomial>& images) const;

  double evaluate(std::span<const double> values) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Polynomial pow(unsigned k) const;

  /// Splits into groups keyed by the exponents of the selected variables;
  /// each group keeps the remaining factor (selected exponents zeroed).
  std::map<Exponents, Polynomial> group_by(std::span<const std::size_t> vars) const;

 private:
  void check_same(const Polynomial& o) const;

  std::size_t nvars_;
  std::map<Exponents, Rational> terms_;
};

std::string to_string(const Rational& q);

/// Human-readable form, e.g. "-3*mu*v0^2 + 1/2*r1".
std::string to_string(const Polynomial& p, std::span<const std::string> names);

}  // namespace poincare::poly
