#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace poincare::spectral {

/// The characteristic roots cannot be ordered as required: the pipeline
/// must stop.
class SpectrumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ComplexRootsError : public SpectrumError {
 public:
  using SpectrumError::SpectrumError;
};
class RepeatedRootsError : public SpectrumError {
 public:
  using SpectrumError::SpectrumError;
};

/// Real, simple roots of the unperturbed characteristic polynomial,
/// strictly decreasing.
struct Spectrum {
  std::vector<double> lambda;
  double separation = 0.0;  // smallest gap between neighbours

  int order() const { return static_cast<int>(lambda.size()); }
};

/// gamma_j = lambda_j - lambda_i (j < i), lambda_{j+1} - lambda_i (j >= i).
struct ShiftedSpectrum {
  std::vector<double> gamma;  // strictly decreasing, none zero
  int base_index = 0;         // i, 1-based
  int case_index = 0;         // k in 1..n: which sign pattern gamma falls in

  int order() const { return static_cast<int>(gamma.size()) + 1; }
};

/// Roots of lambda^n + sum a_i lambda^i via companion-matrix eigenvalues,
/// each polished by one Newton step. Requires n >= 2.
Spectrum find_roots(std::span<const double> a);

/// Same as find_roots for any degree >= 1 (coefficients c_0..c_{d-1} of a
/// monic polynomial). Returns roots sorted decreasing.
std::vector<double> real_simple_roots(std::span<const double> monic_coeffs);

ShiftedSpectrum shift_spectrum(const Spectrum& s, int i);

/// 1 if gamma_1 < 0, n if gamma_{n-1} > 0, else the k with
/// gamma_k < 0 < gamma_{k-1}.
int classify_case(std::span<const double> gamma);

/// (b_0, ..., b_{n-2}) of the linear part z^(n-1) + sum b_i z^(i), with
/// b_{i-1} = sum_{k=i}^{n} a_k C(k,i) mu^{k-i} and a_n = 1.
std::vector<double> reduced_linear_coefficients(std::span<const double> a, double mu);

/// x^n + sum a_i x^i (Horner).
double characteristic_value(std::span<const double> a, double x);

/// c_0..c_{d-1} of prod (s - root).
std::vector<double> monic_from_roots(std::span<const double> roots);

/// prod_{k<l} (lambda_l - lambda_k).
double vandermonde_product(std::span<const double> lambda);

/// pi_i = prod_{j != i} (lambda_j - lambda_i), i 1-based.
double pi_product(const Spectrum& s, int i);

}  // namespace poincare::spectral
