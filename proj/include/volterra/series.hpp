#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace volterra {

using cplx = std::complex<double>;

/// Taylor coefficients c_0..c_N of an analytic function on the unit disk.
///
/// The degree is always coeffs().size() - 1, so a TruncatedSeries is never
/// empty; the zero function is the degree-0 series {0}. Construction rejects
/// non-finite coefficients.
class TruncatedSeries {
public:
  TruncatedSeries();
  explicit TruncatedSeries(std::vector<cplx> coeffs);
  TruncatedSeries(std::initializer_list<cplx> coeffs);

  static TruncatedSeries zero(std::size_t degree = 0);
  static TruncatedSeries monomial(std::size_t n, cplx scale = 1.0);
  static TruncatedSeries from_real(std::span<const double> coeffs);

  std::size_t degree() const { return coeffs_.size() - 1; }
  std::span<const cplx> coeffs() const { return coeffs_; }
  cplx operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : cplx{}; }

  bool is_zero(double tol = 0.0) const;
  bool has_real_coeffs() const;

  TruncatedSeries truncated(std::size_t degree) const;
  TruncatedSeries scaled(cplx factor) const;

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);

private:
  std::vector<cplx> coeffs_;
};

/// Coefficient k of the result is sum_{i+j=k} a_i b_j for k <= out_degree.
TruncatedSeries cauchy_product(const TruncatedSeries& a, const TruncatedSeries& b,
                               std::size_t out_degree);

/// Term-by-term derivative; a constant maps to the degree-0 zero series.
TruncatedSeries differentiate(const TruncatedSeries& a);

/// Primitive vanishing at the origin: coefficient k is a_{k-1}/k.
TruncatedSeries volterra_antiderivative(const TruncatedSeries& a);

/// Horner evaluation.
cplx evaluate(const TruncatedSeries& a, cplx z);

/// Value and first derivative in one Horner pass.
std::pair<cplx, cplx> evaluate_with_derivative(const TruncatedSeries& a, cplx z);

double max_abs_difference(const TruncatedSeries& a, const TruncatedSeries& b);

// Real power-series helpers used to build closed-form catalogs. Both use the
// J.C.P. Miller recurrences and keep n_terms coefficients.

/// h^alpha for a series with h[0] > 0.
std::vector<double> real_series_pow(std::span<const double> h, double alpha, std::size_t n_terms);
/// exp(a) for a real series a.
std::vector<double> real_series_exp(std::span<const double> a, std::size_t n_terms);
/// Truncated product of two real series.
std::vector<double> real_series_mul(std::span<const double> a, std::span<const double> b,
                                    std::size_t n_terms);

}  // namespace volterra
