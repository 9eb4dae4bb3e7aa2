#include "volterra/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace volterra {

namespace {

void require_finite(const std::vector<cplx>& coeffs) {
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (!std::isfinite(coeffs[k].real()) || !std::isfinite(coeffs[k].imag())) {
      throw std::invalid_argument("TruncatedSeries: coefficient " + std::to_string(k) +
                                  " is not finite");
    }
  }
}

}  // namespace

TruncatedSeries::TruncatedSeries() : coeffs_{cplx{}} {}

TruncatedSeries::TruncatedSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(cplx{});
  require_finite(coeffs_);
}

TruncatedSeries::TruncatedSeries(std::initializer_list<cplx> coeffs)
    : TruncatedSeries(std::vector<cplx>(coeffs)) {}

TruncatedSeries TruncatedSeries::zero(std::size_t degree) {
  return TruncatedSeries(std::vector<cplx>(degree + 1));
}

TruncatedSeries TruncatedSeries::monomial(std::size_t n, cplx scale) {
  std::vector<cplx> c(n + 1);
  c[n] = scale;
  return TruncatedSeries(std::move(c));
}

TruncatedSeries TruncatedSeries::from_real(std::span<const double> coeffs) {
  return TruncatedSeries(std::vector<cplx>(coeffs.begin(), coeffs.end()));
}

bool TruncatedSeries::is_zero(double tol) const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [tol](const cplx& c) { return std::abs(c) <= tol; });
}

bool TruncatedSeries::has_real_coeffs() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const cplx& c) { return c.imag() == 0.0; });
}

TruncatedSeries TruncatedSeries::truncated(std::size_t degree) const {
  std::vector<cplx> c(degree + 1);
  std::copy_n(coeffs_.begin(), std::min(c.size(), coeffs_.size()), c.begin());
  return TruncatedSeries(std::move(c));
}

TruncatedSeries TruncatedSeries::scaled(cplx factor) const {
  std::vector<cplx> c(coeffs_);
  for (auto& x : c) x *= factor;
  return TruncatedSeries(std::move(c));
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  std::vector<cplx> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
  return TruncatedSeries(std::move(c));
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  std::vector<cplx> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] - b[k];
  return TruncatedSeries(std::move(c));
}

TruncatedSeries cauchy_product(const TruncatedSeries& a, const TruncatedSeries& b,
                               std::size_t out_degree) {
  const auto ca = a.coeffs();
  const auto cb = b.coeffs();
  std::vector<cplx> out(out_degree + 1);
  const std::size_t na = std::min(ca.size(), out.size());
  for (std::size_t i = 0; i < na; ++i) {
    if (ca[i] == cplx{}) continue;
    const std::size_t nb = std::min(cb.size(), out.size() - i);
    for (std::size_t j = 0; j < nb; ++j) out[i + j] += ca[i] * cb[j];
  }
  return TruncatedSeries(std::move(out));
}

TruncatedSeries differentiate(const TruncatedSeries& a) {
  if (a.degree() == 0) return TruncatedSeries::zero(0);
  const auto c = a.coeffs();
  std::vector<cplx> out(a.degree());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = static_cast<double>(k + 1) * c[k + 1];
  return TruncatedSeries(std::move(out));
}

TruncatedSeries volterra_antiderivative(const TruncatedSeries& a) {
  const auto c = a.coeffs();
  std::vector<cplx> out(c.size() + 1);
  for (std::size_t k = 1; k < out.size(); ++k) out[k] = c[k - 1] / static_cast<double>(k);
  return TruncatedSeries(std::move(out));
}

cplx evaluate(const TruncatedSeries& a, cplx z) {
  const auto c = a.coeffs();
  cplx acc{};
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
  return acc;
}

std::pair<cplx, cplx> evaluate_with_derivative(const TruncatedSeries& a, cplx z) {
  const auto c = a.coeffs();
  cplx value{};
  cplx deriv{};
  for (std::size_t k = c.size(); k-- > 0;) {
    deriv = deriv * z + value;
    value = value * z + c[k];
  }
  return {value, deriv};
}

double max_abs_difference(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t n = std::max(a.degree(), b.degree()) + 1;
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

std::vector<double> real_series_pow(std::span<const double> h, double alpha, std::size_t n_terms) {
  if (h.empty() || !(h[0] > 0.0)) {
    throw std::invalid_argument("real_series_pow: leading coefficient must be positive");
  }
  std::vector<double> p(n_terms);
  if (n_terms == 0) return p;
  p[0] = std::pow(h[0], alpha);
  for (std::size_t n = 1; n < n_terms; ++n) {
    double acc = 0.0;
    const std::size_t kmax = std::min(n, h.size() - 1);
    for (std::size_t k = 1; k <= kmax; ++k) {
      acc += ((alpha + 1.0) * static_cast<double>(k) - static_cast<double>(n)) * h[k] * p[n - k];
    }
    p[n] = acc / (static_cast<double>(n) * h[0]);
  }
  return p;
}

std::vector<double> real_series_exp(std::span<const double> a, std::size_t n_terms) {
  std::vector<double> e(n_terms);
  if (n_terms == 0) return e;
  e[0] = std::exp(a.empty() ? 0.0 : a[0]);
  for (std::size_t n = 1; n < n_terms; ++n) {
    double acc = 0.0;
    const std::size_t kmax = a.empty() ? 0 : std::min(n, a.size() - 1);
    for (std::size_t k = 1; k <= kmax; ++k) acc += static_cast<double>(k) * a[k] * e[n - k];
    e[n] = acc / static_cast<double>(n);
  }
  return e;
}

std::vector<double> real_series_mul(std::span<const double> a, std::span<const double> b,
                                    std::size_t n_terms) {
  std::vector<double> out(n_terms);
  for (std::size_t i = 0; i < std::min(a.size(), n_terms); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n_terms; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace volterra
