#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "volterra/series.hpp"

namespace volterra {

/// Default number of Taylor coefficients kept for catalog symbols.
inline constexpr std::size_t kSymbolCoefficients = 2048;

/// A symbol g with its truncated Taylor series and evaluators for g, g'
/// and g''. Catalog entries evaluate through closed forms; `poly:[...]`
/// evaluates its coefficients exactly.
class SymbolSpec {
public:
  using Evaluator = std::function<cplx(cplx)>;

  SymbolSpec() = default;
  SymbolSpec(std::string name, TruncatedSeries coeffs, bool univalent, Evaluator g,
             Evaluator dg, Evaluator d2g, bool closed_form);
  /// Symbol given by coefficients only.
  static SymbolSpec from_coefficients(std::string name, TruncatedSeries coeffs,
                                      bool univalent = false);

  const std::string& name() const { return name_; }
  const TruncatedSeries& coeffs() const { return coeffs_; }
  bool univalent() const { return univalent_; }
  bool has_closed_form() const { return closed_form_; }
  bool real_coefficients() const { return real_; }
  /// True when every coefficient is at most tol in modulus.
  bool is_zero(double tol = 1e-14) const { return coeffs_.is_zero(tol); }

  cplx value(cplx z) const { return g_(z); }
  cplx derivative(cplx z) const { return dg_(z); }
  cplx second_derivative(cplx z) const { return d2g_(z); }

private:
  std::string name_;
  TruncatedSeries coeffs_;
  bool univalent_ = false;
  bool closed_form_ = false;
  bool real_ = true;
  Evaluator g_, dg_, d2g_;
};

/// Parses neglog1mz | identity | cayleypow:<gamma> | expz | zero |
/// poly:[c0,c1,...] (real coefficients). Throws std::invalid_argument.
SymbolSpec make_symbol(std::string_view spec, std::size_t n_coeffs = kSymbolCoefficients);

}  // namespace volterra
