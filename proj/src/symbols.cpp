#include "volterra/symbols.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "volterra/util.hpp"

namespace volterra {

SymbolSpec::SymbolSpec(std::string name, TruncatedSeries coeffs, bool univalent, Evaluator g,
                       Evaluator dg, Evaluator d2g, bool closed_form)
    : name_(std::move(name)),
      coeffs_(std::move(coeffs)),
      univalent_(univalent),
      closed_form_(closed_form),
      real_(coeffs_.has_real_coeffs()),
      g_(std::move(g)),
      dg_(std::move(dg)),
      d2g_(std::move(d2g)) {}

SymbolSpec SymbolSpec::from_coefficients(std::string name, TruncatedSeries coeffs, bool univalent) {
  auto d1 = std::make_shared<TruncatedSeries>(differentiate(coeffs));
  auto d2 = std::make_shared<TruncatedSeries>(differentiate(*d1));
  auto c = std::make_shared<TruncatedSeries>(coeffs);
  return SymbolSpec(
      std::move(name), coeffs, univalent, [c](cplx z) { return evaluate(*c, z); },
      [d1](cplx z) { return evaluate(*d1, z); }, [d2](cplx z) { return evaluate(*d2, z); },
      false);
}

namespace {

SymbolSpec neglog1mz(std::size_t n) {
  std::vector<cplx> c(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) c[k] = 1.0 / static_cast<double>(k);
  return SymbolSpec(
      "neglog1mz", TruncatedSeries(std::move(c)), true, [](cplx z) { return -std::log(1.0 - z); },
      [](cplx z) { return 1.0 / (1.0 - z); },
      [](cplx z) {
        const cplx w = 1.0 - z;
        return 1.0 / (w * w);
      },
      true);
}

SymbolSpec identity() {
  return SymbolSpec(
      "identity", TruncatedSeries{0.0, 1.0}, true, [](cplx z) { return z; },
      [](cplx) { return cplx(1.0); }, [](cplx) { return cplx(0.0); }, true);
}

SymbolSpec zero_symbol() {
  return SymbolSpec(
      "zero", TruncatedSeries::zero(), false, [](cplx) { return cplx(0.0); },
      [](cplx) { return cplx(0.0); }, [](cplx) { return cplx(0.0); }, true);
}

SymbolSpec expz(std::size_t n) {
  std::vector<cplx> c(n, 0.0);
  double term = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    c[k] = term;
    term /= static_cast<double>(k + 1);
  }
  auto e = [](cplx z) { return std::exp(z); };
  return SymbolSpec("expz", TruncatedSeries(std::move(c)), false, e, e, e, true);
}

// g = ((1+z)/(1-z))^gamma, g' = 2 gamma g / (1-z^2),
// g'' = 4 gamma g (gamma + z) / (1-z^2)^2.
SymbolSpec cayleypow(double gamma, std::size_t n) {
  std::vector<double> h(n, 2.0);
  h[0] = 1.0;
  const auto p = real_series_pow(h, gamma, n);
  auto g = [gamma](cplx z) { return std::pow((1.0 + z) / (1.0 - z), gamma); };
  auto dg = [gamma, g](cplx z) { return 2.0 * gamma * g(z) / (1.0 - z * z); };
  auto d2g = [gamma, g](cplx z) {
    const cplx q = 1.0 - z * z;
    return 4.0 * gamma * g(z) * (gamma + z) / (q * q);
  };
  return SymbolSpec("cayleypow:" + format_number(gamma), TruncatedSeries::from_real(p),
                    gamma <= 1.0, g, dg, d2g, true);
}

SymbolSpec poly(std::string_view body) {
  if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
    throw std::invalid_argument("symbol poly: expected poly:[c0,c1,...]");
  }
  body = body.substr(1, body.size() - 2);
  std::vector<double> c;
  std::string name = "poly:[";
  while (true) {
    const auto comma = body.find(',');
    auto item = body.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    c.push_back(parse_number(item, "poly coefficient"));
    if (c.size() > 1) name += ',';
    name += format_number(c.back());
    if (comma == std::string_view::npos) break;
    body = body.substr(comma + 1);
  }
  name += ']';
  return SymbolSpec::from_coefficients(name, TruncatedSeries::from_real(c));
}

}  // namespace

SymbolSpec make_symbol(std::string_view spec, std::size_t n_coeffs) {
  if (n_coeffs < 2) throw std::invalid_argument("make_symbol: need at least 2 coefficients");
  if (spec == "neglog1mz") return neglog1mz(n_coeffs);
  if (spec == "identity") return identity();
  if (spec == "zero") return zero_symbol();
  if (spec == "expz") return expz(n_coeffs);
  if (spec.starts_with("cayleypow:")) {
    const double gamma = parse_number(spec.substr(10), "cayleypow exponent");
    if (!(gamma > 0.0)) throw std::invalid_argument("cayleypow: exponent must be positive");
    return cayleypow(gamma, n_coeffs);
  }
  if (spec.starts_with("poly:")) return poly(spec.substr(5));
  throw std::invalid_argument("unknown symbol '" + std::string(spec) +
                              "' (expected neglog1mz, identity, cayleypow:<g>, expz, zero or "
                              "poly:[c0,...])");
}

}  // namespace volterra
