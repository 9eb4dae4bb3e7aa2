#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "volterra/series.hpp"

using namespace volterra;

namespace {

TruncatedSeries random_series(std::mt19937_64& rng, std::size_t degree) {
  std::normal_distribution<double> n;
  std::vector<cplx> c(degree + 1);
  for (auto& x : c) x = {n(rng), n(rng)};
  return TruncatedSeries(std::move(c));
}

}  // namespace

TEST_CASE("product of series evaluates to the product of values") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const auto a = random_series(rng, 12);
    const auto b = random_series(rng, 9);
    const auto p = cauchy_product(a, b, 21);
    for (cplx z : {cplx(0.3, 0.1), cplx(-0.7, 0.2), cplx(0.0, 0.9)}) {
      CHECK(std::abs(evaluate(p, z) - evaluate(a, z) * evaluate(b, z)) < 1e-12);
    }
  }
}

TEST_CASE("truncated product keeps only the low coefficients") {
  const TruncatedSeries a{1.0, 1.0};
  const auto p = cauchy_product(a, a, 1);
  CHECK(p.degree() == 1);
  CHECK(p[0] == cplx(1.0));
  CHECK(p[1] == cplx(2.0));
}

TEST_CASE("derivative matches a central difference") {
  std::mt19937_64 rng(11);
  const auto a = random_series(rng, 10);
  const auto d = differentiate(a);
  const cplx z(0.4, -0.3);
  const double h = 1e-5;
  const cplx fd = (evaluate(a, z + h) - evaluate(a, z - h)) / (2.0 * h);
  CHECK(std::abs(evaluate(d, z) - fd) < 1e-7);
  const auto [v, dv] = evaluate_with_derivative(a, z);
  CHECK(std::abs(v - evaluate(a, z)) < 1e-14);
  CHECK(std::abs(dv - evaluate(d, z)) < 1e-12);
}

TEST_CASE("antiderivative vanishes at 0 and differentiates back") {
  std::mt19937_64 rng(13);
  const auto a = random_series(rng, 15);
  const auto p = volterra_antiderivative(a);
  CHECK(p[0] == cplx(0.0));
  CHECK(max_abs_difference(differentiate(p), a) < 1e-14);
  CHECK(differentiate(TruncatedSeries{3.0}).is_zero());
}

TEST_CASE("non-finite coefficients are rejected") {
  CHECK_THROWS_AS(TruncatedSeries({cplx(1.0), cplx(NAN, 0.0)}), std::invalid_argument);
}

TEST_CASE("real series helpers") {
  // (1 - x)^{-1/2}: coefficients binom(2n, n) / 4^n.
  const std::vector<double> h{1.0, -1.0};
  const auto p = real_series_pow(h, -0.5, 8);
  double c = 1.0;
  for (int n = 0; n < 8; ++n) {
    CHECK(p[n] == doctest::Approx(c).epsilon(1e-14));
    c *= (2.0 * n + 1.0) / (2.0 * n + 2.0);
  }
  const std::vector<double> x{0.0, 1.0};
  const auto e = real_series_exp(x, 10);
  double f = 1.0;
  for (int n = 0; n < 10; ++n) {
    CHECK(e[n] == doctest::Approx(1.0 / f).epsilon(1e-14));
    f *= n + 1;
  }
  const auto m = real_series_mul(h, h, 3);
  CHECK(m[0] == 1.0);
  CHECK(m[1] == -2.0);
  CHECK(m[2] == 1.0);
}
