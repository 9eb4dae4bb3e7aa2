#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "volterra/quadrature.hpp"

using namespace volterra;

TEST_CASE("Gauss-Legendre rule integrates polynomials of degree 2n-1") {
  for (int order : {2, 5, 16}) {
    const GaussRule& g = gauss_legendre(order);
    double wsum = 0.0;
    for (double w : g.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    const int p = 2 * order - 2;
    double s = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], p);
    CHECK(s == doctest::Approx(2.0 / (p + 1)).epsilon(1e-13));
  }
  // Two-point nodes are +-1/sqrt(3).
  CHECK(std::abs(gauss_legendre(2).nodes[1]) == doctest::Approx(1.0 / std::sqrt(3.0)));
}

TEST_CASE("endpoint singularity toward 1") {
  // int_0^{1-2^-m} dr/(1-r) = m log 2; int_0^b (1-r)^{-1/2} = 2 (1 - sqrt(1-b)).
  const double b = 1.0 - std::exp2(-20);
  const QuadResult q = integrate_radial([](double r) { return 1.0 / (1.0 - r); }, 0.0, b);
  CHECK(q.converged);
  CHECK(q.value == doctest::Approx(20 * std::numbers::ln2).epsilon(1e-8));
  const QuadResult h = integrate_radial([](double r) { return 1.0 / std::sqrt(1.0 - r); }, 0.0, b);
  CHECK(h.value == doctest::Approx(2.0 * (1.0 - std::sqrt(1.0 - b))).epsilon(1e-8));
}

TEST_CASE("cumulative integral hits each knot") {
  const std::vector<double> knots{0.0, 0.5, 0.75, 0.9};
  const auto c = cumulative_integral([](double r) { return std::cos(r); }, knots);
  REQUIRE(c.size() == knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i) CHECK(c[i] == doctest::Approx(std::sin(knots[i])).epsilon(1e-12));
}

TEST_CASE("breakpoints and errors") {
  const auto bp = radial_breakpoints(0.0, 0.75, 1);
  REQUIRE(bp.size() == 3);
  CHECK(bp[1] == 0.5);
  CHECK_THROWS_AS(integrate_radial([](double) { return NAN; }, 0.0, 0.5), std::domain_error);
  QuadSpec bad;
  bad.tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
