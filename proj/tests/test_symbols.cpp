#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "volterra/symbols.hpp"

using namespace volterra;

TEST_CASE("catalog coefficients") {
  const SymbolSpec g = make_symbol("neglog1mz", 64);
  CHECK(g.coeffs()[0] == cplx(0.0));
  CHECK(g.coeffs().degree() == 63);
  for (int k = 1; k < 64; ++k) CHECK(g.coeffs()[k].real() == doctest::Approx(1.0 / k));
  CHECK(g.univalent());
  const SymbolSpec e = make_symbol("expz", 20);
  double f = 1.0;
  for (int k = 0; k <= 20; ++k) {
    CHECK(e.coeffs()[k].real() == doctest::Approx(1.0 / f).epsilon(1e-14));
    f *= k + 1;
  }
  CHECK(make_symbol("zero").is_zero());
  CHECK_FALSE(make_symbol("identity").is_zero());
}

TEST_CASE("closed forms agree with coefficients inside the disk") {
  for (const char* s : {"neglog1mz", "identity", "cayleypow:0.5", "cayleypow:2", "expz", "poly:[1, -2, 0.5]"}) {
    const SymbolSpec g = make_symbol(s);
    for (cplx z : {cplx(0.3, 0.2), cplx(-0.5, 0.1), cplx(0.0, -0.6)}) {
      CHECK(std::abs(g.value(z) - evaluate(g.coeffs(), z)) < 1e-10);
      CHECK(std::abs(g.derivative(z) - evaluate(differentiate(g.coeffs()), z)) < 1e-9);
      CHECK(std::abs(g.second_derivative(z) - evaluate(differentiate(differentiate(g.coeffs())), z)) < 1e-8);
    }
  }
}

TEST_CASE("cayley power closed form") {
  // ((1+z)/(1-z))^gamma at a real point.
  const SymbolSpec g = make_symbol("cayleypow:0.5");
  CHECK(g.value(0.5).real() == doctest::Approx(std::sqrt(3.0)));
  CHECK(g.univalent());
  CHECK_FALSE(make_symbol("cayleypow:2").univalent());
}

TEST_CASE("symbol grammar errors") {
  CHECK_THROWS_AS(make_symbol("nonsense"), std::invalid_argument);
  CHECK_THROWS_AS(make_symbol("cayleypow:-1"), std::invalid_argument);
  CHECK_THROWS_AS(make_symbol("poly:[1,,2]"), std::invalid_argument);
  CHECK(make_symbol("poly:[0, 0]").is_zero());
}
