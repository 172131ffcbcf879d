#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "semiclassic/error.hpp"
#include "semiclassic/quadrature.hpp"

using namespace semiclassic;

TEST_SUITE("quadrature") {
  TEST_CASE("polynomials are exact") {
    auto f = [](double x) { return 3.0 * x * x - 2.0 * x + 1.0; };
    const auto r = quad::integrate(f, -1.0, 2.0);
    CHECK(r.value == doctest::Approx(9.0 - 3.0 + 3.0).epsilon(1e-15));
    CHECK(r.intervals == 1);
  }

  TEST_CASE("reversed limits flip the sign") {
    auto f = [](double x) { return std::exp(x); };
    const double fwd = quad::integrate(f, 0.0, 1.0).value;
    const double rev = quad::integrate(f, 1.0, 0.0).value;
    CHECK(fwd == doctest::Approx(std::numbers::e - 1.0).epsilon(1e-14));
    CHECK(rev == -fwd);
    CHECK(quad::integrate(f, 2.0, 2.0).value == 0.0);
  }

  TEST_CASE("oscillatory integrand") {
    auto f = [](double x) { return std::cos(50.0 * x); };
    CHECK(quad::integrate(f, 0.0, 3.0).value ==
          doctest::Approx(std::sin(150.0) / 50.0).epsilon(1e-12));
  }

  TEST_CASE("complex integrand") {
    auto f = [](double x) { return std::exp(std::complex<double>(0.0, x)); };
    const auto v = quad::integrate(f, 0.0, std::numbers::pi).value;
    CHECK(v.real() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(v.imag() == doctest::Approx(2.0).epsilon(1e-14));
  }

  TEST_CASE("square-root endpoints") {
    // int_0^1 sqrt(x (1 - x)) dx = pi / 8
    auto f = [](double x) { return std::sqrt(std::max(0.0, x * (1.0 - x))); };
    const auto r = quad::integrate_sqrt_ends(f, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(std::numbers::pi / 8.0).epsilon(1e-13));
  }

  TEST_CASE("budget exhaustion raises a numerical error") {
    auto f = [](double x) { return std::sin(1.0 / (x + 1e-9)); };
    quad::Options opt;
    opt.max_intervals = 8;
    try {
      (void)quad::integrate(f, 0.0, 1.0, opt);
      FAIL("expected an Error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Numerical);
    }
  }

  TEST_CASE("Gauss-Legendre rules") {
    for (int n : {1, 2, 5, 20, 64}) {
      const auto& rule = quad::gauss_legendre(n);
      double sum = 0.0;
      for (double w : rule.weights) sum += w;
      CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
    }
    // Exact through degree 2n - 1.
    auto f = [](double x) { return std::pow(x, 39) + std::pow(x, 38); };
    CHECK(quad::fixed_gauss_legendre(f, -1.0, 1.0, 20) == doctest::Approx(2.0 / 39.0).epsilon(1e-13));
    CHECK_THROWS_AS(quad::gauss_legendre(0), Error);
    CHECK_THROWS_AS(quad::gauss_legendre(65), Error);
  }
}
