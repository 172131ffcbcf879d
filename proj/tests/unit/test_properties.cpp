#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>

#include "doctest.h"
#include "generators.hpp"
#include "support.hpp"
#include "semiclassic/connection.hpp"
#include "semiclassic/csv.hpp"
#include "semiclassic/oracle.hpp"
#include "semiclassic/reflection.hpp"
#include "semiclassic/special_fn.hpp"
#include "semiclassic/wkb.hpp"

using namespace semiclassic;
using support::problem;
using support::rel;

namespace {

using cd = std::complex<double>;

// Barrier with its top inside a domain wide enough for every parameter draw.
ScatteringProblem barrier_problem(const gen::EvenBarrier& b, double energy) {
  return problem(b.model, energy, b.center - 40.0, b.center + 40.0);
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("Airy Wronskian at random arguments") {
    gen::Source s;
    for (int i = 0; i < 200; ++i) {
      const double z = s.uniform(-30.0, 30.0);
      CAPTURE(z);
      CHECK(airy(z).wronskian() == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-12));
    }
  }

  TEST_CASE("connection rules invert each other") {
    gen::Source s;
    for (int i = 0; i < 100; ++i) {
      const AllowedAmplitudes a{s.complex(3.0), s.complex(3.0)};
      const double up = s.uniform(0.01, 5.0);
      const auto inc = connect_increasing_inverse(connect_increasing(a, up), up);
      CHECK(std::abs(inc.cos_coeff - a.cos_coeff) < 1e-14);
      CHECK(std::abs(inc.sin_coeff - a.sin_coeff) < 1e-14);
      const auto dec = connect_decreasing(connect_decreasing_inverse(a, -up), -up);
      CHECK(std::abs(dec.cos_coeff - a.cos_coeff) < 1e-14);
      CHECK(std::abs(dec.sin_coeff - a.sin_coeff) < 1e-14);
    }
  }

  TEST_CASE("traveling-wave split is exact") {
    gen::Source s;
    const cd I(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
      const AllowedAmplitudes a{s.complex(), s.complex()};
      const auto w = decompose_left(a);
      const double theta = s.uniform(-20.0, 20.0);
      const double u = theta - std::numbers::pi / 4.0;
      const cd standing = a.cos_coeff * std::cos(u) + a.sin_coeff * std::sin(u);
      const cd moving = w.incident * std::exp(-I * theta) + w.reflected * std::exp(I * theta);
      CHECK(std::abs(standing - moving) < 1e-14);
    }
  }

  TEST_CASE("patched transmission is the corrected formula for any outgoing amplitude") {
    gen::Source s;
    for (int i = 0; i < 100; ++i) {
      const double sigma = s.uniform(0.0, 8.0);
      const cd B = s.complex(10.0);
      const PhysicalContext ctx{s.uniform(0.1, 5.0), s.uniform(0.1, 5.0)};
      const auto j = barrier_currents(patch_barrier(sigma, B), ctx);
      CHECK(rel(j.transmitted / j.incident, corrected_transmission(sigma)) < 1e-13);
      CHECK(corrected_transmission(sigma) <= leading_transmission(sigma));
      CHECK(j.reflected / j.incident + j.transmitted / j.incident ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("turning points lie on the energy level") {
    gen::Source s;
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
      const auto model = gen::smooth_model(s);
      const double x = s.uniform(-3.0, 3.0);
      const double energy = model.value(x);
      const auto p = problem(model, energy, -8.0, 8.0);
      TurningPoints tp;
      try {
        tp = find_turning_points(p);
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MultiWell);
        continue;
      }
      for (int k = 0; k < tp.count; ++k) {
        const double root = k == 0 ? tp.a : tp.b;
        const double slope = std::abs(model.derivative(root));
        CHECK(std::abs(model.value(root) - energy) <= 1e-12 * std::max(1.0, slope));
      }
      CHECK(tp.count >= 1);
      ++checked;
    }
    CHECK(checked > 150);
  }

  TEST_CASE("even barriers have mirrored turning points") {
    gen::Source s;
    for (int i = 0; i < 60; ++i) {
      const auto b = gen::even_barrier(s);
      const double energy = s.uniform(0.1, 0.9) * b.height;
      const auto p = barrier_problem(b, energy);
      const auto tp = find_turning_points(p);
      REQUIRE(tp.count == 2);
      CHECK(tp.a + tp.b == doctest::Approx(2.0 * b.center).scale(1.0).epsilon(1e-10));
      // Half-barrier integral doubled.
      const double half = forbidden_integral(p, tp.a, b.center);
      CHECK(rel(barrier_integral(p), 2.0 * half) < 1e-10);
    }
  }

  TEST_CASE("action is additive over an allowed region") {
    gen::Source s;
    for (int i = 0; i < 60; ++i) {
      const auto b = gen::even_barrier(s);
      const double energy = b.height * s.uniform(1.1, 2.0);
      const auto p = barrier_problem(b, energy);
      const double x0 = s.uniform(-20.0, 20.0) + b.center;
      const double x1 = s.uniform(-20.0, 20.0) + b.center;
      const double x2 = s.uniform(-20.0, 20.0) + b.center;
      const double lhs = action_integral(p, x0, x1) + action_integral(p, x1, x2);
      CHECK(lhs == doctest::Approx(action_integral(p, x0, x2)).scale(1.0).epsilon(1e-11));
    }
  }

  TEST_CASE("oracle is unitary and translation invariant") {
    gen::Source s;
    for (int i = 0; i < 12; ++i) {
      const auto b = gen::even_barrier(s);
      // The parabola has no flat asymptotic channels.
      if (b.model.name() == "parabolic") continue;
      const double energy = b.height * s.uniform(0.2, 1.8);
      const auto p = barrier_problem(b, energy);
      const auto r = solve_scattering_exact(p);
      CHECK(std::abs(r.transmission + r.reflection - 1.0) < 1e-10);
      auto moved = p;
      const double shift = s.uniform(-3.0, 3.0);
      moved.domain = Interval{p.domain.lo + shift, p.domain.hi + shift};
      CHECK(rel(solve_scattering_exact(moved).transmission, r.transmission) < 1e-6);
    }
  }

  TEST_CASE("reference point leaves |R| unchanged") {
    gen::Source s;
    for (int i = 0; i < 8; ++i) {
      const double amplitude = s.uniform(0.005, 0.2);
      const auto p = problem(GaussianBump{amplitude, s.uniform(0.5, 1.5), 0.0}, 2.0, -12.0, 12.0);
      const double base = std::abs(once_reflected_coefficient(p));
      const double x0 = s.uniform(-12.0, 12.0);
      CHECK(rel(std::abs(once_reflected_coefficient(p, x0)), base) < 1e-10);
    }
  }

  TEST_CASE("matrix element Hermiticity at random momenta") {
    gen::Source s;
    const auto p = problem(GaussianBump{0.4, 1.0, 0.0}, 2.0, -12.0, 12.0);
    for (int i = 0; i < 10; ++i) {
      const double k = s.uniform(-2.0, 2.0);
      const double kp = s.uniform(-2.0, 2.0);
      const cd a = matrix_element(p, k, kp);
      const cd b = matrix_element(p, kp, k);
      CHECK(std::abs(a - std::conj(b)) < 1e-12 * std::max(1.0, std::abs(a)));
    }
  }

  TEST_CASE("number formatting round-trips") {
    gen::Source s;
    for (int i = 0; i < 1000; ++i) {
      const double x = s.uniform(-1.0, 1.0) * std::pow(10.0, s.integer(-300, 300));
      CHECK(std::strtod(format_number(x).c_str(), nullptr) == x);
    }
  }
}
