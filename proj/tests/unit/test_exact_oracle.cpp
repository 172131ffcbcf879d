#include <cmath>
#include <complex>

#include "doctest.h"
#include "support.hpp"
#include "semiclassic/analytic.hpp"
#include "semiclassic/connection.hpp"
#include "semiclassic/oracle.hpp"

using namespace semiclassic;
using support::kind_of;
using support::problem;
using support::rel;

namespace {

// Closed-form transmissions evaluated at 40 digits.
struct Row {
  double energy, transmission;
};

constexpr Row kEckart[] = {
    {0.05, 0.0013311238984204154565}, {0.1, 0.0035877543309364473714},
    {0.2, 0.012413383090309286727},   {0.5, 0.11578993102457105065},
    {0.9, 0.52921097334047154714},    {1.0, 0.6394839808868038315},
    {1.5, 0.92893175341956081072},    {2.0, 0.9859917238249932536},
};

constexpr Row kEckartShallow[] = {
    {0.05, 0.69973415865403386781},
    {0.5, 0.99565127709942068462},
};

constexpr Row kSquare[] = {
    {0.1, 0.0067425088700696505884}, {0.5, 0.070650824853164465686},
    {0.9, 0.25761455295113008298},   {1.5, 0.78394034230234772546},
    {3.0, 0.97669165980566703238},
};

}  // namespace

TEST_SUITE("exact_oracle") {
  TEST_CASE("closed forms match reference values") {
    for (const auto& r : kEckart) {
      CAPTURE(r.energy);
      CHECK(rel(eckart_transmission(1.0, 1.0, r.energy), r.transmission) < 1e-12);
    }
    for (const auto& r : kEckartShallow) {
      CAPTURE(r.energy);
      CHECK(rel(eckart_transmission(0.1, 1.0, r.energy), r.transmission) < 1e-12);
    }
    for (const auto& r : kSquare) {
      CAPTURE(r.energy);
      CHECK(rel(square_barrier_transmission(1.0, 2.0, r.energy), r.transmission) < 1e-12);
    }
    // At the top of the square barrier: T = 1 / (1 + m V0 L^2 / (2 hbar^2)).
    CHECK(square_barrier_transmission(1.0, 2.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  }

  TEST_CASE("Numerov matches the Eckart closed form") {
    for (const auto& r : kEckart) {
      CAPTURE(r.energy);
      const auto p = problem(EckartBarrier{1.0, 1.0, 0.0}, r.energy, -20.0, 20.0);
      CHECK(rel(solve_scattering_exact(p).transmission, r.transmission) < 1e-6);
    }
  }

  TEST_CASE("Numerov matches the square barrier closed form") {
    for (const auto& r : kSquare) {
      CAPTURE(r.energy);
      const auto p = problem(SquareBarrier{1.0, 2.0, 0.0}, r.energy, -5.0, 5.0);
      CHECK(rel(solve_scattering_exact(p).transmission, r.transmission) < 1e-6);
    }
  }

  TEST_CASE("unitarity and method tag") {
    const auto p = problem(GaussianBump{1.0, 1.0, 0.0}, 0.7, -10.0, 10.0);
    const auto r = solve_scattering_exact(p);
    CHECK(std::abs(r.transmission + r.reflection - 1.0) < 1e-10);
    CHECK(r.method == TransmissionMethod::ExactNumerov);
  }

  TEST_CASE("grid refinement") {
    const auto p = problem(EckartBarrier{1.0, 1.0, 0.0}, 0.3, -20.0, 20.0);
    OracleConfig fine;
    fine.grid_points = 40001;
    const double coarse = solve_scattering_exact(p).transmission;
    CHECK(rel(solve_scattering_exact(p, fine).transmission, coarse) < 1e-7);
  }

  TEST_CASE("free propagation") {
    const auto flat = problem(GaussianBump{0.0, 1.0, 0.0}, 0.8, -5.0, 5.0);
    const auto r = solve_scattering_exact(flat);
    CHECK(r.transmission == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.reflection < 1e-20);
  }

  TEST_CASE("units enter through 2m/hbar^2") {
    // Doubling m and hbar^2 together leaves the equation unchanged.
    auto p = problem(EckartBarrier{1.0, 1.0, 0.0}, 0.4, -20.0, 20.0);
    const double base = solve_scattering_exact(p).transmission;
    p.context = PhysicalContext{2.0, std::sqrt(2.0)};
    CHECK(rel(solve_scattering_exact(p).transmission, base) < 1e-10);
    p.context = PhysicalContext{1.0, 0.5};
    CHECK(rel(solve_scattering_exact(p).transmission,
              eckart_transmission(1.0, 1.0, 0.4, p.context)) < 1e-6);
  }

  TEST_CASE("harmonic levels") {
    const auto p = problem(HarmonicWell{1.0}, 0.0, -10.0, 10.0);
    const auto levels = solve_bound_states_exact(p, 8);
    REQUIRE(levels.size() == 9);
    for (int n = 0; n <= 8; ++n) {
      CAPTURE(n);
      CHECK(std::abs(levels[n] - (n + 0.5)) < 1e-8);
    }
    auto stiff = problem(HarmonicWell{4.0}, 0.0, -10.0, 10.0);
    stiff.context.hbar = 0.5;
    // E_n = hbar omega (n + 1/2), omega = sqrt(k / m).
    CHECK(std::abs(solve_bound_states_exact(stiff, 2)[2] - 2.5) < 1e-8);
  }

  TEST_CASE("wavefunction carries constant current") {
    const auto p = problem(EckartBarrier{1.0, 1.0, 0.0}, 0.5, -20.0, 20.0);
    const double t = solve_scattering_exact(p).transmission;
    const auto w = wavefunction_exact(p);
    REQUIRE(w.size() == 20001u);
    const double k = 1.0;
    for (std::size_t i = 0; i < w.size(); i += 500) {
      CAPTURE(w.xs[i]);
      CHECK(rel(probability_current(w.psi[i], w.dpsi[i], p.context), t * k) < 1e-6);
    }
    CHECK(w.region_tags.front() == RegionTag::AllowedLeft);
    CHECK(w.region_tags[10000] == RegionTag::Forbidden);
    CHECK(w.region_tags.back() == RegionTag::AllowedRight);
    CHECK(std::norm(w.psi.back()) == doctest::Approx(t).epsilon(1e-9));
  }

  TEST_CASE("edge and configuration errors") {
    const auto narrow = problem(GaussianBump{1.0, 1.0, 0.0}, 0.5, -2.0, 2.0);
    CHECK(kind_of([&] { solve_scattering_exact(narrow); }) == ErrorKind::Matching);
    const auto closed = problem(EckartBarrier{1.0, 1.0, 0.0}, 1e-9, -20.0, 20.0);
    CHECK(kind_of([&] { solve_scattering_exact(closed); }) == ErrorKind::ChannelClosed);
    const auto well = problem(HarmonicWell{1.0}, 0.0, -3.0, 3.0);
    CHECK(kind_of([&] { solve_bound_states_exact(well, 10); }) == ErrorKind::Spectrum);
    CHECK(kind_of([&] { solve_bound_states_exact(well, -1); }) == ErrorKind::Domain);
    OracleConfig bad;
    bad.grid_points = 2000;
    CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::Config);
    bad.grid_points = 999;
    CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::Config);
    OracleConfig neg;
    neg.v_eps = 0.0;
    CHECK(kind_of([&] { neg.validate(); }) == ErrorKind::Config);
  }
}
