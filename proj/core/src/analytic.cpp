#include "semiclassic/analytic.hpp"

#include <cmath>
#include <numbers>

#include "semiclassic/error.hpp"

namespace semiclassic {

namespace {

void require_positive_energy(double energy) {
  if (!(energy > 0.0)) throw Error(ErrorKind::Domain, "closed-form transmission needs E > 0");
}

// ln cosh(x) without overflow.
double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

double log_sinh(double x) {
  return x + std::log1p(-std::exp(-2.0 * x)) - std::numbers::ln2;
}

}  // namespace

double square_barrier_transmission(double v0, double width, double energy,
                                   const PhysicalContext& context) {
  context.validate();
  require_positive_energy(energy);
  const double m = context.mass;
  const double hbar = context.hbar;
  if (energy < v0) {
    const double kappa = std::sqrt(2.0 * m * (v0 - energy)) / hbar;
    const double s = std::sinh(kappa * width);
    return 1.0 / (1.0 + v0 * v0 * s * s / (4.0 * energy * (v0 - energy)));
  }
  if (energy > v0) {
    const double k = std::sqrt(2.0 * m * (energy - v0)) / hbar;
    const double s = std::sin(k * width);
    return 1.0 / (1.0 + v0 * v0 * s * s / (4.0 * energy * (energy - v0)));
  }
  return 1.0 / (1.0 + m * v0 * width * width / (2.0 * hbar * hbar));
}

double eckart_transmission(double v0, double width, double energy,
                           const PhysicalContext& context) {
  context.validate();
  require_positive_energy(energy);
  const double m = context.mass;
  const double hbar = context.hbar;
  const double k = std::sqrt(2.0 * m * energy) / hbar;
  const double b = std::numbers::pi * k * width;
  const double s = 8.0 * m * v0 * width * width / (hbar * hbar) - 1.0;
  if (s > 0.0) {
    // T = 1 / (1 + cosh^2(a) / sinh^2(b)), in logs so large a, b stay finite.
    const double a = 0.5 * std::numbers::pi * std::sqrt(s);
    const double ratio = std::exp(2.0 * (log_cosh(a) - log_sinh(b)));
    return 1.0 / (1.0 + ratio);
  }
  const double c = std::cos(0.5 * std::numbers::pi * std::sqrt(-s));
  const double ratio = std::exp(-2.0 * log_sinh(b)) * c * c;
  return 1.0 / (1.0 + ratio);
}

}  // namespace semiclassic
