#pragma once

#include <functional>
#include <utility>

namespace semiclassic {

/// Ai, Bi and their first derivatives at a single real argument.
struct AiryPair {
  double ai = 0.0;
  double bi = 0.0;
  double ai_prime = 0.0;
  double bi_prime = 0.0;

  /// Ai Bi' - Ai' Bi, equal to 1/pi for the standard normalization.
  double wronskian() const { return ai * bi_prime - ai_prime * bi; }
};

/// Largest |z| accepted by the Maclaurin-series evaluator.
inline constexpr double kAirySeriesLimit = 30.0;
/// Smallest |z| accepted by the asymptotic evaluator.
inline constexpr double kAiryAsymptoticMin = 3.0;
/// Switchover used by airy_auto.
inline constexpr double kAirySwitchover = 8.0;

/// Maclaurin series in the auxiliary functions f(z), g(z). The sums run in
/// extended precision so that the cancellation in Ai for z > 0 and in both
/// functions for z < 0 does not eat the double result. |z| <= 30, otherwise
/// Error{Range}.
AiryPair airy(double z);

/// Asymptotic expansions: exponential forms for z > 0, oscillatory forms
/// with phase (2/3)|z|^{3/2} + pi/4 for z < 0. `terms` = 0 truncates at the
/// smallest term; a positive value keeps that many terms (1 = leading order).
/// |z| < 3 raises Error{Accuracy}.
AiryPair airy_asymptotic(double z, int terms = 0);

/// Ai and Bi from modified Bessel functions of order +-1/3 (and +-2/3 for
/// the derivatives). Positive z only.
AiryPair airy_bessel_form(double z);

/// Series for |z| <= 8, asymptotic expansion beyond.
AiryPair airy_auto(double z);

/// Ai(z) = (1/pi) int_0^inf cos(z t + t^3/3) dt by adaptive quadrature up to
/// the cutoff T (T^3/3 >= 40 pi) plus an integration-by-parts tail. Valid for
/// |z| <= 2.
double airy_laplace_contour(double z);

/// Modified Bessel function I_nu(x), x >= 0: ascending series for x <= 12,
/// large-argument expansion beyond.
double bessel_i(double nu, double x);

/// Residual of tau^2 phi'' + tau phi' + (tau^2 - 1/9) phi at
/// tau = (2/3)(-z)^{3/2}, phi = psi(z)/(-z)^{1/2}, derivatives by
/// sixth-order central differences. z < -0.5.
double bessel_transform_check(double z, const std::function<double(double)>& psi);
double bessel_transform_check(double z);

/// Sectors of the t-plane where exp(zt - t^3/3) decays at infinity.
enum class ContourSector { C1, C2, C3 };

/// (lower, upper) bound of the sector's argument range, in radians.
std::pair<double, double> sector_range(ContourSector sector);

/// True when exp(-t^3/3) decays along the ray arg t = angle.
bool integrand_decays(double angle);

}  // namespace semiclassic
