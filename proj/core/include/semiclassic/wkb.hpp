#pragma once

#include <span>
#include <string_view>

#include "semiclassic/potential.hpp"
#include "semiclassic/wavefunction.hpp"

namespace semiclassic {

enum class TransmissionMethod {
  WkbLeading,
  WkbCorrected,
  ConnectionPatched,
  BornFirstOrder,
  ExactNumerov,
};

std::string_view method_name(TransmissionMethod method);

struct TransmissionReport {
  double transmission = 0.0;
  double reflection = 0.0;
  double sigma_star = 0.0;
  TransmissionMethod method = TransmissionMethod::WkbCorrected;
};

struct WkbTerms {
  double sigma0 = 0.0;        // action w(x0, x)
  double sigma1 = 0.0;        // -ln sqrt(p(x))
  double sigma2_prime = 0.0;  // -p(x) Vtilde(x) / 2
  double evaluation_point = 0.0;
};

/// p, p' and p'' at a point of a classically allowed region.
struct MomentumJet {
  double p = 0.0;
  double dp = 0.0;
  double d2p = 0.0;
};

/// Throws Error{Regime} when E <= V(x).
MomentumJet momentum_jet(const ScatteringProblem& problem, double x);

/// Which side of the barrier (or well) x lies on.
RegionTag classify_region(const ScatteringProblem& problem, const TurningPoints& tp, double x);

/// Error{Proximity} when x lies within the Airy length of a turning point.
void require_outside_exclusion(const ScatteringProblem& problem, const TurningPoints& tp,
                               double x);

/// w(x0, x) = int_{x0}^{x} p dx' over a single allowed region; sqrt
/// endpoint behaviour at turning points is removed by x = end +- s^2.
/// Error{Region} when a forbidden stretch lies inside the interval.
double action_integral(const ScatteringProblem& problem, double x0, double x);

/// int_{x0}^{x} beta dx' over a single forbidden region (beta = |p|/hbar).
double forbidden_integral(const ScatteringProblem& problem, double x0, double x);

/// sigma* = int_a^b beta dx across the barrier.
double barrier_integral(const ScatteringProblem& problem, const TurningPoints& tp);
double barrier_integral(const ScatteringProblem& problem);

WkbTerms wkb_terms(const ScatteringProblem& problem, double x0, double x);

/// First-order WKB wavefunction from the region containing x0: the
/// oscillatory p^{-1/2} form where allowed, the beta^{-1/2} exponential form
/// where forbidden. Every x must share x0's region and avoid exclusion zones.
WavefunctionTable wkb_wavefunction(const ScatteringProblem& problem,
                                   const AmplitudePair& amplitudes, double x0,
                                   std::span<const double> xs);

double leading_transmission(double sigma_star);
/// e^{-2 sigma} / (1 + e^{-2 sigma}/4)^2
double corrected_transmission(double sigma_star);

/// Barrier transmission from sigma*. `method` must be WkbLeading or WkbCorrected.
TransmissionReport transmission_leading(const ScatteringProblem& problem,
                                        TransmissionMethod method = TransmissionMethod::WkbCorrected);

/// int_a^b p dx - (n + 1/2) pi hbar at the problem's energy.
double quantization_residual(const ScatteringProblem& problem, int n);

/// Energy of level n from the lowest-order quantization condition, by
/// bisection on `bracket` to 1e-12 relative.
double quantize(const ScatteringProblem& problem, int n, Interval bracket);

}  // namespace semiclassic
