#pragma once

#include <complex>
#include <span>

#include "semiclassic/potential.hpp"
#include "semiclassic/wavefunction.hpp"
#include "semiclassic/wkb.hpp"

namespace semiclassic {

/// Allowed-side solution on the basis k^{-1/2} cos(theta - pi/4),
/// k^{-1/2} sin(theta - pi/4), with theta the phase integral measured from
/// the turning point into the allowed region.
struct AllowedAmplitudes {
  std::complex<double> cos_coeff;
  std::complex<double> sin_coeff;
};

/// Forbidden-side solution on the basis beta^{-1/2} exp(-s),
/// beta^{-1/2} exp(+s), with s = int beta measured from the turning point.
struct ForbiddenAmplitudes {
  std::complex<double> decaying;
  std::complex<double> growing;
};

/// Turning point with V' > 0 (allowed region to its left):
///   2 cos  <->  decaying,   sin  <->  -growing.
/// Error{Orientation} when slope <= 0.
ForbiddenAmplitudes connect_increasing(const AllowedAmplitudes& allowed, double slope);
AllowedAmplitudes connect_increasing_inverse(const ForbiddenAmplitudes& forbidden, double slope);

/// Turning point with V' < 0 (allowed region to its right):
///   decaying  ->  2 cos,   -growing  ->  sin.
/// Error{Orientation} when slope >= 0.
AllowedAmplitudes connect_decreasing(const ForbiddenAmplitudes& forbidden, double slope);
ForbiddenAmplitudes connect_decreasing_inverse(const AllowedAmplitudes& allowed, double slope);

/// Left-region solution split into k^{-1/2} e^{-i theta} (incident, moving
/// right) and k^{-1/2} e^{+i theta} (reflected), theta = int_x^a k.
struct TravelingWaves {
  std::complex<double> incident;
  std::complex<double> reflected;
};

TravelingWaves decompose_left(const AllowedAmplitudes& left);

/// Amplitudes of the three-region barrier solution built backwards from an
/// outgoing wave 2B k^{-1/2} exp(i int_b^x k - i pi/4) on the right.
struct PatchedAmplitudes {
  double sigma_star = 0.0;
  std::complex<double> outgoing;
  AllowedAmplitudes right;      // phase measured from b
  ForbiddenAmplitudes barrier;  // s measured from a
  AllowedAmplitudes left;       // phase measured from a
  TravelingWaves left_waves;
};

PatchedAmplitudes patch_barrier(double sigma_star, std::complex<double> outgoing);

/// Fluxes of the patched solution in the asymptotic regions.
struct BarrierCurrents {
  double incident = 0.0;
  double reflected = 0.0;
  double transmitted = 0.0;
  double net_left = 0.0;  // incident - reflected
};

/// Currents from the traveling-wave split of the patched amplitudes.
BarrierCurrents barrier_currents(const PatchedAmplitudes& patched, const PhysicalContext& context);

/// The same currents from their closed forms in sigma*:
/// j_III = 4|B|^2 hbar/m, incident 4|B|^2 (e^s + e^{-s}/4)^2 hbar/m,
/// reflected 4|B|^2 (e^s - e^{-s}/4)^2 hbar/m.
BarrierCurrents closed_form_currents(double sigma_star, std::complex<double> outgoing,
                                     const PhysicalContext& context);

/// j = Re[(hbar / (i m)) psi* dpsi/dx]
double probability_current(std::complex<double> psi, std::complex<double> dpsi,
                           const PhysicalContext& context);

/// T = j_transmitted / j_incident of the patched solution, method ConnectionPatched.
TransmissionReport transmission_from_currents(const ScatteringProblem& problem);

/// Sample the patched solution on xs. Points inside an exclusion zone raise
/// Error{Proximity}.
WavefunctionTable patched_barrier_solution(const ScatteringProblem& problem,
                                           std::complex<double> outgoing,
                                           std::span<const double> xs);

/// Uniform grid over the domain with exclusion zones left out.
WavefunctionTable patched_barrier_solution(const ScatteringProblem& problem,
                                           std::complex<double> outgoing, int samples = 801);

enum class AiryKind { Ai, Bi };

/// (2 m V'(x_c) / hbar^2)^{1/3}, the scale taking x - x_c to the Airy variable z.
double airy_scale(const ScatteringProblem& problem, double turning_point);

/// psi(x) = Ai(z) (or Bi(z)) with z = airy_scale * (x - x_c), valid where
/// the potential is linear to within 10% of |E - V|. Error{Linearization}
/// outside that neighbourhood.
WavefunctionTable airy_local_solution(const ScatteringProblem& problem, double turning_point,
                                      std::span<const double> xs, AiryKind kind = AiryKind::Ai);

}  // namespace semiclassic
