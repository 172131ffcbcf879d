#pragma once

#include <complex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "semiclassic/potential.hpp"

namespace semiclassic {

/// Positions, phases w(x0, x) and momenta p(x) on a uniform grid.
struct PhaseGrid {
  std::vector<double> xs;
  std::vector<double> ws;
  std::vector<double> ps;
  double x0 = 0.0;

  std::size_t size() const { return xs.size(); }
};

/// Samples (w, Vtilde(w)) of the phase-variable perturbation.
struct EffectivePerturbation {
  std::vector<std::pair<double, double>> samples;
};

/// The three algebraic forms of Vtilde at one point.
struct EffectivePerturbationForms {
  double direct = 0.0;   // (3 p'^2 - 2 p p'') / (4 p^4)
  double riccati = 0.0;  // (sigma1'' + sigma1'^2) / sigma0'^2
  double sigma2 = 0.0;   // -(2/p) sigma2'
};

struct PicardOptions {
  int grid_points = 4096;
  double tolerance = 1e-10;
};

/// Forward/backward amplitudes C+(x), C-(x) on the phase grid.
struct PicardResult {
  PhaseGrid grid;
  std::vector<std::complex<double>> c_plus;
  std::vector<std::complex<double>> c_minus;
  int iterations = 0;
  double last_change = 0.0;

  /// C- at the left edge: the reflection amplitude.
  std::complex<double> reflection() const { return c_minus.front(); }
};

/// Error{Regime} unless E > V on the whole domain.
void require_over_barrier(const ScatteringProblem& problem);

/// r(x) = p'/(2p). Error{Domain} in a forbidden region or an exclusion zone.
double differential_reflection(const ScatteringProblem& problem, double x);

/// Uniform grid over the domain with w accumulated from x0 (default: the
/// left edge) by 20-point Gauss-Legendre per cell. Over-barrier only.
PhaseGrid phase_transform(const ScatteringProblem& problem, int points = 4096,
                          std::optional<double> x0 = std::nullopt);

/// Picard iteration of
///   C+(x) = 1 + int_{-inf}^x r C- e^{-2iw/hbar},
///   C-(x) = -int_x^{+inf} r C+ e^{+2iw/hbar}
/// from C+ = 1, C- = 0 by trapezoid sums. One iteration updates C- and then
/// C+. Stops after `iterations` or when the largest change drops below
/// options.tolerance.
PicardResult picard_amplitudes(const ScatteringProblem& problem, int iterations,
                               const PicardOptions& options = {});

/// R = -int r(x) e^{2 i w(x0, x)/hbar} dx by adaptive quadrature, with the
/// phase tracked from a precomputed anchor grid. x0 defaults to the left edge.
std::complex<double> once_reflected_coefficient(const ScatteringProblem& problem,
                                                std::optional<double> x0 = std::nullopt);

/// Vtilde(x) = (3 p'^2 - 2 p p'') / (4 p^4). Error{Domain} where p = 0.
double effective_perturbation(const ScatteringProblem& problem, double x);
EffectivePerturbationForms effective_perturbation_forms(const ScatteringProblem& problem,
                                                        double x);

/// (w(x0, x), Vtilde(x)) at each x; every x must share x0's allowed region.
EffectivePerturbation sample_effective_perturbation(const ScatteringProblem& problem,
                                                    std::span<const double> xs, double x0);

/// <k|Vtilde|k'> = int e^{i (k' - k) xi / hbar} Vtilde(w(xi)) dxi over the
/// phase variable xi, truncated where |Vtilde| < 1e-12 max|Vtilde|.
/// Error{Truncation} when Vtilde has not decayed at the domain edges.
std::complex<double> matrix_element(const ScatteringProblem& problem, double k, double k_prime);

/// First-order reflection amplitude (i hbar / (2|k_i|)) <k_f|Vtilde|k_i>.
/// On-shell momenta in the phase variable are +-1.
std::complex<double> born_first_order(const ScatteringProblem& problem, double k_i = 1.0,
                                      double k_f = -1.0);

/// (hbar^2 / 2 pi) / (1 - (hbar k)^2). Error{Domain} within 1e-6 of a pole.
double free_propagator(const PhysicalContext& context, double k);

}  // namespace semiclassic
