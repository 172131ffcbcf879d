#pragma once

#include <vector>

#include "semiclassic/potential.hpp"
#include "semiclassic/wavefunction.hpp"
#include "semiclassic/wkb.hpp"

namespace semiclassic {

struct OracleConfig {
  int grid_points = 20001;
  /// Width of the edge strips that must be flat.
  double match_margin = 1.0;
  /// Flatness tolerance: |V(x) - V(edge)| <= v_eps * max(1, |E|) in the strips.
  double v_eps = 1e-10;

  /// Error{Config} unless grid_points is odd and >= 1001.
  void validate() const;
};

/// Numerov integration from the right edge, starting from a pure outgoing
/// lattice plane wave, then a two-wave split at the left edge. T and R use
/// the lattice flux, so T + R = 1 holds to rounding; a violation beyond 1e-8
/// raises Error{Numerical}.
/// Errors: Matching when an edge strip is not flat, ChannelClosed when E is
/// within 1e-6 of V at an edge.
TransmissionReport solve_scattering_exact(const ScatteringProblem& problem,
                                          const OracleConfig& config = {});

/// Lowest n_max + 1 levels with psi = 0 at both domain edges, by bisection
/// on the Sturm node count of the shooting solution. Error{Spectrum} when
/// the well does not hold that many states below the edge potential.
std::vector<double> solve_bound_states_exact(const ScatteringProblem& problem, int n_max,
                                             const OracleConfig& config = {});

/// The scattering solution on the grid, scaled to unit incident amplitude.
/// dpsi by fourth-order differences.
WavefunctionTable wavefunction_exact(const ScatteringProblem& problem,
                                     const OracleConfig& config = {});

}  // namespace semiclassic
