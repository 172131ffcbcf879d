#pragma once

#include "semiclassic/potential.hpp"

namespace semiclassic {

/// Closed-form transmission through a rectangular barrier of height v0 and
/// width L at energy E > 0 (below, at and above the top).
double square_barrier_transmission(double v0, double width, double energy,
                                   const PhysicalContext& context = {});

/// Closed-form transmission through V0 sech^2(x/d) at energy E > 0.
double eckart_transmission(double v0, double width, double energy,
                           const PhysicalContext& context = {});

}  // namespace semiclassic
