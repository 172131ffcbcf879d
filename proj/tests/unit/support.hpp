#pragma once

#include <cmath>
#include <utility>

#include "doctest.h"
#include "semiclassic/error.hpp"
#include "semiclassic/potential.hpp"

namespace support {

inline semiclassic::ScatteringProblem problem(semiclassic::PotentialModel model, double energy,
                                              double lo, double hi) {
  return semiclassic::ScatteringProblem{semiclassic::PhysicalContext{}, std::move(model), energy,
                                        semiclassic::Interval{lo, hi}};
}

/// Kind of the semiclassic::Error thrown by f; fails the test if none is thrown.
template <class F>
semiclassic::ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const semiclassic::Error& e) {
    return e.kind();
  }
  FAIL("expected a semiclassic::Error");
  return semiclassic::ErrorKind::Numerical;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace support
