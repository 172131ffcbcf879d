#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace semiclassic {

/// Failure categories. Every thrown semiclassic::Error carries one; the CLI
/// maps them onto process exit codes.
enum class ErrorKind {
  Config,         // malformed input file or flag
  Domain,         // argument outside the operation's domain
  Range,          // result would leave the representable / validated range
  Accuracy,       // approximation requested where it is not accurate
  Regime,         // method applied outside its physical regime
  Region,         // integration interval crosses a turning point
  Proximity,      // evaluation inside a turning-point exclusion zone
  Linearization,  // point outside the linear-potential neighbourhood
  Orientation,    // connection formula applied with the wrong slope sign
  MultiWell,      // more than two turning points
  NoBarrier,      // energy above the barrier top
  Bracket,        // root bracket without a sign change
  Matching,       // potential not flat at the domain edges
  ChannelClosed,  // asymptotic channel closed at an edge
  Spectrum,       // bound-state search failed (non-confining well)
  Truncation,     // integrand does not decay inside the domain
  Numerical,      // convergence or other numerical failure
};

std::string_view kind_name(ErrorKind kind) noexcept;

/// Process exit code for the CLI: 2 config, 3 regime, 4 numerical failure.
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace semiclassic
