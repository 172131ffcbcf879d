#include "semiclassic/error.hpp"

namespace semiclassic {

std::string_view kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Config: return "config";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Range: return "range";
    case ErrorKind::Accuracy: return "accuracy";
    case ErrorKind::Regime: return "regime";
    case ErrorKind::Region: return "region";
    case ErrorKind::Proximity: return "proximity";
    case ErrorKind::Linearization: return "linearization";
    case ErrorKind::Orientation: return "orientation";
    case ErrorKind::MultiWell: return "multi-well";
    case ErrorKind::NoBarrier: return "no-barrier";
    case ErrorKind::Bracket: return "bracket";
    case ErrorKind::Matching: return "matching";
    case ErrorKind::ChannelClosed: return "channel-closed";
    case ErrorKind::Spectrum: return "spectrum";
    case ErrorKind::Truncation: return "truncation";
    case ErrorKind::Numerical: return "numerical";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::Domain:
    case ErrorKind::Range:
    case ErrorKind::Accuracy:
      return 2;
    case ErrorKind::Regime:
    case ErrorKind::Region:
    case ErrorKind::Proximity:
    case ErrorKind::Linearization:
    case ErrorKind::Orientation:
    case ErrorKind::MultiWell:
    case ErrorKind::NoBarrier:
    case ErrorKind::ChannelClosed:
      return 3;
    case ErrorKind::Bracket:
    case ErrorKind::Matching:
    case ErrorKind::Spectrum:
    case ErrorKind::Truncation:
    case ErrorKind::Numerical:
      return 4;
  }
  return 4;
}

}  // namespace semiclassic
