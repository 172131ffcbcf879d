#pragma once

#include <complex>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace semiclassic {

/// WKB multipliers of the forward (C+) and backward (C-) waves.
struct AmplitudePair {
  std::complex<double> c_plus{1.0, 0.0};
  std::complex<double> c_minus{0.0, 0.0};
};

enum class RegionTag {
  AllowedLeft,   // classically allowed, left of the barrier
  Forbidden,     // E < V(x)
  AllowedRight,  // classically allowed, right of the barrier
  Allowed,       // allowed with no barrier to its left or right (e.g. inside a well)
};

std::string_view region_name(RegionTag tag);

/// Sampled complex wavefunction. `dpsi` is carried along for current
/// evaluation but is not part of the CSV form.
struct WavefunctionTable {
  std::vector<double> xs;
  std::vector<std::complex<double>> psi;
  std::vector<std::complex<double>> dpsi;
  std::vector<RegionTag> region_tags;

  std::size_t size() const { return xs.size(); }
  /// Throws Error{Numerical} when lengths disagree or xs is not strictly increasing.
  void validate() const;
};

/// CSV with header `x,re_psi,im_psi,region`, 17 significant digits.
void write_csv(std::ostream& out, const WavefunctionTable& table);

}  // namespace semiclassic
