#include "semiclassic/wavefunction.hpp"

#include <cstdio>
#include <ostream>

#include "semiclassic/csv.hpp"
#include "semiclassic/error.hpp"

namespace semiclassic {

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string_view region_name(RegionTag tag) {
  switch (tag) {
    case RegionTag::AllowedLeft: return "allowed_left";
    case RegionTag::Forbidden: return "forbidden";
    case RegionTag::AllowedRight: return "allowed_right";
    case RegionTag::Allowed: return "allowed";
  }
  return "unknown";
}

void WavefunctionTable::validate() const {
  if (psi.size() != xs.size() || region_tags.size() != xs.size() ||
      (!dpsi.empty() && dpsi.size() != xs.size())) {
    throw Error(ErrorKind::Numerical, "wavefunction table columns differ in length");
  }
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) {
      throw Error(ErrorKind::Numerical, "wavefunction table positions not strictly increasing");
    }
  }
}

void write_csv(std::ostream& out, const WavefunctionTable& table) {
  table.validate();
  out << "x,re_psi,im_psi,region\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << format_number(table.xs[i]) << ',' << format_number(table.psi[i].real()) << ','
        << format_number(table.psi[i].imag()) << ',' << region_name(table.region_tags[i])
        << '\n';
  }
}

}  // namespace semiclassic
