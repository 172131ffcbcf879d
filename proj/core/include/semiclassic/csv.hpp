#pragma once

#include <string>

namespace semiclassic {

/// Fixed 17-significant-digit rendering ("%.17g", '.' decimal point), so
/// repeated runs produce byte-identical files.
std::string format_number(double value);

}  // namespace semiclassic
