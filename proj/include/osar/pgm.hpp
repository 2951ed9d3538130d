#pragma once

#include <string>

#include "osar/grid.hpp"

namespace osar {

// P5, maxval 255: pixel = clamp(round(255 (dB - floor) / (0 - floor))), dB relative to the image peak.
// Rows of the grid become image rows.
std::string emit_pgm(const ComplexGrid& image, double db_floor = -40.0);

}  // namespace osar
