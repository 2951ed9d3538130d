#pragma once

#include <vector>

#include "osar/radar_config.hpp"
#include "osar/scene.hpp"

namespace osar::presets {

// Reference system, full rate (D = 1), N = 3276.
RadarConfig table1();

// Reference system with every tenth symbol kept.
RadarConfig table1_decimated();

// N = 512, D = 47, M_img = 1024 (T_a = 2.0053 s).
RadarConfig table1_lite();

std::vector<PointTarget> reference_targets();  // targets 1-3
PointTarget target1();

// Desk-scale configuration whose Doppler support exactly fills the azimuth PRF
// (K_a M T^2 = 1) at a range close to range_hint_m that falls on a range bin.
struct UnitFill {
    RadarConfig cfg;
    double range_m = 0.0;   // on-grid reference range
    PointTarget target;     // on-grid target at mid aperture
};
UnitFill unit_fill(std::size_t n, std::size_t m, std::size_t decimation = 400, double range_hint_m = 1093.0);

}  // namespace osar::presets
