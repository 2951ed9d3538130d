#include "osar/presets.hpp"

#include <cmath>

#include "osar/grid.hpp"

namespace osar::presets {

RadarConfig table1() { return RadarConfig{}; }

RadarConfig table1_decimated() {
    RadarConfig c;
    c.azimuth_downsample = 10;
    return c;
}

RadarConfig table1_lite() {
    RadarConfig c;
    c.n_subcarriers = 512;
    c.azimuth_downsample = 47;
    c.aperture_time_s = 1024.0 * 47.0 * c.total_symbol();
    return c;
}

std::vector<PointTarget> reference_targets() {
    return {{300.0, 100.0, 1.0, AmplitudeMode::deterministic_unit},
            {250.0, 100.0, 1.0, AmplitudeMode::deterministic_unit},
            {300.0, 140.0, 1.0, AmplitudeMode::deterministic_unit}};
}

PointTarget target1() { return reference_targets()[0]; }

UnitFill unit_fill(std::size_t n, std::size_t m, std::size_t decimation, double range_hint_m) {
    UnitFill u;
    RadarConfig& c = u.cfg;
    c.n_subcarriers = n;
    c.azimuth_downsample = decimation;
    c.aperture_time_s = static_cast<double>(m * decimation) * c.total_symbol();
    const double rho = c.range_pitch();
    u.range_m = std::round(range_hint_m / rho) * rho;
    const double t = c.azimuth_interval();
    c.platform.speed_mps = std::sqrt(c.wavelength() * u.range_m / (2.0 * static_cast<double>(m))) / t;
    const double h = c.platform.height_m;
    u.target = {std::sqrt(u.range_m * u.range_m - h * h), static_cast<double>(m / 2) * c.azimuth_pitch(), 1.0,
                AmplitudeMode::deterministic_unit};
    return u;
}

}  // namespace osar::presets
