#pragma once

#include <cmath>
#include <complex>

#include "osar/radar_config.hpp"
#include "osar/scene.hpp"

namespace testing {

// Reference waveform on an n x m imaging grid, keeping every d-th symbol.
inline osar::RadarConfig small_config(std::size_t n, std::size_t m, std::size_t d) {
    osar::RadarConfig c;
    c.n_subcarriers = n;
    c.azimuth_downsample = d;
    c.aperture_time_s = static_cast<double>(m * d) * c.total_symbol();
    return c;
}

inline osar::PointTarget unit_target(double x, double y, double rcs = 1.0) {
    return {x, y, rcs, osar::AmplitudeMode::deterministic_unit};
}

// Direct evaluation of the first-order echo model for one unit-amplitude target.
inline std::complex<double> model_phase(const osar::RadarConfig& cfg, const osar::PointTarget& t, std::size_t n,
                                        std::size_t m) {
    const double c0 = 299792458.0;
    const double pi = 3.14159265358979323846;
    const double rbar = std::sqrt(t.x_m * t.x_m + cfg.platform.height_m * cfg.platform.height_m);
    const double along = cfg.platform.speed_mps * static_cast<double>(m) * cfg.azimuth_interval() - t.y_m;
    const double dr = along * along / (2.0 * rbar);
    const double ph = -4.0 * pi / c0 * (static_cast<double>(n) * cfg.subcarrier_spacing_hz * (dr + rbar)) -
                      4.0 * pi / c0 * cfg.fc_hz * dr;
    return std::polar(1.0, ph);
}

}  // namespace testing
