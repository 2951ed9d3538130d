#include "osar/radar_config.hpp"

#include <cmath>

#include "osar/errors.hpp"
#include "osar/grid.hpp"

namespace osar {

double RadarConfig::wavelength() const { return kSpeedOfLight / fc_hz; }

std::size_t RadarConfig::n_symbols() const {
    return static_cast<std::size_t>(std::llround(aperture_time_s / total_symbol()));
}

double RadarConfig::range_pitch() const {
    return kSpeedOfLight / (2.0 * static_cast<double>(n_subcarriers) * subcarrier_spacing_hz);
}

double RadarConfig::azimuth_chirp_rate(double range_m) const {
    const double v = platform.speed_mps;
    return 2.0 * v * v / (wavelength() * range_m);
}

double RadarConfig::doppler_fill(double range_m) const {
    const double t = azimuth_interval();
    return azimuth_chirp_rate(range_m) * static_cast<double>(imaging_symbols()) * t * t;
}

double RadarConfig::max_unambiguous_range() const { return kSpeedOfLight * cp_duration_s / 2.0; }

void RadarConfig::validate() const {
    if (!(fc_hz > 0.0)) throw InvalidParameter("carrier frequency must be positive");
    if (!(subcarrier_spacing_hz > 0.0)) throw InvalidParameter("subcarrier spacing must be positive");
    if (!(cp_duration_s > 0.0)) throw InvalidParameter("cyclic prefix must be positive");
    if (!(aperture_time_s > 0.0)) throw InvalidParameter("aperture time must be positive");
    if (n_subcarriers == 0) throw InvalidParameter("n_subcarriers must be positive");
    if (azimuth_downsample == 0) throw InvalidParameter("azimuth_downsample must be positive");
    if (static_cast<double>(n_subcarriers) * subcarrier_spacing_hz > bandwidth_hz * (1.0 + 1e-12))
        throw InvalidParameter("N * subcarrier spacing exceeds the bandwidth");
    if (imaging_symbols() == 0) throw InvalidParameter("aperture holds no imaging symbols");
    if (!(snr_in_linear > 0.0)) throw InvalidParameter("snr_in must be positive");
    if (noise_var < 0.0) throw InvalidParameter("noise variance must be non-negative");
    platform.validate();
}

}  // namespace osar
