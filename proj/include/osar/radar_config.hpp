#pragma once

#include <cstddef>

#include "osar/geometry.hpp"

namespace osar {

// Waveform and platform parameters. Defaults are the reference system with
// N = 3276 subcarriers and no azimuth decimation.
struct RadarConfig {
    double fc_hz = 3.5e9;
    double bandwidth_hz = 100e6;
    double subcarrier_spacing_hz = 30e3;
    double cp_duration_s = 1.0 / 120e3;
    double aperture_time_s = 2.0;
    std::size_t n_subcarriers = 3276;
    std::size_t azimuth_downsample = 1;
    PlatformGeometry platform{};
    double snr_in_linear = 1.0;
    double noise_var = 0.0;

    double wavelength() const;
    double symbol_duration() const { return 1.0 / subcarrier_spacing_hz; }
    double total_symbol() const { return symbol_duration() + cp_duration_s; }
    // full-rate symbol count, round(T_a / T_sym)
    std::size_t n_symbols() const;
    // symbols kept by the imaging chain (every D-th)
    std::size_t imaging_symbols() const { return n_symbols() / azimuth_downsample; }
    double azimuth_interval() const { return static_cast<double>(azimuth_downsample) * total_symbol(); }
    double prf() const { return 1.0 / azimuth_interval(); }
    double range_pitch() const;
    double azimuth_pitch() const { return platform.speed_mps * azimuth_interval(); }
    double doppler_pitch() const { return 1.0 / (static_cast<double>(imaging_symbols()) * azimuth_interval()); }
    double azimuth_chirp_rate(double range_m) const;
    // K_a M T^2, equal to 1 when the Doppler support exactly fills the PRF
    double doppler_fill(double range_m) const;
    double max_unambiguous_range() const;

    void validate() const;
};

}  // namespace osar
