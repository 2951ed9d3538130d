#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "osar/grid.hpp"
#include "osar/radar_config.hpp"

namespace osar {

enum class Stage : std::uint8_t { tf = 1, rc = 2, rd = 3, rcmc = 4, ac = 5 };

std::string stage_name(Stage s);

struct AxisInfo {
    double range_pitch_m = 0.0;
    double azimuth_pitch_m = 0.0;
    double doppler_pitch_hz = 0.0;
    bool doppler_centered = false;  // column j holds signed Doppler p = j - M/2
};

struct ImageGrid {
    ComplexGrid data;
    Stage stage = Stage::tf;
    AxisInfo axes;
};

// Signed Doppler index stored at column j of a centred grid, and the inverse.
inline long signed_doppler(std::size_t j, std::size_t m) {
    return static_cast<long>(j) - static_cast<long>(m / 2);
}
inline std::size_t doppler_column(long p, std::size_t m) {
    const long mm = static_cast<long>(m);
    return static_cast<std::size_t>(((p + mm / 2) % mm + mm) % mm);
}

ImageGrid make_tf_image(ComplexGrid tf, const RadarConfig& cfg);

ImageGrid range_compress(ImageGrid y, const RadarConfig& cfg);
ImageGrid azimuth_fft(ImageGrid y, const RadarConfig& cfg);

struct StationaryPoint {
    double m_tilde = 0.0;
    bool in_aperture = false;
};

StationaryPoint stationary_point(double p, const RadarConfig& cfg, double rbar_m, double y_m);

struct SpaResult {
    cplx value;
    double m_tilde = 0.0;
    bool in_support = false;
    double premise_ratio = 0.0;    // envelope correlation time over chirp Fresnel length
    bool premise_warning = false;  // premise_ratio < 10
};

// Approximates the plain DFT sum_m w_m exp(j(a m^2 + b m)) exp(-j 2 pi m p / M), M = envelope size.
SpaResult spa_spectrum(const std::vector<cplx>& envelope, double a, double b, double p);

double rcm_shift(double p, const RadarConfig& cfg, double rbar_ref_m);

struct RcmcMethod {
    enum Kind { windowed_sinc, phase_ramp } kind = windowed_sinc;
    int halfwidth = 8;
};

// Shift a range column by dk bins: out[k] = x(k + dk), circular.
std::vector<cplx> shift_range_column(const std::vector<cplx>& column, double dk, const RcmcMethod& method);

ImageGrid rcmc(ImageGrid y, const RadarConfig& cfg, double rbar_ref_m, const RcmcMethod& method);

enum class KaMode { reference, per_range_bin };

ImageGrid azimuth_compress(ImageGrid y, const RadarConfig& cfg, double rbar_ref_m, KaMode mode);

struct ChainOptions {
    double reference_range_m = 0.0;
    RcmcMethod rcmc{};
    KaMode ka_mode = KaMode::reference;
};

using StageHook = std::function<void(const ImageGrid&)>;

// tf -> rc -> rd -> rcmc -> ac; hook sees every stage after it is produced.
ImageGrid focus(ComplexGrid tf, const RadarConfig& cfg, const ChainOptions& opts, const StageHook& hook = {});

}  // namespace osar
