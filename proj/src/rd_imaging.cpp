#include "osar/rd_imaging.hpp"

#include <cmath>
#include <limits>

#include "osar/errors.hpp"
#include "osar/fft.hpp"

namespace osar {

namespace {

void expect_stage(const ImageGrid& y, Stage s, const char* op) {
    if (y.stage != s)
        throw StageError(std::string(op) + " expects stage " + stage_name(s) + ", got " + stage_name(y.stage));
}

void expect_dims(const ImageGrid& y, const RadarConfig& cfg) {
    if (y.data.rows != cfg.n_subcarriers || y.data.cols != cfg.imaging_symbols())
        throw InvalidParameter("image dimensions do not match the configuration");
}

double sinc(double x) {
    if (std::abs(x) < 1e-12) return 1.0;
    return std::sin(kPi * x) / (kPi * x);
}

}  // namespace

std::string stage_name(Stage s) {
    switch (s) {
        case Stage::tf:
            return "tf";
        case Stage::rc:
            return "rc";
        case Stage::rd:
            return "rd";
        case Stage::rcmc:
            return "rcmc";
        case Stage::ac:
            return "ac";
    }
    return "?";
}

ImageGrid make_tf_image(ComplexGrid tf, const RadarConfig& cfg) {
    ImageGrid y;
    y.data = std::move(tf);
    y.stage = Stage::tf;
    y.axes = {cfg.range_pitch(), cfg.azimuth_pitch(), cfg.doppler_pitch(), false};
    expect_dims(y, cfg);
    return y;
}

ImageGrid range_compress(ImageGrid y, const RadarConfig& cfg) {
    expect_stage(y, Stage::tf, "range_compress");
    expect_dims(y, cfg);
    dft_columns(y.data, FftDir::inverse);
    y.stage = Stage::rc;
    return y;
}

ImageGrid azimuth_fft(ImageGrid y, const RadarConfig& cfg) {
    expect_stage(y, Stage::rc, "azimuth_fft");
    expect_dims(y, cfg);
    dft_rows(y.data, FftDir::forward);
    const std::size_t m = y.data.cols;
    std::vector<cplx> row(m);
    for (std::size_t k = 0; k < y.data.rows; ++k) {
        cplx* r = &y.data(k, 0);
        for (std::size_t j = 0; j < m; ++j) row[j] = r[(j + m - m / 2) % m];
        std::copy(row.begin(), row.end(), r);
    }
    y.stage = Stage::rd;
    y.axes.doppler_centered = true;
    return y;
}

StationaryPoint stationary_point(double p, const RadarConfig& cfg, double rbar_m, double y_m) {
    const double ka = cfg.azimuth_chirp_rate(rbar_m);
    if (!(ka > 0.0)) throw InvalidParameter("azimuth chirp rate must be positive");
    const double t = cfg.azimuth_interval();
    const double m = static_cast<double>(cfg.imaging_symbols());
    StationaryPoint sp;
    sp.m_tilde = -p / (m * t * t * ka) + y_m / (cfg.platform.speed_mps * t);
    sp.in_aperture = sp.m_tilde >= 0.0 && sp.m_tilde < m;
    return sp;
}

SpaResult spa_spectrum(const std::vector<cplx>& envelope, double a, double b, double p) {
    if (a == 0.0) throw InvalidParameter("degenerate phase: quadratic coefficient is zero");
    if (envelope.empty()) throw InvalidParameter("empty envelope");
    const double m = static_cast<double>(envelope.size());
    SpaResult r;
    r.m_tilde = (2.0 * kPi * p / m - b) / (2.0 * a);
    r.in_support = r.m_tilde >= 0.0 && r.m_tilde <= m - 1.0;

    double peak = 0.0, slope = 0.0;
    for (std::size_t i = 0; i < envelope.size(); ++i) {
        peak = std::max(peak, std::abs(envelope[i]));
        if (i + 1 < envelope.size()) slope = std::max(slope, std::abs(envelope[i + 1] - envelope[i]));
    }
    const double fresnel = std::sqrt(kPi / std::abs(a));
    r.premise_ratio = slope > 0.0 ? (peak / slope) / fresnel : std::numeric_limits<double>::infinity();
    r.premise_warning = r.premise_ratio < 10.0;

    if (!r.in_support) return r;
    const double mt = r.m_tilde;
    const std::size_t i0 = std::min(static_cast<std::size_t>(mt), envelope.size() - 1);
    const std::size_t i1 = std::min(i0 + 1, envelope.size() - 1);
    const double f = mt - static_cast<double>(i0);
    const cplx w = envelope[i0] * (1.0 - f) + envelope[i1] * f;
    const double phi = a * mt * mt + b * mt - 2.0 * kPi * mt * p / m;
    const double quarter = a > 0.0 ? kPi / 4 : -kPi / 4;
    r.value = w * std::polar(std::sqrt(2.0 * kPi / std::abs(2.0 * a)), phi + quarter);
    return r;
}

double rcm_shift(double p, const RadarConfig& cfg, double rbar_ref_m) {
    if (!(rbar_ref_m > 0.0)) throw InvalidParameter("reference range must be positive");
    const double v = cfg.platform.speed_mps;
    const double ka = cfg.azimuth_chirp_rate(rbar_ref_m);
    const double kmt = ka * static_cast<double>(cfg.imaging_symbols()) * cfg.azimuth_interval();
    return v * v * p * p / (2.0 * rbar_ref_m * kmt * kmt * cfg.range_pitch());
}

std::vector<cplx> shift_range_column(const std::vector<cplx>& column, double dk, const RcmcMethod& method) {
    const std::size_t n = column.size();
    std::vector<cplx> out(n);
    if (n == 0) return out;
    if (method.kind == RcmcMethod::phase_ramp) {
        out = column;
        dft(out, FftDir::forward);
        for (std::size_t i = 0; i < n; ++i)
            out[i] *= std::polar(1.0, 2.0 * kPi * static_cast<double>(i) * dk / static_cast<double>(n));
        dft(out, FftDir::inverse);
        return out;
    }
    if (method.kind != RcmcMethod::windowed_sinc) throw InvalidParameter("unknown RCMC method");
    const int hw = method.halfwidth;
    if (hw < 1) throw InvalidParameter("windowed-sinc halfwidth must be >= 1");
    const double base = std::floor(dk);
    const double frac = dk - base;
    // profiles come from unsigned subcarriers 0..N-1, so the kernel is modulated to the band centre
    const double centre = static_cast<double>(n - 1) / (2.0 * static_cast<double>(n));
    std::vector<cplx> taps;
    double norm = 0.0;
    for (int i = -hw + 1; i <= hw; ++i) {
        const double u = static_cast<double>(i) - frac;
        const double w = 0.5 * (1.0 + std::cos(kPi * u / hw));
        norm += sinc(u) * w;
        taps.push_back(sinc(u) * w * std::polar(1.0, -2.0 * kPi * centre * u));
    }
    for (auto& t : taps) t /= norm;
    const long nn = static_cast<long>(n);
    const long shift = static_cast<long>(base);
    for (long k = 0; k < nn; ++k) {
        cplx acc{};
        for (int i = -hw + 1; i <= hw; ++i) {
            const long src = ((k + shift + i) % nn + nn) % nn;
            acc += column[static_cast<std::size_t>(src)] * taps[static_cast<std::size_t>(i + hw - 1)];
        }
        out[static_cast<std::size_t>(k)] = acc;
    }
    return out;
}

ImageGrid rcmc(ImageGrid y, const RadarConfig& cfg, double rbar_ref_m, const RcmcMethod& method) {
    expect_stage(y, Stage::rd, "rcmc");
    expect_dims(y, cfg);
    if (method.kind != RcmcMethod::windowed_sinc && method.kind != RcmcMethod::phase_ramp)
        throw InvalidParameter("unknown RCMC method");
    const std::size_t rows = y.data.rows;
    const std::size_t cols = y.data.cols;
    if (method.kind == RcmcMethod::phase_ramp) {
        dft_columns(y.data, FftDir::forward);
        for (std::size_t j = 0; j < cols; ++j) {
            const double dk = rcm_shift(static_cast<double>(signed_doppler(j, cols)), cfg, rbar_ref_m);
            for (std::size_t n = 0; n < rows; ++n)
                y.data(n, j) *= std::polar(1.0, 2.0 * kPi * static_cast<double>(n) * dk / static_cast<double>(rows));
        }
        dft_columns(y.data, FftDir::inverse);
    } else {
        std::vector<cplx> col(rows);
        for (std::size_t j = 0; j < cols; ++j) {
            const double dk = rcm_shift(static_cast<double>(signed_doppler(j, cols)), cfg, rbar_ref_m);
            if (dk == 0.0) continue;
            for (std::size_t k = 0; k < rows; ++k) col[k] = y.data(k, j);
            const auto shifted = shift_range_column(col, dk, method);
            for (std::size_t k = 0; k < rows; ++k) y.data(k, j) = shifted[k];
        }
    }
    y.stage = Stage::rcmc;
    return y;
}

ImageGrid azimuth_compress(ImageGrid y, const RadarConfig& cfg, double rbar_ref_m, KaMode mode) {
    expect_stage(y, Stage::rcmc, "azimuth_compress");
    expect_dims(y, cfg);
    if (!(rbar_ref_m > 0.0)) throw InvalidParameter("reference range must be positive");
    const std::size_t rows = y.data.rows;
    const std::size_t m = y.data.cols;
    const double t = cfg.azimuth_interval();
    const double mt2 = static_cast<double>(m) * static_cast<double>(m) * t * t;
    std::vector<cplx> phase(m);
    auto fill_phase = [&](double ka) {
        for (std::size_t j = 0; j < m; ++j) {
            const double p = static_cast<double>(signed_doppler(j, m));
            phase[j] = std::polar(1.0, -kPi * p * p / (mt2 * ka));
        }
    };
    fill_phase(cfg.azimuth_chirp_rate(rbar_ref_m));
    std::vector<cplx> row(m);
    for (std::size_t k = 0; k < rows; ++k) {
        if (mode == KaMode::per_range_bin) {
            const double r = std::max(static_cast<double>(k), 0.5) * cfg.range_pitch();
            fill_phase(cfg.azimuth_chirp_rate(r));
        }
        cplx* r = &y.data(k, 0);
        // undo the centring while applying the reference phase
        for (std::size_t j = 0; j < m; ++j) row[(j + m - m / 2) % m] = r[j] * phase[j];
        std::copy(row.begin(), row.end(), r);
    }
    dft_rows(y.data, FftDir::inverse);
    y.stage = Stage::ac;
    y.axes.doppler_centered = false;
    return y;
}

ImageGrid focus(ComplexGrid tf, const RadarConfig& cfg, const ChainOptions& opts, const StageHook& hook) {
    ImageGrid y = make_tf_image(std::move(tf), cfg);
    auto emit = [&](const ImageGrid& g) {
        if (hook) hook(g);
    };
    emit(y);
    y = range_compress(std::move(y), cfg);
    emit(y);
    y = azimuth_fft(std::move(y), cfg);
    emit(y);
    y = rcmc(std::move(y), cfg, opts.reference_range_m, opts.rcmc);
    emit(y);
    y = azimuth_compress(std::move(y), cfg, opts.reference_range_m, opts.ka_mode);
    emit(y);
    return y;
}

}  // namespace osar
