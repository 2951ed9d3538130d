#include "osar/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "osar/errors.hpp"
#include "osar/fft.hpp"

namespace osar {

namespace {

// (1/sqrt(L)) sum_{f=first}^{first+L-1} exp(j 2 pi f x / L)
cplx dirichlet(double x, std::size_t len, long first) {
    const double l = static_cast<double>(len);
    const double theta = 2.0 * kPi * x / l;
    const double half = std::sin(theta / 2.0);
    if (std::abs(half) < 1e-14) {
        // x is a multiple of L; every term equals exp(j theta first)
        return std::polar(std::sqrt(l), theta * static_cast<double>(first));
    }
    const cplx num = std::polar(1.0, theta * static_cast<double>(first)) * (1.0 - std::polar(1.0, theta * l));
    const cplx den = 1.0 - std::polar(1.0, theta);
    return num / den / std::sqrt(l);
}

double wrap(double v, double period) {
    double r = std::fmod(v, period);
    if (r < 0) r += period;
    return r;
}

std::size_t circular(std::size_t base, long offset, std::size_t len) {
    const long l = static_cast<long>(len);
    return static_cast<std::size_t>(((static_cast<long>(base) + offset) % l + l) % l);
}

nlohmann::json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

double crossing_width(const std::vector<double>& mag, double samples_per_bin) {
    const std::size_t len = mag.size();
    const std::size_t ip = static_cast<std::size_t>(std::max_element(mag.begin(), mag.end()) - mag.begin());
    const double peak = mag[ip];
    if (!(peak > 0.0)) throw MeasurementError("profile is identically zero");
    const double level = peak / std::sqrt(2.0);
    auto walk = [&](int dir) -> double {
        double prev = peak;
        for (std::size_t s = 1; s < len; ++s) {
            const double cur = mag[dir > 0 ? (ip + s) % len : (ip + len - s) % len];
            if (cur < level) return static_cast<double>(s - 1) + (prev - level) / (prev - cur);
            prev = cur;
        }
        throw MeasurementError("no -3 dB crossing found");
    };
    return (walk(+1) + walk(-1)) / samples_per_bin;
}

}  // namespace

Resolutions theoretical_resolutions(const RadarConfig& cfg, double rbar_ref_m) {
    const double ka = cfg.azimuth_chirp_rate(rbar_ref_m);
    const double ta = static_cast<double>(cfg.imaging_symbols()) * cfg.azimuth_interval();
    return {cfg.range_pitch(), cfg.platform.speed_mps / (2.0 * ka * ta)};
}

GridPosition target_grid_position(const PointTarget& t, double rbar_m, const RadarConfig& cfg) {
    return {wrap(rbar_m / cfg.range_pitch(), static_cast<double>(cfg.n_subcarriers)),
            wrap(t.y_m / cfg.azimuth_pitch(), static_cast<double>(cfg.imaging_symbols()))};
}

cplx reference_amplitude(cplx alpha) { return alpha * std::polar(1.0, -kPi / 4.0); }

ImageGrid ideal_reference_image(const Scene& scene, const RadarConfig& cfg, const std::vector<cplx>& alphas) {
    if (alphas.size() != scene.size()) throw InvalidParameter("one amplitude per target is required");
    const std::size_t n = cfg.n_subcarriers;
    const std::size_t m = cfg.imaging_symbols();
    ImageGrid img;
    img.data = ComplexGrid(n, m);
    img.stage = Stage::ac;
    img.axes = {cfg.range_pitch(), cfg.azimuth_pitch(), cfg.doppler_pitch(), false};
    std::vector<cplx> dr(n), da(m);
    const long first_doppler = -static_cast<long>(m / 2);
    for (std::size_t q = 0; q < scene.size(); ++q) {
        const GridPosition pos = target_grid_position(scene.targets[q], scene.closest_ranges[q], cfg);
        const cplx at = reference_amplitude(alphas[q]);
        for (std::size_t k = 0; k < n; ++k) dr[k] = dirichlet(static_cast<double>(k) - pos.k, n, 0);
        for (std::size_t j = 0; j < m; ++j) da[j] = dirichlet(static_cast<double>(j) - pos.m, m, first_doppler);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < m; ++j) img.data(k, j) += at * dr[k] * da[j];
    }
    return img;
}

double measure_mainlobe_width(const std::vector<cplx>& profile, int factor, std::optional<long> first_label) {
    if (profile.size() < 3) throw MeasurementError("profile too short");
    if (factor < 1) throw InvalidParameter("interpolation factor must be >= 1");
    const long len = static_cast<long>(profile.size());
    std::vector<cplx> spec = profile;
    dft(spec, FftDir::forward);
    long first = 0;
    if (first_label) {
        first = *first_label;
    } else {
        // split the spectrum at its weakest bin so the occupied band stays contiguous
        std::size_t split = 0;
        for (std::size_t i = 1; i < spec.size(); ++i)
            if (std::norm(spec[i]) < std::norm(spec[split])) split = i;
        first = static_cast<long>(split) + 1;
    }
    const long big = len * factor;
    std::vector<cplx> padded(static_cast<std::size_t>(big));
    for (long f = first; f < first + len; ++f)
        padded[static_cast<std::size_t>(((f % big) + big) % big)] += spec[static_cast<std::size_t>(((f % len) + len) % len)];
    dft(padded, FftDir::inverse);
    std::vector<double> mag(padded.size());
    for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(padded[i]);
    return crossing_width(mag, static_cast<double>(factor));
}

double measure_mainlobe_width(const std::vector<double>& magnitude, int factor) {
    if (magnitude.size() < 3) throw MeasurementError("profile too short");
    if (factor == 1) return crossing_width(magnitude, 1.0);
    std::vector<cplx> p(magnitude.begin(), magnitude.end());
    const std::size_t len = p.size();
    dft(p, FftDir::forward);
    const std::size_t big = len * static_cast<std::size_t>(factor);
    std::vector<cplx> padded(big);
    // real input: keep Hermitian symmetry, split at Nyquist
    for (std::size_t i = 0; i < len; ++i) {
        const long f = (i <= len / 2) ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(len);
        padded[static_cast<std::size_t>((f + static_cast<long>(big)) % static_cast<long>(big))] = p[i];
    }
    dft(padded, FftDir::inverse);
    std::vector<double> mag(big);
    for (std::size_t i = 0; i < big; ++i) mag[i] = std::abs(padded[i]);
    return crossing_width(mag, static_cast<double>(factor));
}

Peak find_peak(const ComplexGrid& g) {
    if (g.empty()) throw InvalidParameter("empty image");
    std::size_t best = 0;
    for (std::size_t i = 1; i < g.size(); ++i)
        if (std::norm(g.data[i]) > std::norm(g.data[best])) best = i;
    return {best / g.cols, best % g.cols};
}

EnergySplit psf_energies(const ComplexGrid& image, Peak peak, int halfwidth) {
    const std::size_t span = static_cast<std::size_t>(2 * halfwidth + 1);
    if (halfwidth < 0 || span > image.rows || span > image.cols) throw InvalidParameter("mainlobe region exceeds the image");
    EnergySplit e;
    e.total = image.energy();
    for (int dk = -halfwidth; dk <= halfwidth; ++dk)
        for (int dm = -halfwidth; dm <= halfwidth; ++dm) {
            const std::size_t k = circular(peak.k, dk, image.rows);
            const std::size_t m = circular(peak.m, dm, image.cols);
            e.mainlobe += std::norm(image(k, m));
        }
    return e;
}

double islr(const ComplexGrid& image, Peak peak, int halfwidth) {
    const EnergySplit e = psf_energies(image, peak, halfwidth);
    return (e.total - e.mainlobe) / e.mainlobe;
}

double islr(const std::vector<EnergySplit>& trials) {
    double tot = 0.0, main = 0.0;
    for (const auto& t : trials) {
        tot += t.total;
        main += t.mainlobe;
    }
    return (tot - main) / main;
}

double pel(const std::vector<double>& r00, std::size_t n, std::size_t m) {
    if (r00.empty()) throw InvalidParameter("no trials");
    const double nm = static_cast<double>(n * m);
    const double root = std::sqrt(nm);
    double acc = 0.0;
    for (double r : r00) acc += (1.0 - r / root) * (1.0 - r / root);
    return nm * acc / static_cast<double>(r00.size());
}

double pel_analytic(double mean_chi, double var_chi, std::size_t n, std::size_t m) {
    const double nm = static_cast<double>(n * m);
    return var_chi + nm * (1.0 - mean_chi) * (1.0 - mean_chi);
}

double snr_out(const std::vector<double>& r00, double rcs_var, double noise_var, double mean_g2) {
    if (r00.empty()) throw InvalidParameter("no trials");
    double e2 = 0.0;
    for (double r : r00) e2 += r * r;
    e2 /= static_cast<double>(r00.size());
    return rcs_var * e2 / (noise_var * mean_g2);
}

double nmse(const std::vector<double>& mse, double rcs_var, const std::vector<double>& r00) {
    if (mse.empty() || r00.empty()) throw InvalidParameter("no trials");
    double m = 0.0, e2 = 0.0;
    for (double v : mse) m += v;
    for (double r : r00) e2 += r * r;
    m /= static_cast<double>(mse.size());
    e2 /= static_cast<double>(r00.size());
    return m / (rcs_var * e2);
}

namespace {

double identity_gap(const MetricsReport& r, double noise_term) {
    const double lhs = r.islr + r.pel / r.peak_energy + noise_term;
    if (r.nmse == 0.0) return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(lhs - r.nmse) / r.nmse;
}

}  // namespace

double identity_check(const MetricsReport& r) {
    return identity_gap(r, std::isfinite(r.snr_out) ? 1.0 / r.snr_out : 0.0);
}

double identity_check_integrated(const MetricsReport& r) {
    const double nm = static_cast<double>(r.n_range * r.n_azimuth);
    return identity_gap(r, std::isfinite(r.snr_out) ? nm / r.snr_out : 0.0);
}

nlohmann::json to_json(const MetricsReport& r) {
    const bool single = r.targets == 1;
    return {{"rho_r_m", num(r.rho_r_m)},
            {"rho_a_m", num(r.rho_a_m)},
            {"measured_rho_r_m", num(r.measured_rho_r_m)},
            {"measured_rho_a_m", num(r.measured_rho_a_m)},
            {"islr_db", single ? num(r.islr_db) : nullptr},
            {"pel", single ? num(r.pel) : nullptr},
            {"snr_out_db", single ? num(r.snr_out_db) : nullptr},
            {"nmse", single ? num(r.nmse) : nullptr},
            {"identity_residual", single ? num(r.identity_residual) : nullptr},
            {"trials", r.trials},
            {"filter", r.filter},
            {"mode", r.mode},
            {"snr_in_db", num(r.snr_in_db)},
            {"peak_energy", single ? num(r.peak_energy) : nullptr},
            {"nmse_analytic", single ? num(r.nmse_analytic) : nullptr},
            {"pel_analytic", single ? num(r.pel_analytic) : nullptr},
            {"identity_residual_integrated", single ? num(r.identity_residual_integrated) : nullptr},
            {"n_range", r.n_range},
            {"n_azimuth", r.n_azimuth},
            {"gain_reference", r.gain_reference}};
}

}  // namespace osar
