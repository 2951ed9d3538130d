#include "osar/echo.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>

#include "osar/errors.hpp"
#include "osar/rng.hpp"

namespace osar {

namespace {

constexpr std::uint64_t kRcsStream = 0x52435321ULL;

double delta_range(const PointTarget& t, double rbar, std::size_t m, const RadarConfig& cfg, RangeMode mode) {
    return slant_range(t, static_cast<double>(m), cfg, mode) - rbar;
}

}  // namespace

std::vector<cplx> target_amplitudes(const Scene& scene, const RadarConfig& cfg, std::uint64_t rcs_seed) {
    const Philox4x32 rng(rcs_seed);
    std::vector<cplx> out;
    out.reserve(scene.size());
    for (std::size_t q = 0; q < scene.size(); ++q) {
        const auto& t = scene.targets[q];
        const cplx d = t.mode == AmplitudeMode::random_gaussian ? complex_gaussian(rng, q, kRcsStream, t.rcs_var)
                                                                : cplx(std::sqrt(t.rcs_var), 0.0);
        const double carrier = -4.0 * kPi / kSpeedOfLight * cfg.fc_hz * scene.closest_ranges[q];
        out.push_back(d * std::polar(1.0, carrier));
    }
    return out;
}

void check_cyclic_prefix(const Scene& scene, const RadarConfig& cfg, RangeMode mode) {
    const std::size_t m_last = cfg.imaging_symbols() - 1;
    for (std::size_t q = 0; q < scene.size(); ++q) {
        const auto& t = scene.targets[q];
        const double r = std::max(slant_range(t, 0.0, cfg, mode), slant_range(t, static_cast<double>(m_last), cfg, mode));
        if (!(cfg.cp_duration_s > 2.0 * r / kSpeedOfLight)) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "target %zu: round-trip delay %.4g s at range %.2f m exceeds the cyclic prefix %.4g s",
                          q, 2.0 * r / kSpeedOfLight, r, cfg.cp_duration_s);
            throw ConfigError(buf);
        }
    }
}

EchoGrid synthesize_echo(const Scene& scene, const RadarConfig& cfg, const SymbolGrid& symbols, std::uint64_t noise_seed,
                         std::uint64_t rcs_seed, RangeMode mode) {
    const std::size_t n_sub = cfg.n_subcarriers;
    const std::size_t m_sym = cfg.imaging_symbols();
    if (symbols.data.rows != n_sub || symbols.data.cols != m_sym)
        throw InvalidParameter("symbol grid dimensions do not match the configuration");
    check_cyclic_prefix(scene, cfg, mode);

    EchoGrid out;
    out.data = ComplexGrid(n_sub, m_sym);
    out.noise_seed = noise_seed;
    out.rcs_seed = rcs_seed;
    out.scene_id = scene_id(scene);

    const auto alphas = target_amplitudes(scene, cfg, rcs_seed);
    const double k4 = 4.0 * kPi / kSpeedOfLight;
    std::vector<cplx> column(n_sub);
    for (std::size_t q = 0; q < scene.size(); ++q) {
        const auto& t = scene.targets[q];
        const double rbar = scene.closest_ranges[q];
        for (std::size_t m = 0; m < m_sym; ++m) {
            const double dr = delta_range(t, rbar, m, cfg, mode);
            const cplx head = alphas[q] * std::polar(1.0, -k4 * cfg.fc_hz * dr);
            const double step_phase = -k4 * cfg.subcarrier_spacing_hz * (dr + rbar);
            const cplx step = std::polar(1.0, step_phase);
            // phase recurrence, re-anchored every 64 subcarriers
            cplx rot(1.0, 0.0);
            for (std::size_t n = 0; n < n_sub; ++n) {
                if ((n & 63) == 0) rot = std::polar(1.0, step_phase * static_cast<double>(n));
                out.data(n, m) += head * rot;
                rot *= step;
            }
        }
    }
    for (std::size_t n = 0; n < n_sub; ++n)
        for (std::size_t m = 0; m < m_sym; ++m) out.data(n, m) *= symbols.data(n, m);

    if (cfg.noise_var > 0.0) {
        const Philox4x32 rng(noise_seed);
        for (std::size_t n = 0; n < n_sub; ++n)
            for (std::size_t m = 0; m < m_sym; ++m) out.data(n, m) += complex_gaussian(rng, n, m, cfg.noise_var);
    }
    return out;
}

ComplexGrid target_channel(const PointTarget& target, const RadarConfig& cfg, RangeMode mode) {
    const std::size_t n_sub = cfg.n_subcarriers;
    const std::size_t m_sym = cfg.imaging_symbols();
    const double rbar = closest_range(target.x_m, cfg.platform.height_m);
    const double k4 = 4.0 * kPi / kSpeedOfLight;
    std::vector<cplx> b(n_sub), c(m_sym);
    std::vector<double> dr(m_sym);
    for (std::size_t n = 0; n < n_sub; ++n)
        b[n] = std::polar(1.0, -k4 * static_cast<double>(n) * cfg.subcarrier_spacing_hz * rbar);
    for (std::size_t m = 0; m < m_sym; ++m) {
        dr[m] = delta_range(target, rbar, m, cfg, mode);
        c[m] = std::polar(1.0, -k4 * cfg.fc_hz * dr[m]);
    }
    ComplexGrid h(n_sub, m_sym);
    for (std::size_t n = 0; n < n_sub; ++n)
        for (std::size_t m = 0; m < m_sym; ++m) {
            const cplx e = std::polar(1.0, -k4 * static_cast<double>(n) * cfg.subcarrier_spacing_hz * dr[m]);
            h(n, m) = b[n] * c[m] * e;
        }
    return h;
}

ComplexGrid build_channel_matrix(const Scene& scene, const RadarConfig& cfg, std::uint64_t rcs_seed, RangeMode mode) {
    if (scene.size() == 0) throw InvalidParameter("channel matrix needs at least one target");
    const auto alphas = target_amplitudes(scene, cfg, rcs_seed);
    ComplexGrid h(cfg.n_subcarriers, cfg.imaging_symbols());
    for (std::size_t q = 0; q < scene.size(); ++q) {
        const ComplexGrid hq = target_channel(scene.targets[q], cfg, mode);
        for (std::size_t i = 0; i < h.size(); ++i) h.data[i] += alphas[q] * hq.data[i];
    }
    return h;
}

std::string scene_id(const Scene& scene) {
    // FNV-1a over the target list, enough to tag provenance
    std::uint64_t h = 1469598103934665603ULL;
    auto feed = [&h](double v) {
        unsigned char bytes[sizeof v];
        std::memcpy(bytes, &v, sizeof v);
        for (unsigned char b : bytes) h = (h ^ b) * 1099511628211ULL;
    };
    for (const auto& t : scene.targets) {
        feed(t.x_m);
        feed(t.y_m);
        feed(t.rcs_var);
        feed(t.mode == AmplitudeMode::random_gaussian ? 1.0 : 0.0);
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "q%zu-%016llx", scene.size(), static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace osar
