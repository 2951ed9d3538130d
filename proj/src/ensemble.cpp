#include "osar/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "osar/echo.hpp"
#include "osar/errors.hpp"
#include "osar/rng.hpp"
#include "osar/tf_filter.hpp"

namespace osar {

std::string gain_reference_name(GainReference g) { return g == GainReference::none ? "none" : "expected_chi"; }

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(mu);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

namespace {

struct TrialOut {
    double r00 = 0.0;
    EnergySplit energies;
    double image_mse = 0.0;
    double tf_mse = 0.0;
    double pedestal_sum = 0.0;
    std::size_t pedestal_cells = 0;
    double noise_energy = 0.0;
};

bool far_from(std::size_t k, std::size_t m, Peak p, std::size_t rows, std::size_t cols, int guard) {
    auto dist = [](std::size_t a, std::size_t b, std::size_t len) {
        const std::size_t d = a > b ? a - b : b - a;
        return std::min(d, len - d);
    };
    return dist(k, p.k, rows) > static_cast<std::size_t>(guard) || dist(m, p.m, cols) > static_cast<std::size_t>(guard);
}

}  // namespace

EnsembleResult run_ensemble(const EnsembleSpec& spec) {
    const RadarConfig& cfg = spec.cfg;
    cfg.validate();
    if (spec.scene.size() != 1) throw InvalidParameter("ensemble metrics need exactly one reference target");
    if (spec.scene.targets[0].mode != AmplitudeMode::deterministic_unit)
        throw InvalidParameter("ensemble metrics need a deterministic-amplitude reference target");
    if (spec.trials < 1) throw InvalidParameter("trials must be >= 1");
    const std::size_t n = cfg.n_subcarriers;
    const std::size_t m = cfg.imaging_symbols();
    if (!spec.mask.empty() && spec.mask.size() != n * m) throw InvalidParameter("mask dimensions do not match");

    EnsembleResult res;
    res.stats = chi_stats(spec.constellation, spec.filter);
    res.gain = spec.gain == GainReference::expected_chi ? res.stats.mean : 1.0;
    const double inv_gain = 1.0 / res.gain;
    const double rcs = spec.scene.targets[0].rcs_var;
    const double noise_var = cfg.noise_var;

    const std::uint64_t rcs_seed = mix_seed(spec.seed, 0xA11CEULL);
    const auto alphas = target_amplitudes(spec.scene, cfg, rcs_seed);
    const cplx alpha_ref = reference_amplitude(alphas[0]);
    const ComplexGrid h = build_channel_matrix(spec.scene, cfg, rcs_seed);
    const ImageGrid ideal = ideal_reference_image(spec.scene, cfg, alphas);
    const GridPosition pos = target_grid_position(spec.scene.targets[0], spec.scene.closest_ranges[0], cfg);
    res.peak = {static_cast<std::size_t>(std::llround(pos.k)) % n, static_cast<std::size_t>(std::llround(pos.m)) % m};
    const Peak pk = res.peak;

    std::vector<TrialOut> out(spec.trials);
    std::mutex first_mu;
    parallel_for(spec.trials, spec.threads, [&](std::size_t t) {
        const SymbolGrid sym = gen_symbol_grid(n, m, spec.constellation, mix_seed(spec.seed, 2 * t + 2),
                                               spec.mask.empty() ? nullptr : &spec.mask);
        ComplexGrid ysig(n, m);
        for (std::size_t i = 0; i < ysig.size(); ++i) ysig.data[i] = h.data[i] * sym.data.data[i];
        ComplexGrid fs = apply_tf_filter(ysig, sym, spec.filter);
        ComplexGrid fn(n, m);
        if (noise_var > 0.0) {
            const Philox4x32 rng(mix_seed(spec.seed, 2 * t + 3));
            ComplexGrid z(n, m);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < m; ++b) z(a, b) = complex_gaussian(rng, a, b, noise_var);
            fn = apply_tf_filter(z, sym, spec.filter);
        }
        TrialOut& o = out[t];
        for (std::size_t i = 0; i < h.size(); ++i) {
            fs.data[i] *= inv_gain;
            fn.data[i] *= inv_gain;
            o.tf_mse += std::norm(fs.data[i] + fn.data[i] - h.data[i]);
        }
        if (t == 0 && spec.first_trial_hook) {
            ComplexGrid both(n, m);
            for (std::size_t i = 0; i < both.size(); ++i) both.data[i] = fs.data[i] + fn.data[i];
            focus(std::move(both), cfg, spec.chain, spec.first_trial_hook);
        }
        const ImageGrid sig = focus(std::move(fs), cfg, spec.chain);
        const ImageGrid noi = focus(std::move(fn), cfg, spec.chain);

        o.r00 = (sig.data(pk.k, pk.m) / alpha_ref).real();
        ComplexGrid psf = sig.data;
        for (auto& v : psf.data) v /= alpha_ref;
        o.energies = psf_energies(psf, pk, spec.mainlobe_halfwidth);
        o.noise_energy = noi.data.energy();
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < m; ++j) {
                const cplx y = sig.data(k, j) + noi.data(k, j);
                o.image_mse += std::norm(y - ideal.data(k, j));
                if (far_from(k, j, pk, n, m, spec.pedestal_guard)) {
                    o.pedestal_sum += std::norm(y);
                    ++o.pedestal_cells;
                }
            }
        if (t == 0) {
            std::lock_guard lock(first_mu);
            res.first_signal = sig.data;
            res.first_noisy = sig.data;
            for (std::size_t i = 0; i < res.first_noisy.size(); ++i) res.first_noisy.data[i] += noi.data.data[i];
        }
    });

    // ordered reductions keep results independent of the schedule
    std::vector<double> r00, mse;
    std::vector<EnergySplit> energies;
    double ped = 0.0;
    std::size_t ped_cells = 0;
    for (const auto& o : out) {
        r00.push_back(o.r00);
        mse.push_back(o.image_mse);
        energies.push_back(o.energies);
        res.tf_mse += o.tf_mse;
        res.noise_energy += o.noise_energy;
        res.image_mse += o.image_mse;
        ped += o.pedestal_sum;
        ped_cells += o.pedestal_cells;
    }
    const double trials = static_cast<double>(spec.trials);
    res.tf_mse /= trials;
    res.noise_energy /= trials;
    res.image_mse /= trials;
    res.pedestal = ped_cells ? ped / static_cast<double>(ped_cells) : 0.0;
    for (double r : r00) res.mean_r00 += r / trials;

    const double g2 = inv_gain * inv_gain;
    const double mean_chi = res.stats.mean * inv_gain;
    const double var_chi = res.stats.var * g2;
    const double mean_g2 = res.stats.mean_g2 * g2;
    const double nm = static_cast<double>(n * m);
    const double mse_chi = var_chi + (mean_chi - 1.0) * (mean_chi - 1.0);
    res.tf_mse_analytic = nm * (rcs * mse_chi + noise_var * mean_g2);
    res.pedestal_analytic = rcs * var_chi + noise_var * mean_g2;

    MetricsReport& rep = res.report;
    const Resolutions th = theoretical_resolutions(cfg, spec.chain.reference_range_m);
    rep.rho_r_m = th.range_m;
    rep.rho_a_m = th.azimuth_m;
    rep.measured_rho_r_m = rep.measured_rho_a_m = std::nan("");
    if (spec.measure_widths) {
        std::vector<cplx> rcut(n), acut(m);
        for (std::size_t k = 0; k < n; ++k) rcut[k] = res.first_signal(k, pk.m);
        for (std::size_t j = 0; j < m; ++j) acut[j] = res.first_signal(pk.k, j);
        try {
            rep.measured_rho_r_m = measure_mainlobe_width(rcut, 16, 0L) * cfg.range_pitch();
        } catch (const MeasurementError&) {
        }
        try {
            rep.measured_rho_a_m = measure_mainlobe_width(acut, 16, -static_cast<long>(m / 2)) * cfg.azimuth_pitch();
        } catch (const MeasurementError&) {
        }
    }
    rep.islr = islr(energies);
    rep.islr_db = 10.0 * std::log10(rep.islr);
    rep.pel = pel(r00, n, m);
    rep.peak_energy = 0.0;
    for (double r : r00) rep.peak_energy += r * r / trials;
    rep.snr_out = noise_var > 0.0 ? snr_out(r00, rcs, noise_var, mean_g2) : std::numeric_limits<double>::infinity();
    rep.snr_out_db = 10.0 * std::log10(rep.snr_out);
    rep.nmse = nmse(mse, rcs, r00);
    rep.pel_analytic = pel_analytic(mean_chi, var_chi, n, m);
    const double er2_analytic = nm * mean_chi * mean_chi + var_chi;
    rep.nmse_analytic = spec.mask.empty() ? res.tf_mse_analytic / (rcs * er2_analytic) : std::nan("");
    rep.trials = spec.trials;
    rep.filter = filter_name(spec.filter.kind);
    rep.mode = spec.mode;
    rep.snr_in_db = spec.snr_in_db;
    rep.n_range = n;
    rep.n_azimuth = m;
    rep.targets = 1;
    rep.gain_reference = gain_reference_name(spec.gain);
    rep.identity_residual = identity_check(rep);
    rep.identity_residual_integrated = identity_check_integrated(rep);
    return res;
}

}  // namespace osar
