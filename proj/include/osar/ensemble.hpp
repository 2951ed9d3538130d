#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "osar/constellation.hpp"
#include "osar/metrics.hpp"
#include "osar/rd_imaging.hpp"
#include "osar/scene.hpp"

namespace osar {

// none: metrics on the raw focused image.
// expected_chi: image divided by the filter's analytic E[chi] before any metric,
// which removes the deterministic Wiener scale and leaves RF/MF untouched.
enum class GainReference { none, expected_chi };

std::string gain_reference_name(GainReference g);

struct EnsembleSpec {
    RadarConfig cfg;
    Scene scene;  // metrics need exactly one deterministic-unit target
    Constellation constellation;
    FilterSpec filter;
    std::size_t trials = 1;
    std::uint64_t seed = 1;
    ChainOptions chain;
    GainReference gain = GainReference::none;
    std::vector<std::uint8_t> mask;  // optional N x M active-element mask
    std::string mode = "data_aided";
    double snr_in_db = 0.0;
    bool measure_widths = true;
    int mainlobe_halfwidth = 1;
    int pedestal_guard = 3;
    std::size_t threads = 0;  // 0: hardware concurrency
    StageHook first_trial_hook;  // sees every stage of trial 0 (signal plus noise)
};

struct EnsembleResult {
    MetricsReport report;
    double mean_r00 = 0.0;
    double tf_mse = 0.0;           // mean ||Y_tf - H||^2 (after gain normalisation)
    double tf_mse_analytic = 0.0;  // NM (sigma_a^2 E[(chi-1)^2] + sigma^2 E|g|^2), normalised the same way
    double pedestal = 0.0;         // mean |y|^2 away from the target
    double pedestal_analytic = 0.0;
    double noise_energy = 0.0;     // mean energy of the focused noise-only image
    double image_mse = 0.0;        // mean sum |y - ideal|^2
    double gain = 1.0;
    ChiStats stats;
    Peak peak;
    ComplexGrid first_signal;  // trial-0 noiseless focused image (already gain-normalised)
    ComplexGrid first_noisy;   // trial-0 focused image with noise
};

EnsembleResult run_ensemble(const EnsembleSpec& spec);

// Run fn(i) for i in [0, count) over a fixed worker pool.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace osar
