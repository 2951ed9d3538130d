#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "osar/rd_imaging.hpp"
#include "osar/scene.hpp"

namespace osar {

struct Resolutions {
    double range_m = 0.0;
    double azimuth_m = 0.0;
};

// rho_r = c/(2 N df); rho_a = v/(2 K_a T_a) with K_a at the reference range.
Resolutions theoretical_resolutions(const RadarConfig& cfg, double rbar_ref_m);

// Focused-image position of a target: (Rbar/rho_r mod N, y/(v T) mod M).
struct GridPosition {
    double k = 0.0;
    double m = 0.0;
};
GridPosition target_grid_position(const PointTarget& t, double rbar_m, const RadarConfig& cfg);

// Complex reference amplitude of the focused peak: alpha * exp(-j pi/4).
cplx reference_amplitude(cplx alpha);

// sqrt(NM) sum_q alpha~_q D_r(k - k_q) D_a(m - m_q), with D the unitary Dirichlet
// kernels of the chain (unsigned range frequencies, centred Doppler frequencies).
ImageGrid ideal_reference_image(const Scene& scene, const RadarConfig& cfg, const std::vector<cplx>& alphas);

// -3 dB width in samples of the given profile, located on a factor-times
// zero-padded DFT interpolation. Circular profile. first_label is the frequency
// index of spectrum bin 0 (0 for unsigned, -L/2 for centred); without it the band
// is split at its weakest bin, which only suits partially occupied spectra.
double measure_mainlobe_width(const std::vector<cplx>& profile, int factor = 16,
                              std::optional<long> first_label = std::nullopt);
// Real band-limited (signed) profile; plain magnitudes are not band-limited.
double measure_mainlobe_width(const std::vector<double>& magnitude, int factor = 16);

struct Peak {
    std::size_t k = 0;
    std::size_t m = 0;
};

Peak find_peak(const ComplexGrid& g);

struct EnergySplit {
    double total = 0.0;
    double mainlobe = 0.0;
};

// Mainlobe: (2h+1) x (2h+1) block around the peak, circular indexing.
EnergySplit psf_energies(const ComplexGrid& image, Peak peak, int halfwidth);
double islr(const ComplexGrid& image, Peak peak, int halfwidth);
// Ratio of ensemble-mean energies.
double islr(const std::vector<EnergySplit>& trials);

double pel(const std::vector<double>& r00, std::size_t n, std::size_t m);
double pel_analytic(double mean_chi, double var_chi, std::size_t n, std::size_t m);

// sigma_alpha^2 E[R00^2] / (sigma^2 E|g|^2)
double snr_out(const std::vector<double>& r00, double rcs_var, double noise_var, double mean_g2);

// mean(mse) / (sigma_alpha^2 mean(R00^2))
double nmse(const std::vector<double>& mse, double rcs_var, const std::vector<double>& r00);

struct MetricsReport {
    double rho_r_m = 0.0;
    double rho_a_m = 0.0;
    double measured_rho_r_m = 0.0;
    double measured_rho_a_m = 0.0;
    double islr_db = 0.0;
    double pel = 0.0;
    double snr_out_db = 0.0;
    double nmse = 0.0;
    double identity_residual = 0.0;
    std::size_t trials = 0;
    std::string filter;
    std::string mode;

    // supporting values
    double snr_in_db = 0.0;
    double islr = 0.0;
    double snr_out = 0.0;
    double peak_energy = 0.0;  // E[R00^2]
    double nmse_analytic = 0.0;
    double pel_analytic = 0.0;
    double identity_residual_integrated = 0.0;
    std::size_t n_range = 0;
    std::size_t n_azimuth = 0;
    std::size_t targets = 1;
    std::string gain_reference = "none";
};

// Relative gap of ISLR + PEL/E[R^2] + 1/SNR_out against NMSE.
double identity_check(const MetricsReport& r);
// Same with the noise term summed over the N*M image cells (N*M / SNR_out).
double identity_check_integrated(const MetricsReport& r);

nlohmann::json to_json(const MetricsReport& r);

}  // namespace osar
