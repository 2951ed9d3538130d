#pragma once

#include "osar/constellation.hpp"
#include "osar/radar_config.hpp"
#include "osar/symbol_grid.hpp"

namespace osar {

// Element-wise y * g(s); inactive resource elements give 0.
ComplexGrid apply_tf_filter(const ComplexGrid& y, const SymbolGrid& s, const FilterSpec& spec);

// NM (sum sigma_alpha^2 E[(chi-1)^2] + sigma^2 E|g|^2) on the imaging grid of cfg.
double channel_mse_analytic(const RadarConfig& cfg, const ChiStats& stats, double rcs_total, double noise_var);
double channel_mse_analytic(std::size_t n, std::size_t m, const ChiStats& stats, double rcs_total, double noise_var);

}  // namespace osar
