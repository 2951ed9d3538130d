#pragma once

#include <cstdint>
#include <vector>

#include "osar/constellation.hpp"
#include "osar/radar_config.hpp"

namespace osar {

struct SymbolGrid {
    ComplexGrid data;
    std::vector<std::uint8_t> mask;  // empty means every element is active

    bool active(std::size_t n, std::size_t m) const { return mask.empty() || mask[n * data.cols + m] != 0; }
};

SymbolGrid gen_symbol_grid(std::size_t n, std::size_t m, const Constellation& c, std::uint64_t seed,
                           const std::vector<std::uint8_t>* mask = nullptr);

// Grid of size N x imaging_symbols().
SymbolGrid gen_symbol_grid(const RadarConfig& cfg, const Constellation& c, std::uint64_t seed,
                           const std::vector<std::uint8_t>* mask = nullptr);

struct SrsConfig {
    std::size_t periodicity_slots = 20;
    std::size_t symbols_per_slot = 14;
    std::size_t comb_spacing = 4;
    std::size_t n_resource_blocks = 24;
    std::size_t start_subcarrier = 1667;

    std::size_t span() const { return 12 * n_resource_blocks; }
    std::size_t period_symbols() const { return periodicity_slots * symbols_per_slot; }
    void validate(std::size_t n_subcarriers) const;
};

// Separable SRS resource pattern over the full-rate N x M frame.
struct SrsMask {
    std::vector<std::uint8_t> subcarriers;  // N entries
    std::vector<std::uint8_t> symbols;      // full-rate M entries
    double pilot_prf_hz = 0.0;

    bool active(std::size_t n, std::size_t m) const { return subcarriers[n] && symbols[m]; }
    std::size_t active_tones() const;
    std::size_t active_symbols() const;
};

SrsMask srs_mask(const RadarConfig& cfg, const SrsConfig& srs);

// Imaging configuration that keeps only pilot-bearing symbols.
RadarConfig pilot_imaging_config(const RadarConfig& cfg, const SrsConfig& srs);

// Dense N x imaging_symbols() mask for a pilot imaging config.
std::vector<std::uint8_t> pilot_grid_mask(const RadarConfig& pilot_cfg, const SrsConfig& srs);

}  // namespace osar
