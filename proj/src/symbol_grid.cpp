#include "osar/symbol_grid.hpp"

#include <algorithm>

#include "osar/errors.hpp"
#include "osar/rng.hpp"

namespace osar {

SymbolGrid gen_symbol_grid(std::size_t n, std::size_t m, const Constellation& c, std::uint64_t seed,
                           const std::vector<std::uint8_t>* mask) {
    if (c.points.empty()) throw InvalidParameter("empty constellation");
    if (mask && mask->size() != n * m) throw InvalidParameter("mask dimensions do not match the grid");
    SymbolGrid g;
    g.data = ComplexGrid(n, m);
    if (mask) g.mask = *mask;
    const Philox4x32 rng(seed);
    const std::uint64_t k = c.points.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (!g.active(i, j)) continue;
            const auto w = rng.draw(i, j);
            // multiply-high maps 32 random bits to [0, k) without modulo bias for powers of two
            const std::uint64_t idx = (static_cast<std::uint64_t>(w[0]) * k) >> 32;
            g.data(i, j) = c.points[idx];
        }
    }
    return g;
}

SymbolGrid gen_symbol_grid(const RadarConfig& cfg, const Constellation& c, std::uint64_t seed,
                           const std::vector<std::uint8_t>* mask) {
    return gen_symbol_grid(cfg.n_subcarriers, cfg.imaging_symbols(), c, seed, mask);
}

void SrsConfig::validate(std::size_t n_subcarriers) const {
    if (periodicity_slots < 1) throw ConfigError("SRS periodicity must be at least one slot");
    if (symbols_per_slot < 1) throw ConfigError("SRS symbols_per_slot must be positive");
    if (comb_spacing < 1) throw ConfigError("SRS comb spacing must be positive");
    if (n_resource_blocks < 1) throw ConfigError("SRS needs at least one resource block");
    if (start_subcarrier + span() > n_subcarriers)
        throw ConfigError("SRS span [" + std::to_string(start_subcarrier) + ", " +
                          std::to_string(start_subcarrier + span()) + ") exceeds N = " +
                          std::to_string(n_subcarriers));
}

std::size_t SrsMask::active_tones() const {
    return static_cast<std::size_t>(std::count(subcarriers.begin(), subcarriers.end(), 1));
}

std::size_t SrsMask::active_symbols() const {
    return static_cast<std::size_t>(std::count(symbols.begin(), symbols.end(), 1));
}

SrsMask srs_mask(const RadarConfig& cfg, const SrsConfig& srs) {
    srs.validate(cfg.n_subcarriers);
    SrsMask out;
    out.subcarriers.assign(cfg.n_subcarriers, 0);
    for (std::size_t n = srs.start_subcarrier; n < srs.start_subcarrier + srs.span(); n += srs.comb_spacing)
        out.subcarriers[n] = 1;
    const std::size_t m_full = cfg.n_symbols();
    out.symbols.assign(m_full, 0);
    for (std::size_t m = 0; m < m_full; m += srs.period_symbols()) out.symbols[m] = 1;
    out.pilot_prf_hz = 1.0 / (static_cast<double>(srs.period_symbols()) * cfg.total_symbol());
    return out;
}

RadarConfig pilot_imaging_config(const RadarConfig& cfg, const SrsConfig& srs) {
    srs.validate(cfg.n_subcarriers);
    RadarConfig p = cfg;
    p.azimuth_downsample = srs.period_symbols();
    return p;
}

std::vector<std::uint8_t> pilot_grid_mask(const RadarConfig& pilot_cfg, const SrsConfig& srs) {
    srs.validate(pilot_cfg.n_subcarriers);
    const std::size_t n = pilot_cfg.n_subcarriers;
    const std::size_t m = pilot_cfg.imaging_symbols();
    std::vector<std::uint8_t> mask(n * m, 0);
    for (std::size_t i = srs.start_subcarrier; i < srs.start_subcarrier + srs.span(); i += srs.comb_spacing)
        std::fill(mask.begin() + static_cast<std::ptrdiff_t>(i * m), mask.begin() + static_cast<std::ptrdiff_t>((i + 1) * m), 1);
    return mask;
}

}  // namespace osar
