#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "osar/geometry.hpp"
#include "osar/radar_config.hpp"
#include "osar/scene.hpp"
#include "osar/symbol_grid.hpp"

namespace osar {

struct EchoGrid {
    ComplexGrid data;
    std::uint64_t noise_seed = 0;
    std::uint64_t rcs_seed = 0;
    std::string scene_id;
};

// alpha_q = d_q exp(-j 4 pi fc Rbar_q / c); d_q is CN(0, rcs_var) or sqrt(rcs_var).
std::vector<cplx> target_amplitudes(const Scene& scene, const RadarConfig& cfg, std::uint64_t rcs_seed);

// Throws ConfigError naming the first target whose round trip exceeds the cyclic prefix.
void check_cyclic_prefix(const Scene& scene, const RadarConfig& cfg, RangeMode mode = RangeMode::first_order);

EchoGrid synthesize_echo(const Scene& scene, const RadarConfig& cfg, const SymbolGrid& symbols, std::uint64_t noise_seed,
                         std::uint64_t rcs_seed, RangeMode mode = RangeMode::first_order);

// Unit-amplitude channel of one target: b c^T (.) E.
ComplexGrid target_channel(const PointTarget& target, const RadarConfig& cfg, RangeMode mode = RangeMode::first_order);

// H = sum_q alpha_q (b_q c_q^T (.) E_q) with the same amplitudes synthesize_echo uses.
ComplexGrid build_channel_matrix(const Scene& scene, const RadarConfig& cfg, std::uint64_t rcs_seed,
                                 RangeMode mode = RangeMode::first_order);

std::string scene_id(const Scene& scene);

}  // namespace osar
