#pragma once

#include <cstddef>
#include <vector>

#include "osar/rd_imaging.hpp"
#include "osar/scene.hpp"
#include "osar/symbol_grid.hpp"

namespace osar {

struct GroundPoint {
    double x_m = 0.0;
    double y_m = 0.0;
};

struct LsLimits {
    std::size_t max_grid = 256;
    std::size_t max_cells = 65536;
};

// alpha_hat = (Ht^H Ht + ridge I)^-1 Ht^H y, columns vec(H_q (.) S).
std::vector<cplx> ls_reconstruct(const ComplexGrid& y, const std::vector<GroundPoint>& grid, const SymbolGrid& s,
                                 const RadarConfig& cfg, double ridge = 0.0, LsLimits limits = {});

// ||y - Ht alpha_hat||
double ls_residual(const ComplexGrid& y, const std::vector<GroundPoint>& grid, const SymbolGrid& s, const RadarConfig& cfg,
                   const std::vector<cplx>& alpha_hat);

struct RdLsComparison {
    bool applicable = false;
    double max_gap = 0.0;
    std::vector<double> chain_amplitude;  // |y_ac| / sqrt(NM) at each target bin
    std::vector<double> ls_amplitude;     // |alpha_hat|
};

// Noiseless RF chain versus LS on the target positions. Requires max RCM below rho_r / 10.
RdLsComparison rd_vs_ls_compare(const Scene& scene, const RadarConfig& cfg, const ChainOptions& chain,
                                std::uint64_t seed = 7);

}  // namespace osar
