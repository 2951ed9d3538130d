#include "osar/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "osar/constellation.hpp"
#include "osar/echo.hpp"
#include "osar/errors.hpp"
#include "osar/metrics.hpp"
#include "osar/tf_filter.hpp"

namespace osar {

namespace {

Eigen::MatrixXcd design_matrix(const std::vector<GroundPoint>& grid, const SymbolGrid& s, const RadarConfig& cfg) {
    const std::size_t cells = cfg.n_subcarriers * cfg.imaging_symbols();
    Eigen::MatrixXcd ht(static_cast<Eigen::Index>(cells), static_cast<Eigen::Index>(grid.size()));
    for (std::size_t q = 0; q < grid.size(); ++q) {
        const ComplexGrid hq = target_channel({grid[q].x_m, grid[q].y_m, 1.0, AmplitudeMode::deterministic_unit}, cfg);
        for (std::size_t i = 0; i < cells; ++i)
            ht(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(q)) = hq.data[i] * s.data.data[i];
    }
    return ht;
}

Eigen::VectorXcd as_vector(const ComplexGrid& y) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(y.size()));
    for (std::size_t i = 0; i < y.size(); ++i) v(static_cast<Eigen::Index>(i)) = y.data[i];
    return v;
}

}  // namespace

std::vector<cplx> ls_reconstruct(const ComplexGrid& y, const std::vector<GroundPoint>& grid, const SymbolGrid& s,
                                 const RadarConfig& cfg, double ridge, LsLimits limits) {
    if (ridge < 0.0) throw InvalidParameter("ridge must be non-negative");
    if (grid.empty()) throw InvalidParameter("empty reconstruction grid");
    if (grid.size() > limits.max_grid)
        throw CapacityError("grid of " + std::to_string(grid.size()) + " points exceeds the cap of " +
                            std::to_string(limits.max_grid));
    if (y.size() > limits.max_cells)
        throw CapacityError("N*M = " + std::to_string(y.size()) + " exceeds the cap of " + std::to_string(limits.max_cells));
    if (y.rows != cfg.n_subcarriers || y.cols != cfg.imaging_symbols() || s.data.rows != y.rows || s.data.cols != y.cols)
        throw InvalidParameter("echo, symbols and configuration disagree in size");

    const Eigen::MatrixXcd ht = design_matrix(grid, s, cfg);
    Eigen::MatrixXcd gram = ht.adjoint() * ht;
    gram.diagonal().array() += ridge;
    const Eigen::VectorXcd rhs = ht.adjoint() * as_vector(y);
    Eigen::LDLT<Eigen::MatrixXcd> ldlt(gram);
    // LDLT's rcond estimate ignores zero pivots, so judge conditioning by the pivot spread
    const Eigen::VectorXd pivots = ldlt.vectorD().cwiseAbs();
    const double spread = pivots.maxCoeff() > 0.0 ? pivots.minCoeff() / pivots.maxCoeff() : 0.0;
    if (ldlt.info() != Eigen::Success || spread < 1e-12)
        throw SingularityError("normal matrix is singular (pivot ratio " + std::to_string(spread) +
                               "); use a positive ridge");
    const Eigen::VectorXcd a = ldlt.solve(rhs);
    return std::vector<cplx>(a.data(), a.data() + a.size());
}

double ls_residual(const ComplexGrid& y, const std::vector<GroundPoint>& grid, const SymbolGrid& s, const RadarConfig& cfg,
                   const std::vector<cplx>& alpha_hat) {
    const Eigen::MatrixXcd ht = design_matrix(grid, s, cfg);
    const Eigen::VectorXcd a = Eigen::Map<const Eigen::VectorXcd>(alpha_hat.data(), static_cast<Eigen::Index>(alpha_hat.size()));
    return (as_vector(y) - ht * a).norm();
}

RdLsComparison rd_vs_ls_compare(const Scene& scene, const RadarConfig& cfg, const ChainOptions& chain, std::uint64_t seed) {
    RdLsComparison cmp;
    if (scene.size() == 0) return cmp;
    const double rho = cfg.range_pitch();
    for (std::size_t q = 0; q < scene.size(); ++q) {
        const auto& t = scene.targets[q];
        const double r_max = std::max(slant_range(t, 0.0, cfg, RangeMode::first_order),
                                      slant_range(t, static_cast<double>(cfg.imaging_symbols() - 1), cfg, RangeMode::first_order));
        if (r_max - scene.closest_ranges[q] >= rho / 10.0)
            throw InvalidParameter("range migration of target " + std::to_string(q) + " is not negligible");
    }
    RadarConfig quiet = cfg;
    quiet.noise_var = 0.0;
    const SymbolGrid s = gen_symbol_grid(quiet, make_qam(4), seed);
    const EchoGrid y = synthesize_echo(scene, quiet, s, 0, seed);

    std::vector<GroundPoint> grid;
    for (const auto& t : scene.targets) grid.push_back({t.x_m, t.y_m});
    const auto alpha_hat = ls_reconstruct(y.data, grid, s, quiet);

    const ImageGrid img = focus(apply_tf_filter(y.data, s, FilterSpec::rf()), quiet, chain);
    const double root = std::sqrt(static_cast<double>(img.data.size()));
    cmp.applicable = true;
    for (std::size_t q = 0; q < scene.size(); ++q) {
        const GridPosition pos = target_grid_position(scene.targets[q], scene.closest_ranges[q], quiet);
        const std::size_t k = static_cast<std::size_t>(std::llround(pos.k)) % img.data.rows;
        const std::size_t m = static_cast<std::size_t>(std::llround(pos.m)) % img.data.cols;
        const double chain_amp = std::abs(img.data(k, m)) / root;
        const double ls_amp = std::abs(alpha_hat[q]);
        cmp.chain_amplitude.push_back(chain_amp);
        cmp.ls_amplitude.push_back(ls_amp);
        cmp.max_gap = std::max(cmp.max_gap, std::abs(chain_amp - ls_amp) / ls_amp);
    }
    return cmp;
}

}  // namespace osar
