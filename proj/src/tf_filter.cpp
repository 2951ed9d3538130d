#include "osar/tf_filter.hpp"

#include "osar/errors.hpp"

namespace osar {

ComplexGrid apply_tf_filter(const ComplexGrid& y, const SymbolGrid& s, const FilterSpec& spec) {
    spec.validate();
    if (y.rows != s.data.rows || y.cols != s.data.cols) throw InvalidParameter("echo and symbol grids differ in size");
    ComplexGrid out(y.rows, y.cols);
    for (std::size_t n = 0; n < y.rows; ++n)
        for (std::size_t m = 0; m < y.cols; ++m) {
            const cplx sym = s.data(n, m);
            if (!s.active(n, m) || sym == cplx{}) continue;
            out(n, m) = y(n, m) * spec.gain(sym);
        }
    return out;
}

double channel_mse_analytic(std::size_t n, std::size_t m, const ChiStats& stats, double rcs_total, double noise_var) {
    return static_cast<double>(n * m) * (rcs_total * stats.mean_sq_error() + noise_var * stats.mean_g2);
}

double channel_mse_analytic(const RadarConfig& cfg, const ChiStats& stats, double rcs_total, double noise_var) {
    return channel_mse_analytic(cfg.n_subcarriers, cfg.imaging_symbols(), stats, rcs_total, noise_var);
}

}  // namespace osar
