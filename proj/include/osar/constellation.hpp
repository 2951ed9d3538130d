#pragma once

#include <string>
#include <vector>

#include "osar/filter_spec.hpp"
#include "osar/grid.hpp"

namespace osar {

struct Constellation {
    std::string name;
    std::vector<cplx> points;
    double mean_power = 0.0;     // E|s|^2
    double fourth_moment = 0.0;  // E|s|^4
    double inverse_power = 0.0;  // E[1/|s|^2]
};

// Square QAM with unit average power. order in {4, 16, 64, 256}.
Constellation make_qam(int order);
Constellation constellation_by_name(const std::string& name);

struct ChiStats {
    double mean = 0.0;     // E[chi]
    double var = 0.0;      // Var[chi]
    double mean_g2 = 0.0;  // E|g|^2

    double mean_sq_error() const { return var + (mean - 1.0) * (mean - 1.0); }
};

ChiStats chi_stats(const Constellation& c, const FilterSpec& filter);

}  // namespace osar
