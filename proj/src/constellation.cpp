#include "osar/constellation.hpp"

#include <cmath>

#include "osar/errors.hpp"

namespace osar {

void FilterSpec::validate() const {
    if (kind == FilterKind::wf && !(snr_in_linear > 0.0))
        throw ConfigError("Wiener filter requires a positive snr_in");
}

cplx FilterSpec::gain(cplx s) const {
    switch (kind) {
        case FilterKind::rf:
            return 1.0 / s;
        case FilterKind::mf:
            return std::conj(s);
        case FilterKind::wf:
            return std::conj(s) / (std::norm(s) + 1.0 / snr_in_linear);
    }
    return {};
}

double FilterSpec::chi(cplx s) const {
    const double p = std::norm(s);
    switch (kind) {
        case FilterKind::rf:
            return 1.0;
        case FilterKind::mf:
            return p;
        case FilterKind::wf:
            return p / (p + 1.0 / snr_in_linear);
    }
    return 0.0;
}

std::string filter_name(FilterKind k) {
    switch (k) {
        case FilterKind::rf:
            return "rf";
        case FilterKind::mf:
            return "mf";
        case FilterKind::wf:
            return "wf";
    }
    return "?";
}

FilterKind filter_from_name(const std::string& name) {
    if (name == "rf") return FilterKind::rf;
    if (name == "mf") return FilterKind::mf;
    if (name == "wf") return FilterKind::wf;
    throw InvalidParameter("unknown filter '" + name + "'");
}

Constellation make_qam(int order) {
    int side = 0;
    switch (order) {
        case 4:
            side = 2;
            break;
        case 16:
            side = 4;
            break;
        case 64:
            side = 8;
            break;
        case 256:
            side = 16;
            break;
        default:
            throw InvalidParameter("unsupported QAM order " + std::to_string(order));
    }
    Constellation c;
    c.name = order == 4 ? "qpsk" : "qam" + std::to_string(order);
    // odd-integer lattice, E|s|^2 = 2(L^2-1)/3 before scaling
    const double scale = 1.0 / std::sqrt(2.0 * (side * side - 1) / 3.0);
    for (int i = 0; i < side; ++i)
        for (int q = 0; q < side; ++q)
            c.points.emplace_back((2 * i - side + 1) * scale, (2 * q - side + 1) * scale);

    const double inv = 1.0 / static_cast<double>(c.points.size());
    for (const auto& s : c.points) {
        const double p = std::norm(s);
        c.mean_power += p * inv;
        c.fourth_moment += p * p * inv;
        c.inverse_power += inv / p;
    }
    return c;
}

Constellation constellation_by_name(const std::string& name) {
    if (name == "qpsk") return make_qam(4);
    if (name == "qam16") return make_qam(16);
    if (name == "qam64") return make_qam(64);
    if (name == "qam256") return make_qam(256);
    throw InvalidParameter("unknown constellation '" + name + "'");
}

ChiStats chi_stats(const Constellation& c, const FilterSpec& filter) {
    filter.validate();
    const double inv = 1.0 / static_cast<double>(c.points.size());
    ChiStats st;
    for (const auto& s : c.points) {
        st.mean += filter.chi(s) * inv;
        st.mean_g2 += std::norm(filter.gain(s)) * inv;
    }
    for (const auto& s : c.points) {
        const double d = filter.chi(s) - st.mean;
        st.var += d * d * inv;
    }
    return st;
}

}  // namespace osar
