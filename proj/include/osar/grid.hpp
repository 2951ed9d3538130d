#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace osar {

using cplx = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kPi = 3.14159265358979323846;

// Dense row-major complex matrix. Rows index subcarriers / range bins,
// columns index symbols / azimuth or Doppler bins.
struct ComplexGrid {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> data;

    ComplexGrid() = default;
    ComplexGrid(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    cplx& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    std::size_t size() const { return data.size(); }
    bool empty() const { return data.empty(); }

    double energy() const {
        double e = 0.0;
        for (const auto& v : data) e += std::norm(v);
        return e;
    }
};

}  // namespace osar
