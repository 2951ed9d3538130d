#include "osar/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace osar {

namespace {

// FFTW_ESTIMATE keeps plan choice independent of timing, so output bytes are reproducible.
struct PlanCache {
    std::mutex mu;
    std::map<std::tuple<int, int, int, int, int>, fftw_plan> plans;

    fftw_plan get(int n, int howmany, int stride, int dist, int sign) {
        std::lock_guard lock(mu);
        const auto key = std::make_tuple(n, howmany, stride, dist, sign);
        auto it = plans.find(key);
        if (it != plans.end()) return it->second;
        const std::size_t span = static_cast<std::size_t>(n - 1) * stride + static_cast<std::size_t>(howmany - 1) * dist + 1;
        fftw_complex* buf = fftw_alloc_complex(span);
        fftw_plan p = fftw_plan_many_dft(1, &n, howmany, buf, nullptr, stride, dist, buf, nullptr, stride, dist, sign,
                                         FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(buf);
        plans.emplace(key, p);
        return p;
    }

    ~PlanCache() {
        for (auto& kv : plans) fftw_destroy_plan(kv.second);
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void run(cplx* data, std::size_t total, int n, int howmany, int stride, int dist, FftDir dir) {
    if (n <= 0 || howmany <= 0) return;
    const int sign = dir == FftDir::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    fftw_plan p = cache().get(n, howmany, stride, dist, sign);
    auto* d = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(p, d, d);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < total; ++i) data[i] *= s;
}

}  // namespace

void dft(std::vector<cplx>& x, FftDir dir) { run(x.data(), x.size(), static_cast<int>(x.size()), 1, 1, 1, dir); }

void dft_columns(ComplexGrid& g, FftDir dir) {
    run(g.data.data(), g.size(), static_cast<int>(g.rows), static_cast<int>(g.cols), static_cast<int>(g.cols), 1, dir);
}

void dft_rows(ComplexGrid& g, FftDir dir) {
    run(g.data.data(), g.size(), static_cast<int>(g.cols), static_cast<int>(g.rows), 1, static_cast<int>(g.cols), dir);
}

}  // namespace osar
