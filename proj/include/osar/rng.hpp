#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace osar {

// Philox4x32-10 counter-based generator. Every draw is a pure function of
// (key, counter), so element-wise streams need no shared state.
class Philox4x32 {
public:
    using Block = std::array<std::uint32_t, 4>;

    explicit Philox4x32(std::uint64_t seed)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

    Block operator()(Block ctr) const {
        std::array<std::uint32_t, 2> k = key_;
        for (int round = 0; round < 10; ++round) {
            ctr = single_round(ctr, k);
            k[0] += 0x9E3779B9u;
            k[1] += 0xBB67AE85u;
        }
        return ctr;
    }

    // Four words for stream (a, b, c) at draw index d.
    Block draw(std::uint64_t a, std::uint64_t b, std::uint32_t d = 0) const {
        return (*this)(Block{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                             static_cast<std::uint32_t>(b), d ^ (static_cast<std::uint32_t>(b >> 32) << 16)});
    }

    static double to_unit(std::uint32_t hi, std::uint32_t lo) {
        // 53-bit uniform in [0, 1)
        const std::uint64_t v = (static_cast<std::uint64_t>(hi) << 21) ^ (lo >> 11);
        return static_cast<double>(v & ((1ULL << 53) - 1)) * 0x1.0p-53;
    }

private:
    static Block single_round(const Block& c, const std::array<std::uint32_t, 2>& k) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(0xD2511F53u) * c[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(0xCD9E8D57u) * c[2];
        return Block{static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<std::uint32_t>(p1),
                     static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<std::uint32_t>(p0)};
    }

    std::array<std::uint32_t, 2> key_;
};

// SplitMix64 finalizer, used to derive child seeds (per trial, per purpose).
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Two uniforms in [0,1) for stream (a, b).
inline std::array<double, 2> uniform_pair(const Philox4x32& g, std::uint64_t a, std::uint64_t b) {
    const auto w = g.draw(a, b);
    return {Philox4x32::to_unit(w[0], w[1]), Philox4x32::to_unit(w[2], w[3])};
}

// Circular complex Gaussian with variance var (E|z|^2 = var), Box-Muller.
inline std::complex<double> complex_gaussian(const Philox4x32& g, std::uint64_t a, std::uint64_t b, double var) {
    const auto u = uniform_pair(g, a, b);
    const double r = std::sqrt(-var * std::log1p(-u[0]));
    const double th = 6.283185307179586476925 * u[1];
    return {r * std::cos(th), r * std::sin(th)};
}

}  // namespace osar
