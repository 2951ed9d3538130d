#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "osar/constellation.hpp"
#include "osar/errors.hpp"
#include "osar/presets.hpp"
#include "osar/radar_config.hpp"
#include "osar/rng.hpp"
#include "osar/symbol_grid.hpp"

using namespace osar;

namespace {

// Independent enumeration oracle: build the square grid from scratch.
std::vector<cplx> square_qam(int order) {
    const int k = static_cast<int>(std::lround(std::sqrt(order)));
    std::vector<cplx> pts;
    double p = 0.0;
    for (int i = -(k - 1); i <= k - 1; i += 2)
        for (int q = -(k - 1); q <= k - 1; q += 2) {
            pts.emplace_back(i, q);
            p += i * i + q * q;
        }
    p /= static_cast<double>(pts.size());
    for (auto& v : pts) v /= std::sqrt(p);
    return pts;
}

}  // namespace

TEST_CASE("reference system timing") {
    const RadarConfig cfg = presets::table1();
    CHECK(cfg.symbol_duration() == doctest::Approx(1.0 / 30e3).epsilon(1e-12));
    CHECK(cfg.total_symbol() == doctest::Approx(1.0 / 24e3).epsilon(1e-12));
    CHECK(cfg.n_symbols() == 48000);
    CHECK(cfg.prf() == doctest::Approx(24000.0));
    CHECK(cfg.range_pitch() == doctest::Approx(1.5251956552706554).epsilon(1e-12));
    CHECK(static_cast<double>(cfg.n_subcarriers) * cfg.subcarrier_spacing_hz <= cfg.bandwidth_hz);
    CHECK_NOTHROW(cfg.validate());

    const RadarConfig dec = presets::table1_decimated();
    CHECK(dec.imaging_symbols() == 4800);
    CHECK(dec.prf() == doctest::Approx(2400.0));

    const RadarConfig lite = presets::table1_lite();
    CHECK(lite.imaging_symbols() == 1024);
    CHECK(lite.aperture_time_s == doctest::Approx(2.0053).epsilon(1e-4));
}

TEST_CASE("radar config validation") {
    RadarConfig c;
    c.n_subcarriers = 4000;  // 120 MHz > 100 MHz
    CHECK_THROWS_AS(c.validate(), InvalidParameter);
    c = RadarConfig{};
    c.azimuth_downsample = 0;
    CHECK_THROWS_AS(c.validate(), InvalidParameter);
}

TEST_CASE("qam alphabets") {
    for (int order : {4, 16, 64, 256}) {
        const Constellation c = make_qam(order);
        const auto ref = square_qam(order);
        REQUIRE(c.points.size() == ref.size());
        double p2 = 0.0, p4 = 0.0, inv = 0.0;
        for (const auto& s : ref) {
            p2 += std::norm(s);
            p4 += std::norm(s) * std::norm(s);
            inv += 1.0 / std::norm(s);
        }
        const double k = static_cast<double>(ref.size());
        CHECK(c.mean_power == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(p2 / k == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(c.fourth_moment == doctest::Approx(p4 / k).epsilon(1e-12));
        CHECK(c.inverse_power == doctest::Approx(inv / k).epsilon(1e-12));
        for (const auto& s : c.points) CHECK(std::abs(s) > 0.0);
    }
    const Constellation q = make_qam(4);
    for (const auto& s : q.points) CHECK(std::abs(s) == doctest::Approx(1.0));
    CHECK(q.fourth_moment == doctest::Approx(1.0));
    CHECK(q.inverse_power == doctest::Approx(1.0));
    // frozen enumeration values
    CHECK(make_qam(256).fourth_moment == doctest::Approx(1.3952941176470584).epsilon(1e-12));
    CHECK(make_qam(256).inverse_power == doctest::Approx(3.43713004025605).epsilon(1e-12));
    CHECK(make_qam(16).inverse_power == doctest::Approx(1.8888888888888886).epsilon(1e-12));

    CHECK_THROWS_AS(make_qam(3), InvalidParameter);
    CHECK_THROWS_AS(make_qam(32), InvalidParameter);
    CHECK(constellation_by_name("qam64").points.size() == 64);
    CHECK(constellation_by_name("qpsk").points.size() == 4);
    CHECK_THROWS_AS(constellation_by_name("8psk"), InvalidParameter);
}

TEST_CASE("chi statistics") {
    const Constellation q256 = make_qam(256);
    const ChiStats rf = chi_stats(q256, FilterSpec::rf());
    CHECK(rf.mean == doctest::Approx(1.0));
    CHECK(rf.var == doctest::Approx(0.0));
    CHECK(rf.mean_g2 == doctest::Approx(q256.inverse_power));

    const ChiStats mfq = chi_stats(make_qam(4), FilterSpec::mf());
    CHECK(mfq.mean == doctest::Approx(1.0));
    CHECK(mfq.var == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(mfq.mean_g2 == doctest::Approx(1.0));

    const ChiStats mf = chi_stats(q256, FilterSpec::mf());
    CHECK(mf.mean == doctest::Approx(1.0));
    CHECK(mf.var == doctest::Approx(q256.fourth_moment - 1.0).epsilon(1e-12));

    const ChiStats wf = chi_stats(q256, FilterSpec::wf(10.0));
    CHECK(wf.mean == doctest::Approx(0.8442233111079789).epsilon(1e-12));
    CHECK(wf.var == doctest::Approx(0.02521374993531888).epsilon(1e-10));
    CHECK(wf.mean_g2 == doctest::Approx(1.0629656215454073).epsilon(1e-12));

    // Monte-Carlo agreement on a generated grid
    const SymbolGrid g = gen_symbol_grid(256, 256, q256, 99);
    const FilterSpec f = FilterSpec::wf(10.0);
    double m1 = 0.0, g2 = 0.0;
    for (const auto& s : g.data.data) {
        m1 += f.chi(s);
        g2 += std::norm(f.gain(s));
    }
    const double n = static_cast<double>(g.data.size());
    CHECK(m1 / n == doctest::Approx(wf.mean).epsilon(0.01));
    CHECK(g2 / n == doctest::Approx(wf.mean_g2).epsilon(0.01));
}

TEST_CASE("chi properties over alphabets and SNR") {
    for (int order : {4, 16, 64, 256}) {
        const Constellation c = make_qam(order);
        for (double snr_db = -30.0; snr_db <= 40.0; snr_db += 5.0) {
            const FilterSpec wf = FilterSpec::wf(std::pow(10.0, snr_db / 10.0));
            for (const auto& s : c.points) {
                const cplx chi = s * wf.gain(s);
                CHECK(std::abs(chi.imag()) < 1e-14);
                CHECK(chi.real() >= 0.0);
                CHECK(wf.chi(s) == doctest::Approx(chi.real()));
            }
            CHECK(chi_stats(c, wf).mean <= 1.0);
        }
        CHECK(chi_stats(c, FilterSpec::rf()).mean_g2 >= 1.0);
        // WF -> RF at high SNR
        const ChiStats hi = chi_stats(c, FilterSpec::wf(1e9));
        const ChiStats rf = chi_stats(c, FilterSpec::rf());
        CHECK(hi.mean == doctest::Approx(rf.mean).epsilon(1e-6));
        CHECK(hi.mean_g2 == doctest::Approx(rf.mean_g2).epsilon(1e-6));
        // WF -> SNR * MF at low SNR
        const double snr = 1e-9;
        const ChiStats lo = chi_stats(c, FilterSpec::wf(snr));
        const ChiStats mf = chi_stats(c, FilterSpec::mf());
        CHECK(lo.mean / snr == doctest::Approx(mf.mean).epsilon(1e-6));
        CHECK(lo.var / (snr * snr) == doctest::Approx(mf.var).epsilon(1e-5));
        CHECK(lo.mean_g2 / (snr * snr) == doctest::Approx(mf.mean_g2).epsilon(1e-6));
    }
    CHECK_THROWS_AS(FilterSpec::wf(0.0).validate(), ConfigError);
    CHECK(filter_from_name("wf") == FilterKind::wf);
    CHECK(filter_name(FilterKind::rf) == "rf");
    CHECK_THROWS_AS(filter_from_name("zf"), InvalidParameter);
}

TEST_CASE("symbol grids") {
    const Constellation c = make_qam(256);
    const SymbolGrid a = gen_symbol_grid(256, 256, c, 1234);
    const SymbolGrid b = gen_symbol_grid(256, 256, c, 1234);
    CHECK(a.data.data == b.data.data);
    const SymbolGrid other = gen_symbol_grid(256, 256, c, 1235);
    CHECK(a.data.data != other.data.data);

    double p = 0.0;
    std::set<std::pair<double, double>> alphabet;
    for (const auto& s : c.points) alphabet.insert({s.real(), s.imag()});
    bool all_in = true;
    for (const auto& s : a.data.data) {
        p += std::norm(s);
        all_in = all_in && alphabet.count({s.real(), s.imag()}) == 1;
    }
    CHECK(all_in);
    CHECK(p / static_cast<double>(a.data.size()) == doctest::Approx(1.0).epsilon(0.01));

    // a sub-block of a larger grid keeps its values: per-(n, m) streams
    const SymbolGrid big = gen_symbol_grid(300, 280, c, 1234);
    bool same = true;
    for (std::size_t n = 0; n < 256; ++n)
        for (std::size_t m = 0; m < 256; ++m) same = same && big.data(n, m) == a.data(n, m);
    CHECK(same);

    std::vector<std::uint8_t> mask(16 * 16, 0);
    for (std::size_t i = 0; i < mask.size(); i += 3) mask[i] = 1;
    const SymbolGrid masked = gen_symbol_grid(16, 16, c, 5, &mask);
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) CHECK(std::abs(masked.data.data[i]) > 0.0);
        else CHECK(masked.data.data[i] == cplx(0.0, 0.0));
    }
    std::vector<std::uint8_t> wrong(10, 1);
    CHECK_THROWS_AS(gen_symbol_grid(16, 16, c, 5, &wrong), InvalidParameter);
}

TEST_CASE("srs pilot masks") {
    const RadarConfig cfg = presets::table1();
    SrsConfig s20;
    const SrsMask m20 = srs_mask(cfg, s20);
    CHECK(m20.pilot_prf_hz == doctest::Approx(85.7).epsilon(0.001));
    CHECK(m20.active_tones() == 72);
    CHECK(m20.active_symbols() == (48000 + 279) / 280);
    for (std::size_t n = 0; n < cfg.n_subcarriers; ++n) {
        const bool expect = n >= 1667 && n <= 1954 && (n - 1667) % 4 == 0;
        if (static_cast<bool>(m20.subcarriers[n]) != expect) FAIL("subcarrier " << n);
    }
    for (std::size_t m = 0; m < 600; ++m) CHECK(static_cast<bool>(m20.symbols[m]) == (m % 280 == 0));

    SrsConfig s2;
    s2.periodicity_slots = 2;
    CHECK(srs_mask(cfg, s2).pilot_prf_hz == doctest::Approx(857.142857142857).epsilon(1e-9));

    const RadarConfig pc = pilot_imaging_config(cfg, s20);
    CHECK(pc.imaging_symbols() == 171);
    CHECK(pc.prf() == doctest::Approx(m20.pilot_prf_hz));
    const auto dense = pilot_grid_mask(pc, s20);
    CHECK(dense.size() == cfg.n_subcarriers * 171);
    CHECK(std::count(dense.begin(), dense.end(), 1) == 72 * 171);

    SrsConfig late;
    late.start_subcarrier = 3000;
    CHECK_THROWS(srs_mask(cfg, late));
    SrsConfig zero;
    zero.periodicity_slots = 0;
    CHECK_THROWS(srs_mask(cfg, zero));
}

TEST_CASE("counter rng") {
    const Philox4x32 a(42), b(42), c(43);
    CHECK(a.draw(3, 4) == b.draw(3, 4));
    CHECK(a.draw(3, 4) != c.draw(3, 4));
    CHECK(a.draw(3, 4) != a.draw(4, 3));
    // complex Gaussian variance over many independent counters
    double e = 0.0, re = 0.0;
    const std::size_t n = 200000;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx z = complex_gaussian(a, i, 7, 2.0);
        e += std::norm(z);
        re += z.real();
    }
    CHECK(e / static_cast<double>(n) == doctest::Approx(2.0).epsilon(0.01));
    CHECK(std::abs(re / static_cast<double>(n)) < 0.01);
    CHECK(mix_seed(1, 2) != mix_seed(2, 1));
}
