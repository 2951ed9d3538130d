#include "osar/grid_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "osar/errors.hpp"

namespace osar {

namespace {

template <typename T>
void put_le(std::ostream& os, T v) {
    std::array<char, sizeof(T)> b{};
    for (std::size_t i = 0; i < sizeof(T); ++i) b[i] = static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff);
    os.write(b.data(), b.size());
}

template <typename T>
T get_le(const unsigned char* p) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return static_cast<T>(v);
}

}  // namespace

void write_grid(std::ostream& os, const ComplexGrid& g, std::uint8_t stage) {
    os.write("OSAR", 4);
    put_le<std::uint32_t>(os, kGridFormatVersion);
    put_le<std::uint64_t>(os, g.rows);
    put_le<std::uint64_t>(os, g.cols);
    put_le<std::uint8_t>(os, stage);
    const char pad[7] = {};
    os.write(pad, sizeof pad);
    for (const auto& v : g.data) {
        put_le<std::uint64_t>(os, std::bit_cast<std::uint64_t>(v.real()));
        put_le<std::uint64_t>(os, std::bit_cast<std::uint64_t>(v.imag()));
    }
    if (!os) throw std::runtime_error("grid write failed");
}

void write_grid(const std::string& path, const ComplexGrid& g, std::uint8_t stage) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    write_grid(os, g, stage);
}

LoadedGrid read_grid(std::istream& is) {
    unsigned char h[32];
    is.read(reinterpret_cast<char*>(h), sizeof h);
    if (is.gcount() != static_cast<std::streamsize>(sizeof h)) throw ParseError(static_cast<std::size_t>(is.gcount()), "truncated grid header");
    if (std::memcmp(h, "OSAR", 4) != 0) throw ParseError(0, "bad grid magic");
    if (get_le<std::uint32_t>(h + 4) != kGridFormatVersion) throw ParseError(4, "unsupported grid format version");
    LoadedGrid out;
    const auto rows = get_le<std::uint64_t>(h + 8);
    const auto cols = get_le<std::uint64_t>(h + 16);
    out.stage = h[24];
    out.grid = ComplexGrid(rows, cols);
    std::array<unsigned char, 16> b{};
    for (std::size_t i = 0; i < out.grid.size(); ++i) {
        is.read(reinterpret_cast<char*>(b.data()), b.size());
        if (!is) throw ParseError(32 + 16 * i, "truncated grid payload");
        out.grid.data[i] = {std::bit_cast<double>(get_le<std::uint64_t>(b.data())),
                            std::bit_cast<double>(get_le<std::uint64_t>(b.data() + 8))};
    }
    return out;
}

LoadedGrid read_grid(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    return read_grid(is);
}

}  // namespace osar
