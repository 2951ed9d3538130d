#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "osar/grid.hpp"

namespace osar {

inline constexpr std::uint32_t kGridFormatVersion = 1;

// 32-byte header: "OSAR", u32 version, u64 rows, u64 cols, u8 stage, 7 zero bytes;
// then rows*cols little-endian f64 (re, im) pairs in row-major order.
void write_grid(std::ostream& os, const ComplexGrid& g, std::uint8_t stage = 0);
void write_grid(const std::string& path, const ComplexGrid& g, std::uint8_t stage = 0);

struct LoadedGrid {
    ComplexGrid grid;
    std::uint8_t stage = 0;
};

LoadedGrid read_grid(std::istream& is);
LoadedGrid read_grid(const std::string& path);

}  // namespace osar
