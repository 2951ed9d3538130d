#pragma once

#include <vector>

#include "osar/grid.hpp"

namespace osar {

enum class FftDir { forward, inverse };  // forward: exp(-j...), inverse: exp(+j...)

// Unitary (1/sqrt(L)) transforms. Plans are cached and thread-safe to use.
void dft(std::vector<cplx>& x, FftDir dir);
// Transform every column (length rows).
void dft_columns(ComplexGrid& g, FftDir dir);
// Transform every row (length cols).
void dft_rows(ComplexGrid& g, FftDir dir);

}  // namespace osar
