#pragma once

#include <random>

#include "cmiknn/types.hpp"

namespace cmiknn {

/// Per-column rank transform: value x_i becomes r when x_i is the r-th
/// largest in its column, so each output column is a permutation of
/// {1, ..., n}. When noise_amp > 0, noise of scale
/// noise_amp * (column std) is added first to break ties (scale falls
/// back to 1 for a constant column). The rng is consumed column by
/// column, row by row, and only when noise_amp > 0.
///
/// Throws TieError if two values in a column still compare equal.
VariableBlock rank_transform(const VariableBlock& block, double noise_amp, std::mt19937_64& rng);

}  // namespace cmiknn
