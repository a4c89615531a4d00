#pragma once

#include <cstdint>

#include <blproj/core.hpp>

namespace blproj {

enum class Distribution {
    gaussian,     // entries N(0, 1)
    uniform,      // entries U[-1, 1)
    sparse_signal // gaussian background, first `informative` columns scaled to variance 10
};

/// Deterministic synthetic matrix: entries are drawn column by column from
/// the pinned splitmix64 + Box-Muller stream (rng.hpp), so identical
/// arguments give bit-identical matrices on every platform. sparse_signal
/// with informative = 0 degenerates to the plain gaussian background.
MatrixX<double> generate_matrix(Index rows, Index cols, Distribution dist, std::uint64_t seed,
                                Index informative = 0);

} // namespace blproj
