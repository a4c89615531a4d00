#include <blproj/generate.hpp>

#include <cmath>
#include <stdexcept>

#include <blproj/rng.hpp>

namespace blproj {

MatrixX<double> generate_matrix(Index rows, Index cols, Distribution dist, std::uint64_t seed,
                                Index informative) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("matrix dimensions must be at least 1x1");
    if (informative < 0 || informative > cols)
        throw std::invalid_argument("informative column count must lie in [0, cols]");

    MatrixX<double> y(rows, cols);
    Rng rng(seed);
    if (dist == Distribution::uniform) {
        for (Index j = 0; j < cols; ++j)
            for (Index i = 0; i < rows; ++i)
                y(i, j) = rng.uniform(-1.0, 1.0);
        return y;
    }
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i)
            y(i, j) = rng.gaussian();
    if (dist == Distribution::sparse_signal && informative > 0)
        y.leftCols(informative) *= std::sqrt(10.0); // variance x10 over the background
    return y;
}

} // namespace blproj
