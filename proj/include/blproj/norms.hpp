#pragma once

#include <blproj/core.hpp>

namespace blproj {

/// Per-column aggregation norm: the norm applied to each column before the
/// column norms are combined.
enum class ColumnNorm { Inf, One, Two };

/// Sum over columns of the largest absolute entry per column.
template <class Derived>
typename Derived::Scalar norm_l1inf(const Eigen::MatrixBase<Derived>& y) {
    return y.cwiseAbs().colwise().maxCoeff().sum();
}

/// Largest column absolute sum; the dual of norm_l1inf.
template <class Derived>
typename Derived::Scalar norm_inf1(const Eigen::MatrixBase<Derived>& y) {
    return y.cwiseAbs().colwise().sum().maxCoeff();
}

/// Sum of all absolute entries.
template <class Derived>
typename Derived::Scalar norm_l11(const Eigen::MatrixBase<Derived>& y) {
    return y.cwiseAbs().sum();
}

/// Sum over columns of the Euclidean column norm.
template <class Derived>
typename Derived::Scalar norm_l12(const Eigen::MatrixBase<Derived>& y) {
    return y.colwise().norm().sum();
}

/// Vector of per-column norms, entry j built from column j alone in a fixed
/// sequential row order.
template <class Derived>
VectorX<typename Derived::Scalar> aggregate_columns(const Eigen::MatrixBase<Derived>& y,
                                                    ColumnNorm kind) {
    switch (kind) {
        case ColumnNorm::Inf: return y.cwiseAbs().colwise().maxCoeff().transpose();
        case ColumnNorm::One: return y.cwiseAbs().colwise().sum().transpose();
        case ColumnNorm::Two: return y.colwise().norm().transpose();
    }
    throw std::invalid_argument("unknown column norm");
}

struct ColumnSparsity {
    Index zero_columns;
    double fraction;
};

/// Counts columns whose largest absolute entry is at most tol. The default
/// tol of zero counts structural zeros only; the projections produce exact
/// zeros by clipping, so no fuzz is needed.
template <class Derived>
ColumnSparsity column_sparsity(const Eigen::MatrixBase<Derived>& x,
                               typename Derived::Scalar tol = 0) {
    if (!(tol >= typename Derived::Scalar(0)))
        throw std::invalid_argument("sparsity tolerance must be nonnegative");
    const Index zeros =
        (x.cwiseAbs().colwise().maxCoeff().array() <= tol).template cast<Index>().sum();
    return {zeros, static_cast<double>(zeros) / static_cast<double>(x.cols())};
}

} // namespace blproj
