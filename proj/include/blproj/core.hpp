#pragma once

#include <Eigen/Core>
#include <stdexcept>

namespace blproj {

using Index = Eigen::Index;

template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using VectorX = Eigen::Vector<Scalar, Eigen::Dynamic>;

/// Rejects empty or non-finite matrices. All projection entry points call
/// this; NaN/Inf never propagate past construction boundaries.
template <class Derived>
void require_matrix(const Eigen::MatrixBase<Derived>& y) {
    if (y.rows() < 1 || y.cols() < 1)
        throw std::invalid_argument("matrix must have at least one row and one column");
    if (!y.allFinite())
        throw std::invalid_argument("matrix entries must be finite");
}

template <class Derived>
void require_vector(const Eigen::MatrixBase<Derived>& v) {
    if (v.rows() != 1 && v.cols() != 1)
        throw std::invalid_argument("expected a vector");
    if (v.size() < 1)
        throw std::invalid_argument("vector must have at least one entry");
    if (!v.allFinite())
        throw std::invalid_argument("vector entries must be finite");
}

template <class Scalar>
void require_radius(Scalar eta) {
    if (!(eta >= Scalar(0)))
        throw std::invalid_argument("radius must be nonnegative");
}

} // namespace blproj
