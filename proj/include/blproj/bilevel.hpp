#pragma once

#include <blproj/exact_l1inf.hpp>
#include <blproj/norms.hpp>
#include <blproj/parallel.hpp>
#include <blproj/vector_proj.hpp>

namespace blproj {

enum class BallFamily { l1inf, l11, l12, l1inf_exact };

struct BallSpec {
    BallFamily family;
    double eta;
};

/// The norm whose ball a family projects onto (the exact baseline shares
/// the l1inf norm with its bi-level counterpart).
template <class Derived>
typename Derived::Scalar matching_norm(BallFamily family, const Eigen::MatrixBase<Derived>& y) {
    switch (family) {
        case BallFamily::l1inf:
        case BallFamily::l1inf_exact: return norm_l1inf(y);
        case BallFamily::l11: return norm_l11(y);
        case BallFamily::l12: return norm_l12(y);
    }
    throw std::invalid_argument("unknown ball family");
}

namespace detail {

/// Shared two-stage skeleton: project the per-column norms onto the l1 ball
/// of radius eta, then hand each column its own radius. The first stage
/// derives tau through the canonical sorted scan so that reordering columns
/// reorders the output bit-exactly; the second stage is column-local and
/// may run columns in parallel.
template <class Derived, class ColumnProj>
MatrixX<typename Derived::Scalar> bilevel_project(const Eigen::MatrixBase<Derived>& y,
                                                  typename Derived::Scalar eta, ColumnNorm kind,
                                                  int threads, ColumnProj&& column_proj) {
    using Scalar = typename Derived::Scalar;
    require_matrix(y);
    require_radius(eta);
    VectorX<Scalar> agg = aggregate_columns(y, kind);
    if (agg.sum() <= eta)
        return y;
    if (eta == Scalar(0))
        return MatrixX<Scalar>::Zero(y.rows(), y.cols());
    auto a = abs_values(agg);
    const Scalar tau = l1_threshold_sorted(a, eta).tau;
    VectorX<Scalar> radii = soft_threshold(agg, tau);
    MatrixX<Scalar> x(y.rows(), y.cols());
    parallel_for(y.cols(), threads, [&](Index j) { column_proj(y.col(j), radii[j], x.col(j)); });
    return x;
}

} // namespace detail

/// Bi-level l1inf projection: l1-project the vector of column maxima, then
/// clip each column at its assigned level. Inputs inside the ball come back
/// as exact copies. O(n*m).
template <class Derived>
MatrixX<typename Derived::Scalar> bp_l1inf(const Eigen::MatrixBase<Derived>& y,
                                           typename Derived::Scalar eta, int threads = 1) {
    using Scalar = typename Derived::Scalar;
    return detail::bilevel_project(y, eta, ColumnNorm::Inf, threads,
                                   [](const auto& col, Scalar r, auto out) {
                                       if (r == Scalar(0))
                                           out.setZero();
                                       else
                                           out = col.cwiseMax(-r).cwiseMin(r);
                                   });
}

/// Bi-level l11 projection: l1-project the vector of column absolute sums,
/// then l1-project each column.
template <class Derived>
MatrixX<typename Derived::Scalar> bp_l11(const Eigen::MatrixBase<Derived>& y,
                                         typename Derived::Scalar eta, int threads = 1) {
    using Scalar = typename Derived::Scalar;
    return detail::bilevel_project(y, eta, ColumnNorm::One, threads,
                                   [](const auto& col, Scalar r, auto out) {
                                       out = detail::project_l1_ball_unchecked(col, r);
                                   });
}

/// Bi-level l12 projection: l1-project the vector of column Euclidean
/// norms, then rescale each column onto its l2 ball. Zero columns stay
/// zero.
template <class Derived>
MatrixX<typename Derived::Scalar> bp_l12(const Eigen::MatrixBase<Derived>& y,
                                         typename Derived::Scalar eta, int threads = 1) {
    using Scalar = typename Derived::Scalar;
    return detail::bilevel_project(y, eta, ColumnNorm::Two, threads,
                                   [](const auto& col, Scalar r, auto out) {
                                       if (r == Scalar(0)) {
                                           out.setZero();
                                           return;
                                       }
                                       const Scalar nrm = col.norm();
                                       if (nrm <= r)
                                           out = col;
                                       else
                                           out = col * (r / nrm);
                                   });
}

/// Projects Y according to spec.family, delegating l1inf_exact to the
/// Euclidean baseline solver.
template <class Derived>
MatrixX<typename Derived::Scalar> project(const Eigen::MatrixBase<Derived>& y,
                                          const BallSpec& spec, int threads = 1) {
    using Scalar = typename Derived::Scalar;
    const Scalar eta = static_cast<Scalar>(spec.eta);
    switch (spec.family) {
        case BallFamily::l1inf: return bp_l1inf(y, eta, threads);
        case BallFamily::l11: return bp_l11(y, eta, threads);
        case BallFamily::l12: return bp_l12(y, eta, threads);
        case BallFamily::l1inf_exact:
            return project_l1inf_exact(y, eta, Scalar(1e-12), threads).x;
    }
    throw std::invalid_argument("unknown ball family");
}

struct ProjectionReport {
    double norm_before;
    double norm_after;
    double residual_norm;
    double identity_gap; // norm_before - norm_after - residual_norm, signed
    Index zero_columns;
    double frobenius_error;
};

/// Norm triple and sparsity summary of a projection, measured under the
/// family's matching norm. The gap is kept signed so systematic drift shows
/// up in sweeps.
template <class DerivedY, class DerivedX>
ProjectionReport make_report(const Eigen::MatrixBase<DerivedY>& y,
                             const Eigen::MatrixBase<DerivedX>& x, const BallSpec& spec) {
    if (y.rows() != x.rows() || y.cols() != x.cols())
        throw std::invalid_argument("projection report: shape mismatch");
    const double before = static_cast<double>(matching_norm(spec.family, y));
    const double after = static_cast<double>(matching_norm(spec.family, x));
    const double residual = static_cast<double>(matching_norm(spec.family, y - x));
    return {before,
            after,
            residual,
            before - after - residual,
            column_sparsity(x).zero_columns,
            static_cast<double>((y - x).norm())};
}

} // namespace blproj
