#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include <blproj/norms.hpp>
#include <blproj/parallel.hpp>
#include <blproj/rng.hpp>

namespace blproj {

template <class Scalar>
struct ExactSolution {
    MatrixX<Scalar> x;
    VectorX<Scalar> thresholds; // per-column clipping level, sums to eta when active
    Scalar lambda;              // coupling multiplier shared by all active columns
    int iterations;
    Scalar achieved_tolerance; // |sum(thresholds) - eta| at acceptance
};

/// Exact Euclidean projection onto { X : ||X||_1inf <= eta }.
///
/// The optimum clips column j at a level t_j. When the constraint is
/// active there is a single multiplier lambda >= 0 with
///
///   sum_i max(|Y_ij| - t_j, 0) = lambda   for every column with t_j > 0,
///   t_j = 0                               whenever ||y_j||_1 <= lambda,
///   sum_j t_j = eta.
///
/// sum_j t_j(lambda) is continuous and non-increasing, so an outer
/// bisection over lambda in [0, max_j ||y_j||_1] pins it down. Each t_j is
/// read off the column's sorted prefix sums; evaluations across columns
/// are independent. Not a speed rival of dedicated solvers, but a simple
/// and certifiable baseline.
template <class Derived>
ExactSolution<typename Derived::Scalar> project_l1inf_exact(const Eigen::MatrixBase<Derived>& y,
                                                            typename Derived::Scalar eta,
                                                            typename Derived::Scalar tol = 1e-12,
                                                            int threads = 1) {
    using Scalar = typename Derived::Scalar;
    require_matrix(y);
    require_radius(eta);
    if (!(tol > Scalar(0)))
        throw std::invalid_argument("tolerance must be positive");

    const Index n = y.rows(), m = y.cols();
    VectorX<Scalar> colmax = aggregate_columns(y, ColumnNorm::Inf);
    if (colmax.sum() <= eta)
        return {y, colmax, Scalar(0), 0, Scalar(0)};
    if (eta == Scalar(0))
        return {MatrixX<Scalar>::Zero(n, m), VectorX<Scalar>::Zero(m), norm_inf1(y), 0, Scalar(0)};

    // Per column: |y| sorted descending, prefix sums, and the excess
    // sum_i max(|y_i| - t, 0) evaluated at each breakpoint t = sorted[k].
    MatrixX<Scalar> sorted = y.cwiseAbs();
    MatrixX<Scalar> prefix(n, m), excess(n, m);
    VectorX<Scalar> col_l1(m);
    parallel_for(m, threads, [&](Index j) {
        Scalar* col = sorted.col(j).data();
        std::sort(col, col + n, std::greater<>());
        long double run = 0;
        for (Index k = 0; k < n; ++k) {
            run += col[k];
            prefix(k, j) = static_cast<Scalar>(run);
            excess(k, j) = static_cast<Scalar>(run - static_cast<long double>(k + 1) * col[k]);
        }
        col_l1[j] = prefix(n - 1, j);
    });

    auto threshold_at = [&](Scalar lambda, Index j) -> Scalar {
        if (lambda >= col_l1[j])
            return Scalar(0); // column fully removed (zero columns land here too)
        const Scalar* e = excess.col(j).data();
        const Index c = std::upper_bound(e, e + n, lambda) - e; // #entries above t, >= 1
        return std::max((prefix(c - 1, j) - lambda) / static_cast<Scalar>(c), Scalar(0));
    };
    auto threshold_sum = [&](Scalar lambda) -> Scalar {
        long double s = 0;
        for (Index j = 0; j < m; ++j)
            s += threshold_at(lambda, j);
        return static_cast<Scalar>(s);
    };

    // target half the contracted tolerance, leaving headroom for the final
    // norm recomputation by callers
    const Scalar target = Scalar(0.5) * tol * std::max(Scalar(1), eta);
    Scalar lo = 0, hi = col_l1.maxCoeff(); // threshold_sum(lo) > eta >= threshold_sum(hi) = 0
    Scalar lambda = hi, achieved = std::numeric_limits<Scalar>::infinity();
    int iterations = 0;
    for (int it = 1; it <= 200; ++it) {
        const Scalar mid = Scalar(0.5) * (lo + hi);
        const Scalar g = threshold_sum(mid);
        iterations = it;
        if (std::abs(g - eta) <= target) {
            lambda = mid;
            achieved = std::abs(g - eta);
            break;
        }
        (g > eta ? lo : hi) = mid;
    }
    if (!(achieved <= target))
        throw std::runtime_error("exact l1inf projection: bisection stalled (tolerance too tight)");

    VectorX<Scalar> t(m);
    for (Index j = 0; j < m; ++j)
        t[j] = threshold_at(lambda, j);
    MatrixX<Scalar> x(n, m);
    parallel_for(m, threads, [&](Index j) {
        if (t[j] == Scalar(0))
            x.col(j).setZero();
        else
            x.col(j) = y.col(j).cwiseMax(-t[j]).cwiseMin(t[j]);
    });
    return {std::move(x), std::move(t), lambda, iterations, achieved};
}

/// Proximity operator of alpha * ||.||_inf1 via the Moreau decomposition:
/// prox(Y) = Y - P(Y) where P projects onto the l1inf ball of radius alpha.
template <class Derived>
MatrixX<typename Derived::Scalar> prox_inf1(const Eigen::MatrixBase<Derived>& y,
                                            typename Derived::Scalar alpha,
                                            typename Derived::Scalar tol = 1e-12,
                                            int threads = 1) {
    return y - project_l1inf_exact(y, alpha, tol, threads).x;
}

/// Optimality certificate for a claimed projection X of Y: samples random
/// feasible points Z (gaussian directions rescaled into the ball) and
/// reports max <Y - X, Z - X>. A true Euclidean projection keeps this at or
/// below numerical noise; a feasible non-projection shows a strictly
/// positive violation. Every other sample is rescaled onto the boundary,
/// where the linear functional attains its maximum over the ball.
template <class DerivedY, class DerivedX>
double check_variational_inequality(const Eigen::MatrixBase<DerivedY>& y,
                                    const Eigen::MatrixBase<DerivedX>& x, double eta, int trials,
                                    std::uint64_t seed) {
    require_matrix(y);
    require_matrix(x);
    require_radius(eta);
    if (y.rows() != x.rows() || y.cols() != x.cols())
        throw std::invalid_argument("variational inequality check: shape mismatch");
    if (trials < 1)
        throw std::invalid_argument("trials must be at least 1");
    if (norm_l1inf(x) > eta + 1e-9)
        throw std::invalid_argument("variational inequality check: X lies outside the ball");

    const Index n = y.rows(), m = y.cols();
    const MatrixX<double> d = (y - x).template cast<double>();
    const double dx = (d.cwiseProduct(x.template cast<double>())).sum();
    Rng rng(seed);
    MatrixX<double> z(n, m);
    double worst = -std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < trials; ++trial) {
        for (Index j = 0; j < m; ++j)
            for (Index i = 0; i < n; ++i)
                z(i, j) = rng.gaussian();
        const double fraction = trial % 2 ? rng.uniform() : 1.0;
        const double nz = norm_l1inf(z);
        const double scale = nz > 0 ? eta * fraction / nz : 0.0;
        worst = std::max(worst, scale * d.cwiseProduct(z).sum() - dx);
    }
    return worst;
}

} // namespace blproj
