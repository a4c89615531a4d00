#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <blproj/bilevel.hpp>

namespace blproj {

struct BenchSample {
    std::string method;
    Index n, m;
    double wall_seconds; // > 0
    int repeat_index;
};

struct ComplexityFit {
    double coef_linear;  // time ~ coef * n*m
    double r2_linear;
    double coef_nlogn;   // time ~ coef * n*m * log(n*m)
    double r2_nlogn;
    double loglog_slope; // slope of log(time) against log(n*m)
};

struct SweepRow {
    double eta;
    double norm_after;
    double residual;
    double gap;
    Index zero_columns;
};

/// One projection method swept over an ascending radius grid.
struct SweepCurve {
    std::string method;
    double norm_before;
    Index cols;
    std::vector<SweepRow> rows;

    double cumulative_zero_fraction() const;
};

/// Norm used to measure the sweep triple; frobenius deliberately mismatches
/// every family and exposes the cross-norm gap.
enum class GapNorm { matching, frobenius };

// ---- name mappings ----------------------------------------------------
// --family values: l1inf | l11 | l12 | l1inf-exact
// method tags (benchmarks, sweeps, CSV): bp-l1inf | bp-l11 | bp-l12 | l1inf-exact

std::string family_name(BallFamily family);
std::string method_name(BallFamily family);
BallFamily parse_family(const std::string& name);
BallFamily parse_method(const std::string& name);
std::vector<BallFamily> parse_method_list(const std::string& csv);

// ---- radius grids ------------------------------------------------------

/// 40 logarithmically spaced radii spanning [norm/1000, norm].
std::vector<double> default_radius_grid(double norm_value, int count = 40);

/// "log:lo:hi:count" or an explicit comma-separated ascending list.
std::vector<double> parse_radius_grid(const std::string& spec);

// ---- operations ----------------------------------------------------------

/// Times `repeats` projections per size on fresh seeded gaussian matrices
/// (one discarded warm-up per size; matrix seeds derive from
/// combine_seed(seed, size_index, repeat)). Only the projection itself is
/// timed, single-threaded unless asked otherwise.
std::vector<BenchSample> time_projection(BallFamily method,
                                         const std::vector<std::pair<Index, Index>>& sizes,
                                         int repeats, double eta, std::uint64_t seed,
                                         int threads = 1);

/// Least-squares fits of per-size median times against n*m and
/// n*m*log(n*m) (both through the origin) plus the log-log slope.
/// Needs at least 4 distinct sizes.
ComplexityFit fit_complexity(const std::vector<BenchSample>& samples);

/// Projects Y at every radius and records the norm triple and gap.
SweepCurve identity_sweep(const MatrixX<double>& y, BallFamily family,
                          const std::vector<double>& radii, GapNorm gap_norm = GapNorm::matching,
                          int threads = 1);

/// Zero-column counts per method and radius. An empty radii list gives each
/// method its own default grid scaled by its matching norm.
std::vector<SweepCurve> sparsity_sweep(const MatrixX<double>& y,
                                       const std::vector<BallFamily>& methods,
                                       const std::vector<double>& radii = {}, int threads = 1);

// ---- CSV emission (headers as documented, LF terminators) ---------------

void write_bench_csv(std::ostream& out, const std::vector<BenchSample>& samples);   // method,n,m,repeat,seconds
void write_identity_csv(std::ostream& out, const SweepCurve& curve);                // eta,norm_after,residual,gap
void write_sparsity_csv(std::ostream& out, const std::vector<SweepCurve>& curves);  // eta,method,zero_columns

} // namespace blproj
