#include <blproj/bench.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include <blproj/generate.hpp>
#include <blproj/io.hpp>
#include <blproj/rng.hpp>

namespace blproj {

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

void require_grid(const std::vector<double>& radii) {
    if (radii.empty())
        throw std::invalid_argument("radius grid must not be empty");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] >= 0) || !std::isfinite(radii[i]))
            throw std::invalid_argument("radii must be finite and nonnegative");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw std::invalid_argument("radii must be strictly ascending");
    }
}

SweepCurve sweep(const MatrixX<double>& y, BallFamily family, const std::vector<double>& radii,
                 GapNorm gap_norm, int threads) {
    require_grid(radii);
    const bool frob = gap_norm == GapNorm::frobenius;
    SweepCurve curve{method_name(family),
                     frob ? y.norm() : matching_norm(family, y), y.cols(), {}};
    curve.rows.reserve(radii.size());
    for (const double eta : radii) {
        const MatrixX<double> x = project(y, {family, eta}, threads);
        const double after = frob ? x.norm() : matching_norm(family, x);
        const double residual = frob ? (y - x).norm() : matching_norm(family, y - x);
        curve.rows.push_back({eta, after, residual, curve.norm_before - after - residual,
                              column_sparsity(x).zero_columns});
    }
    return curve;
}

} // namespace

double SweepCurve::cumulative_zero_fraction() const {
    double total = 0;
    for (const auto& row : rows)
        total += static_cast<double>(row.zero_columns) / static_cast<double>(cols);
    return total;
}

std::string family_name(BallFamily family) {
    switch (family) {
        case BallFamily::l1inf: return "l1inf";
        case BallFamily::l11: return "l11";
        case BallFamily::l12: return "l12";
        case BallFamily::l1inf_exact: return "l1inf-exact";
    }
    throw std::invalid_argument("unknown ball family");
}

std::string method_name(BallFamily family) {
    switch (family) {
        case BallFamily::l1inf: return "bp-l1inf";
        case BallFamily::l11: return "bp-l11";
        case BallFamily::l12: return "bp-l12";
        case BallFamily::l1inf_exact: return "l1inf-exact";
    }
    throw std::invalid_argument("unknown ball family");
}

BallFamily parse_family(const std::string& name) {
    if (name == "l1inf") return BallFamily::l1inf;
    if (name == "l11") return BallFamily::l11;
    if (name == "l12") return BallFamily::l12;
    if (name == "l1inf-exact") return BallFamily::l1inf_exact;
    throw std::invalid_argument("unknown family '" + name +
                                "' (expected l1inf, l11, l12 or l1inf-exact)");
}

BallFamily parse_method(const std::string& name) {
    if (name == "bp-l1inf") return BallFamily::l1inf;
    if (name == "bp-l11") return BallFamily::l11;
    if (name == "bp-l12") return BallFamily::l12;
    if (name == "l1inf-exact") return BallFamily::l1inf_exact;
    throw std::invalid_argument("unknown method '" + name +
                                "' (expected bp-l1inf, bp-l11, bp-l12 or l1inf-exact)");
}

std::vector<BallFamily> parse_method_list(const std::string& csv) {
    std::vector<BallFamily> methods;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        methods.push_back(parse_method(item));
    if (methods.empty())
        throw std::invalid_argument("method list must not be empty");
    return methods;
}

std::vector<double> default_radius_grid(double norm_value, int count) {
    if (!(norm_value >= 0) || !std::isfinite(norm_value))
        throw std::invalid_argument("norm must be finite and nonnegative");
    if (count < 2)
        throw std::invalid_argument("grid needs at least 2 points");
    if (norm_value == 0)
        return {0.0}; // zero matrix: only the origin is meaningful
    std::vector<double> radii(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        radii[static_cast<std::size_t>(i)] =
            norm_value * std::pow(10.0, -3.0 * (count - 1 - i) / (count - 1));
    return radii;
}

std::vector<double> parse_radius_grid(const std::string& spec) {
    std::vector<double> radii;
    if (spec.rfind("log:", 0) == 0) {
        double lo = 0, hi = 0;
        int count = 0;
        char colon1 = 0, colon2 = 0;
        std::istringstream ss(spec.substr(4));
        if (!(ss >> lo >> colon1 >> hi >> colon2 >> count) || colon1 != ':' || colon2 != ':' ||
            !ss.eof())
            throw std::invalid_argument("bad radius grid '" + spec +
                                        "' (expected log:lo:hi:count)");
        if (!(lo > 0) || !(hi >= lo) || count < 1)
            throw std::invalid_argument("bad radius grid bounds in '" + spec + "'");
        if (count == 1 || hi == lo) {
            radii.push_back(lo);
        } else {
            for (int i = 0; i < count; ++i)
                radii.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
        }
    } else {
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ',')) {
            std::size_t used = 0;
            double value = 0;
            try {
                value = std::stod(item, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != item.size() || item.empty())
                throw std::invalid_argument("bad radius '" + item + "'");
            radii.push_back(value);
        }
    }
    require_grid(radii);
    return radii;
}

std::vector<BenchSample> time_projection(BallFamily method,
                                         const std::vector<std::pair<Index, Index>>& sizes,
                                         int repeats, double eta, std::uint64_t seed,
                                         int threads) {
    if (repeats < 3)
        throw std::invalid_argument("repeats must be at least 3");
    if (sizes.empty())
        throw std::invalid_argument("size list must not be empty");
    require_radius(eta);
    using clock = std::chrono::steady_clock;
    std::vector<BenchSample> samples;
    samples.reserve(sizes.size() * static_cast<std::size_t>(repeats));
    const std::string tag = method_name(method);
    for (std::size_t s = 0; s < sizes.size(); ++s) {
        const auto [n, m] = sizes[s];
        // repeat 0 is the warm-up, never recorded
        for (int r = 0; r <= repeats; ++r) {
            const MatrixX<double> y =
                generate_matrix(n, m, Distribution::gaussian, combine_seed(seed, s, r));
            const auto t0 = clock::now();
            const MatrixX<double> x = project(y, {method, eta}, threads);
            const auto t1 = clock::now();
            if (r == 0)
                continue;
            const double secs =
                std::max(std::chrono::duration<double>(t1 - t0).count(), 1e-9);
            samples.push_back({tag, n, m, secs, r - 1});
        }
    }
    return samples;
}

ComplexityFit fit_complexity(const std::vector<BenchSample>& samples) {
    std::map<std::pair<Index, Index>, std::vector<double>> by_size;
    for (const auto& sample : samples)
        by_size[{sample.n, sample.m}].push_back(sample.wall_seconds);
    if (by_size.size() < 4)
        throw std::invalid_argument("complexity fit needs at least 4 distinct sizes");

    std::vector<double> nm, t;
    for (auto& [size, times] : by_size) {
        nm.push_back(static_cast<double>(size.first) * static_cast<double>(size.second));
        t.push_back(median(std::move(times)));
    }
    const std::size_t k = nm.size();

    auto origin_fit = [&](auto&& model) {
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < k; ++i) {
            const double x = model(nm[i]);
            sxy += x * t[i];
            sxx += x * x;
        }
        return sxy / sxx;
    };
    auto r2 = [&](auto&& model, double coef) {
        double mean = 0;
        for (const double ti : t)
            mean += ti;
        mean /= static_cast<double>(k);
        double ss_res = 0, ss_tot = 0;
        for (std::size_t i = 0; i < k; ++i) {
            ss_res += (t[i] - coef * model(nm[i])) * (t[i] - coef * model(nm[i]));
            ss_tot += (t[i] - mean) * (t[i] - mean);
        }
        if (ss_tot == 0)
            return ss_res == 0 ? 1.0 : -std::numeric_limits<double>::infinity();
        return 1.0 - ss_res / ss_tot;
    };
    auto linear = [](double x) { return x; };
    auto nlogn = [](double x) { return x * std::log(x); };

    double mx = 0, my = 0;
    for (std::size_t i = 0; i < k; ++i) {
        mx += std::log(nm[i]);
        my += std::log(t[i]);
    }
    mx /= static_cast<double>(k);
    my /= static_cast<double>(k);
    double cov = 0, var = 0;
    for (std::size_t i = 0; i < k; ++i) {
        cov += (std::log(nm[i]) - mx) * (std::log(t[i]) - my);
        var += (std::log(nm[i]) - mx) * (std::log(nm[i]) - mx);
    }
    if (var == 0)
        throw std::invalid_argument("complexity fit needs distinct n*m values");

    ComplexityFit fit;
    fit.coef_linear = origin_fit(linear);
    fit.r2_linear = r2(linear, fit.coef_linear);
    fit.coef_nlogn = origin_fit(nlogn);
    fit.r2_nlogn = r2(nlogn, fit.coef_nlogn);
    fit.loglog_slope = cov / var;
    return fit;
}

SweepCurve identity_sweep(const MatrixX<double>& y, BallFamily family,
                          const std::vector<double>& radii, GapNorm gap_norm, int threads) {
    return sweep(y, family, radii, gap_norm, threads);
}

std::vector<SweepCurve> sparsity_sweep(const MatrixX<double>& y,
                                       const std::vector<BallFamily>& methods,
                                       const std::vector<double>& radii, int threads) {
    if (methods.empty())
        throw std::invalid_argument("method list must not be empty");
    std::vector<SweepCurve> curves;
    curves.reserve(methods.size());
    for (const BallFamily method : methods) {
        const std::vector<double> grid =
            radii.empty() ? default_radius_grid(matching_norm(method, y)) : radii;
        curves.push_back(sweep(y, method, grid, GapNorm::matching, threads));
    }
    return curves;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchSample>& samples) {
    out << "method,n,m,repeat,seconds\n";
    for (const auto& s : samples)
        out << s.method << ',' << s.n << ',' << s.m << ',' << s.repeat_index << ','
            << format_double(s.wall_seconds) << '\n';
}

void write_identity_csv(std::ostream& out, const SweepCurve& curve) {
    out << "eta,norm_after,residual,gap\n";
    for (const auto& row : curve.rows)
        out << format_double(row.eta) << ',' << format_double(row.norm_after) << ','
            << format_double(row.residual) << ',' << format_double(row.gap) << '\n';
}

void write_sparsity_csv(std::ostream& out, const std::vector<SweepCurve>& curves) {
    out << "eta,method,zero_columns\n";
    for (const auto& curve : curves)
        for (const auto& row : curve.rows)
            out << format_double(row.eta) << ',' << curve.method << ',' << row.zero_columns
                << '\n';
}

} // namespace blproj
