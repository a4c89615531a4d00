// blproj: structured-sparsity matrix projections over csv/blpm files.
//
// Subcommands: project, check-identity, bench, gen, sparsity.
// Exit codes: 0 success/pass, 1 check failed, 2 I/O or parse error,
// 3 invalid parameters.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include <blproj/bench.hpp>
#include <blproj/bilevel.hpp>
#include <blproj/generate.hpp>
#include <blproj/io.hpp>
#include <blproj/parallel.hpp>

namespace {

using namespace blproj;

constexpr int kExitCheckFailed = 1;
constexpr int kExitIoError = 2;
constexpr int kExitBadParams = 3;

/// --threads wins, then BLPROJ_THREADS, then the command's own default
/// (1 for benchmarks, hardware count elsewhere).
int resolve_threads(int flag_value, int fallback) {
    if (flag_value >= 1)
        return flag_value;
    if (const char* env = std::getenv("BLPROJ_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1)
            return v;
    }
    return fallback;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw io_error(path + ": cannot open for writing");
    return out;
}

struct ProjectArgs {
    std::string input, output, family_name, report_path;
    double radius = 0;
    int threads = 0;
};

int run_project(const ProjectArgs& args) {
    const BallFamily family = parse_family(args.family_name);
    const MatrixX<double> y = load_matrix(args.input);
    const BallSpec spec{family, args.radius};
    const MatrixX<double> x = project(y, spec, resolve_threads(args.threads, default_thread_count()));
    save_matrix(args.output, x);
    if (!args.report_path.empty()) {
        const ProjectionReport report = make_report(y, x, spec);
        auto out = open_output(args.report_path);
        out << "norm_before=" << format_double(report.norm_before) << '\n'
            << "norm_after=" << format_double(report.norm_after) << '\n'
            << "residual_norm=" << format_double(report.residual_norm) << '\n'
            << "identity_gap=" << format_double(report.identity_gap) << '\n'
            << "zero_columns=" << report.zero_columns << '\n'
            << "frobenius_error=" << format_double(report.frobenius_error) << '\n';
        if (!out)
            throw io_error(args.report_path + ": write failed");
    }
    return 0;
}

struct CheckIdentityArgs {
    std::string input, family_name, grid_spec, norm_choice = "matching";
    int threads = 0;
};

int run_check_identity(const CheckIdentityArgs& args) {
    const BallFamily family = parse_family(args.family_name);
    GapNorm gap_norm;
    if (args.norm_choice == "matching")
        gap_norm = GapNorm::matching;
    else if (args.norm_choice == "l22")
        gap_norm = GapNorm::frobenius;
    else
        throw std::invalid_argument("unknown --norm '" + args.norm_choice +
                                    "' (expected matching or l22)");
    const MatrixX<double> y = load_matrix(args.input);
    const std::vector<double> radii = args.grid_spec.empty()
                                          ? default_radius_grid(matching_norm(family, y))
                                          : parse_radius_grid(args.grid_spec);
    const SweepCurve curve =
        identity_sweep(y, family, radii, gap_norm, resolve_threads(args.threads, default_thread_count()));
    write_identity_csv(std::cout, curve);
    double worst = 0;
    for (const auto& row : curve.rows)
        worst = std::max(worst, std::abs(row.gap));
    const double bound = 1e-10 * std::max(1.0, curve.norm_before);
    std::cerr << "max |gap| = " << format_double(worst) << " (bound " << format_double(bound)
              << ")\n";
    return worst <= bound ? 0 : kExitCheckFailed;
}

struct BenchArgs {
    std::string methods = "bp-l1inf", sizes, out_path;
    int repeats = 5;
    double eta = 1.0;
    std::uint64_t seed = 1;
    int threads = 0;
};

std::vector<std::pair<Index, Index>> parse_sizes(const std::string& spec) {
    std::vector<std::pair<Index, Index>> sizes;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto x = item.find('x');
        long n = 0, m = 0;
        try {
            if (x == std::string::npos)
                throw std::invalid_argument(item);
            n = std::stol(item.substr(0, x));
            m = std::stol(item.substr(x + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad size '" + item + "' (expected NxM)");
        }
        if (n < 1 || m < 1)
            throw std::invalid_argument("sizes must be at least 1x1");
        sizes.emplace_back(n, m);
    }
    if (sizes.empty())
        throw std::invalid_argument("size list must not be empty");
    return sizes;
}

int run_bench(const BenchArgs& args) {
    const auto methods = parse_method_list(args.methods);
    const auto sizes = parse_sizes(args.sizes);
    const int threads = resolve_threads(args.threads, 1);
    std::vector<BenchSample> all;
    for (const BallFamily method : methods) {
        const auto samples = time_projection(method, sizes, args.repeats, args.eta, args.seed, threads);
        std::map<std::pair<Index, Index>, std::vector<double>> by_size;
        for (const auto& s : samples)
            by_size[{s.n, s.m}].push_back(s.wall_seconds);
        for (auto& [size, times] : by_size) {
            std::sort(times.begin(), times.end());
            const double med = times.size() % 2 ? times[times.size() / 2]
                                                : 0.5 * (times[times.size() / 2 - 1] +
                                                         times[times.size() / 2]);
            std::cout << method_name(method) << " " << size.first << "x" << size.second
                      << " median_seconds=" << format_double(med) << '\n';
        }
        if (by_size.size() >= 4) {
            const ComplexityFit fit = fit_complexity(samples);
            std::cout << method_name(method) << " fit: coef_linear=" << format_double(fit.coef_linear)
                      << " r2_linear=" << format_double(fit.r2_linear)
                      << " coef_nlogn=" << format_double(fit.coef_nlogn)
                      << " r2_nlogn=" << format_double(fit.r2_nlogn)
                      << " loglog_slope=" << format_double(fit.loglog_slope);
            if (threads != 1)
                std::cout << " threads=" << threads;
            std::cout << '\n';
        }
        all.insert(all.end(), samples.begin(), samples.end());
    }
    if (!args.out_path.empty()) {
        auto out = open_output(args.out_path);
        write_bench_csv(out, all);
    }
    return 0;
}

struct GenArgs {
    long rows = 0, cols = 0;
    std::string dist = "gaussian", out_path;
    long informative = 0;
    std::uint64_t seed = 1;
};

int run_gen(const GenArgs& args) {
    Distribution dist;
    if (args.dist == "gaussian")
        dist = Distribution::gaussian;
    else if (args.dist == "uniform")
        dist = Distribution::uniform;
    else if (args.dist == "sparse-signal")
        dist = Distribution::sparse_signal;
    else
        throw std::invalid_argument("unknown --dist '" + args.dist +
                                    "' (expected gaussian, uniform or sparse-signal)");
    const MatrixX<double> y = generate_matrix(args.rows, args.cols, dist, args.seed, args.informative);
    save_matrix(args.out_path, y);
    return 0;
}

struct SparsityArgs {
    std::string input, methods = "bp-l1inf,bp-l11,bp-l12,l1inf-exact", grid_spec, out_path;
    int threads = 0;
};

int run_sparsity(const SparsityArgs& args) {
    const auto methods = parse_method_list(args.methods);
    const MatrixX<double> y = load_matrix(args.input);
    const std::vector<double> radii =
        args.grid_spec.empty() ? std::vector<double>{} : parse_radius_grid(args.grid_spec);
    const auto curves =
        sparsity_sweep(y, methods, radii, resolve_threads(args.threads, default_thread_count()));
    std::cout << "method,cum_sparsity\n";
    for (const auto& curve : curves)
        std::cout << curve.method << ',' << format_double(curve.cumulative_zero_fraction()) << '\n';
    if (!args.out_path.empty()) {
        auto out = open_output(args.out_path);
        write_sparsity_csv(out, curves);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"structured-sparsity matrix projections (bi-level l1inf/l11/l12 and exact l1inf)"};
    app.require_subcommand(1);

    ProjectArgs project_args;
    auto* cmd_project = app.add_subcommand("project", "project a matrix file onto a norm ball");
    cmd_project->add_option("--input", project_args.input, "input matrix (csv or blpm)")->required();
    cmd_project->add_option("--output", project_args.output, "output matrix path")->required();
    cmd_project->add_option("--family", project_args.family_name, "l1inf|l11|l12|l1inf-exact")
        ->required();
    cmd_project->add_option("--radius", project_args.radius, "ball radius (>= 0)")->required();
    cmd_project->add_option("--report", project_args.report_path, "write key=value report here");
    cmd_project->add_option("--threads", project_args.threads, "worker threads");

    CheckIdentityArgs check_args;
    auto* cmd_check = app.add_subcommand("check-identity",
                                         "sweep radii and verify the projection norm identity");
    cmd_check->add_option("--input", check_args.input, "input matrix (csv or blpm)")->required();
    cmd_check->add_option("--family", check_args.family_name, "l1inf|l11|l12|l1inf-exact")
        ->required();
    cmd_check->add_option("--radius-grid", check_args.grid_spec,
                          "log:lo:hi:count or explicit ascending list (default: 40 log points)");
    cmd_check->add_option("--norm", check_args.norm_choice,
                          "norm for the triple: matching (default) or l22");
    cmd_check->add_option("--threads", check_args.threads, "worker threads");

    BenchArgs bench_args;
    auto* cmd_bench = app.add_subcommand("bench", "time projections and fit complexity models");
    cmd_bench->add_option("--methods", bench_args.methods, "comma list of method tags");
    cmd_bench->add_option("--sizes", bench_args.sizes, "comma list of NxM sizes")->required();
    cmd_bench->add_option("--repeats", bench_args.repeats, "timed repeats per size (>= 3)");
    cmd_bench->add_option("--eta", bench_args.eta, "projection radius (default 1)");
    cmd_bench->add_option("--seed", bench_args.seed, "rng seed");
    cmd_bench->add_option("--out", bench_args.out_path, "write samples csv here");
    cmd_bench->add_option("--threads", bench_args.threads, "worker threads (default 1 for timing)");

    GenArgs gen_args;
    auto* cmd_gen = app.add_subcommand("gen", "generate a seeded synthetic matrix file");
    cmd_gen->add_option("--rows", gen_args.rows, "row count")->required();
    cmd_gen->add_option("--cols", gen_args.cols, "column count")->required();
    cmd_gen->add_option("--dist", gen_args.dist, "gaussian|uniform|sparse-signal");
    cmd_gen->add_option("--informative", gen_args.informative,
                        "informative columns (sparse-signal only)");
    cmd_gen->add_option("--seed", gen_args.seed, "rng seed");
    cmd_gen->add_option("--out", gen_args.out_path, "output path (csv, or .blpm)")->required();

    SparsityArgs sparsity_args;
    auto* cmd_sparsity =
        app.add_subcommand("sparsity", "sweep radii and report zero-column counts per method");
    cmd_sparsity->add_option("--input", sparsity_args.input, "input matrix (csv or blpm)")
        ->required();
    cmd_sparsity->add_option("--methods", sparsity_args.methods, "comma list of method tags");
    cmd_sparsity->add_option("--radius-grid", sparsity_args.grid_spec,
                             "shared grid; default: per-method 40 log points");
    cmd_sparsity->add_option("--out", sparsity_args.out_path, "write sweep csv here");
    cmd_sparsity->add_option("--threads", sparsity_args.threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitBadParams;
    }

    try {
        if (cmd_project->parsed())
            return run_project(project_args);
        if (cmd_check->parsed())
            return run_check_identity(check_args);
        if (cmd_bench->parsed())
            return run_bench(bench_args);
        if (cmd_gen->parsed())
            return run_gen(gen_args);
        if (cmd_sparsity->parsed())
            return run_sparsity(sparsity_args);
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIoError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadParams;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIoError;
    }
    return 0;
}
