// Acceptance suite: runs every release criterion end to end and prints one
// pass/fail line per criterion. Usage: acceptance_tests <path-to-blproj-cli>.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include <blproj/bench.hpp>
#include <blproj/bilevel.hpp>
#include <blproj/generate.hpp>
#include <blproj/io.hpp>

#include "test_support.hpp"

using namespace blproj;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

std::string g_cli;
std::string g_dir;
int g_checks = 0;
std::string g_first_failure;

void expect(bool ok, const std::string& what) {
    ++g_checks;
    if (!ok && g_first_failure.empty())
        g_first_failure = what;
}

MatrixXd columns2(double a, double b, double c, double d) {
    MatrixXd y(2, 2); // columns (a,b) and (c,d)
    y << a, c, b, d;
    return y;
}

// ---- criterion 1: norm identities for all four projections --------------

bool criterion_identity() {
    Rng rng(101);
    const BallFamily families[] = {BallFamily::l1inf, BallFamily::l11, BallFamily::l12,
                                   BallFamily::l1inf_exact};
    for (int t = 0; t < 100; ++t) {
        const Index n = 1 + static_cast<Index>(rng.uniform() * 500);
        const Index m = 1 + static_cast<Index>(rng.uniform() * 500);
        const MatrixXd y = testutil::random_matrix(rng, n, m, rng.uniform(0.2, 4.0));
        for (const BallFamily family : families) {
            const double before = matching_norm(family, y);
            for (int k = 0; k < 20; ++k) {
                const double eta = rng.uniform(0.0, 1.05) * before;
                const MatrixXd x = project(y, {family, eta});
                const double gap = before - matching_norm(family, x) -
                                   matching_norm(family, (y - x).eval());
                expect(std::abs(gap) <= 1e-10 * std::max(1.0, before),
                       "identity gap for " + method_name(family));
            }
        }
    }
    return g_first_failure.empty();
}

// ---- criterion 2: worked-example goldens ---------------------------------

bool criterion_goldens() {
    MatrixXd y1(2, 2), x1(2, 2);
    y1 << 3, 1, 2, 2; // columns (3,2),(1,2)
    x1 << 2, 1, 2, 1;
    expect((bp_l1inf(y1, 3.0) - x1).cwiseAbs().maxCoeff() <= 1e-12, "bp_l1inf golden");

    MatrixXd y2(2, 2), x2(2, 2);
    y2 << 3, 2, 1, 0; // columns (3,1),(2,0)
    x2 << 2.25, 0.5, 0.25, 0;
    expect((bp_l11(y2, 3.0) - x2).cwiseAbs().maxCoeff() <= 1e-12, "bp_l11 golden");

    MatrixXd y3(2, 2), x3(2, 2);
    y3 << 3, 0, 4, 2; // columns (3,4),(0,2)
    x3 << 1.8, 0, 2.4, 0;
    expect((bp_l12(y3, 3.0) - x3).cwiseAbs().maxCoeff() <= 1e-12, "bp_l12 golden");

    const MatrixXd y4 = columns2(2, 2, 2, 0);
    const auto sol = project_l1inf_exact(y4, 2.0);
    MatrixXd x4(2, 2);
    x4 << 4.0 / 3, 2.0 / 3, 4.0 / 3, 0;
    expect((sol.x - x4).cwiseAbs().maxCoeff() <= 1e-12, "exact projection golden");
    expect(std::abs(sol.thresholds[0] - 4.0 / 3) <= 1e-12 &&
               std::abs(sol.thresholds[1] - 2.0 / 3) <= 1e-12,
           "exact thresholds golden");
    return g_first_failure.empty();
}

// ---- criterion 3: grid-search oracle + variational inequality ------------

bool criterion_exactness() {
    Rng rng(103);
    for (int t = 0; t < 200; ++t) {
        MatrixXd y(3, 2);
        for (Index j = 0; j < 2; ++j)
            for (Index i = 0; i < 3; ++i)
                y(i, j) = rng.uniform(-1.0, 1.0);
        const double eta = rng.uniform(0.2, 0.8) * norm_l1inf(y);
        if (!(eta > 0))
            continue;
        const MatrixXd xe = project_l1inf_exact(y, eta).x;
        const MatrixXd xg = oracle::exact_l1inf_grid(y, eta, 1e-3);
        expect((xe - xg).cwiseAbs().maxCoeff() <= 2e-3, "grid oracle agreement");
        expect(check_variational_inequality(y, xe, eta, 10000, 1000 + t) <= 1e-9,
               "variational inequality bound");
    }
    return g_first_failure.empty();
}

// ---- criterion 4: optimality dominance -----------------------------------

bool criterion_dominance() {
    Rng rng(104);
    for (int t = 0; t < 1000; ++t) {
        const Index n = 1 + static_cast<Index>(rng.uniform() * 30);
        const Index m = 1 + static_cast<Index>(rng.uniform() * 10);
        const MatrixXd y = testutil::random_matrix(rng, n, m, rng.uniform(0.2, 3.0));
        const double eta = rng.uniform(0.05, 0.95) * norm_l1inf(y);
        const double de = (y - project_l1inf_exact(y, eta).x).norm();
        const double db = (y - bp_l1inf(y, eta)).norm();
        expect(de <= db + 1e-9, "exact dominates bp in frobenius error");
    }
    const MatrixXd y = columns2(2, 2, 2, 0);
    const double de = (y - project_l1inf_exact(y, 2.0).x).norm();
    const double db = (y - bp_l1inf(y, 2.0)).norm();
    expect(de < db - 0.05, "strict dominance on the worked instance");
    return g_first_failure.empty();
}

// ---- criterion 5: linear complexity --------------------------------------

bool criterion_complexity() {
    const std::vector<std::pair<Index, Index>> sizes = {
        {1000, 1000}, {1000, 2000}, {1000, 4000}, {1000, 8000}, {2000, 8000}};
    const auto samples = time_projection(BallFamily::l1inf, sizes, 5, 1.0, 105);
    const auto fit = fit_complexity(samples);
    expect(fit.loglog_slope >= 0.85 && fit.loglog_slope <= 1.15, "loglog slope in [0.85, 1.15]");
    expect(fit.r2_linear >= 0.98, "linear fit r2 >= 0.98");

    auto median_at = [](const std::vector<BenchSample>& s) {
        std::vector<double> t;
        for (const auto& sample : s)
            if (sample.n == 1000 && sample.m == 1000)
                t.push_back(sample.wall_seconds);
        std::sort(t.begin(), t.end());
        return t[t.size() / 2];
    };
    const auto exact_samples =
        time_projection(BallFamily::l1inf_exact, {{1000, 1000}}, 5, 1.0, 105);
    const double bp_med = median_at(samples);
    const double exact_med = median_at(exact_samples);
    expect(bp_med < exact_med, "bp median below exact median at 1000x1000");
    std::cout << "         slope=" << fit.loglog_slope << " r2_linear=" << fit.r2_linear
              << " bp_median=" << bp_med << "s exact_median=" << exact_med << "s\n";
    return g_first_failure.empty();
}

// ---- criterion 6: pivot vs sort cross-validation --------------------------

bool criterion_l1_crossvalidation() {
    Rng rng(106);
    const double log_hi = std::log(1e5);
    for (int t = 0; t < 10000; ++t) {
        const Index n = static_cast<Index>(std::exp(rng.uniform(0.0, log_hi)));
        const VectorXd v = testutil::random_vector(rng, std::max<Index>(n, 1),
                                                   rng.uniform(0.1, 10.0));
        const double eta = rng.uniform(0.0, 1.2) * v.cwiseAbs().sum();
        const VectorXd a = project_l1_ball(v, eta);
        const VectorXd b = oracle::project_l1_ball_sort(v, eta);
        expect((a - b).cwiseAbs().maxCoeff() <= 1e-12, "pivot/sort agreement");
    }
    return g_first_failure.empty();
}

// ---- criterion 7: sparsity direction on the seeded dataset ----------------

bool criterion_sparsity_direction() {
    const MatrixXd y = generate_matrix(1000, 1000, Distribution::sparse_signal, 7, 64);
    const auto curves = sparsity_sweep(y, {BallFamily::l1inf, BallFamily::l11, BallFamily::l12,
                                           BallFamily::l1inf_exact});
    const double bp_l1inf_cum = curves[0].cumulative_zero_fraction();
    const double bp_l11_cum = curves[1].cumulative_zero_fraction();
    const double bp_l12_cum = curves[2].cumulative_zero_fraction();
    const double exact_cum = curves[3].cumulative_zero_fraction();
    expect(bp_l1inf_cum > exact_cum, "bp-l1inf sparsity above exact");
    expect(bp_l11_cum >= bp_l12_cum, "bp-l11 sparsity at least bp-l12");
    std::cout << "         cum: bp-l1inf=" << bp_l1inf_cum << " bp-l11=" << bp_l11_cum
              << " bp-l12=" << bp_l12_cum << " l1inf-exact=" << exact_cum << "\n";
    return g_first_failure.empty();
}

// ---- criterion 8: cross-norm gap ------------------------------------------

bool criterion_cross_norm_gap() {
    const MatrixXd y = generate_matrix(100, 100, Distribution::gaussian, 108);
    const double eta = 0.5 * norm_l1inf(y);
    for (const MatrixXd& x : {bp_l1inf(y, eta), project_l1inf_exact(y, eta).x}) {
        const double gap = (y - x).norm() + x.norm() - y.norm();
        expect(gap > 1e-6, "frobenius triple gap exceeds 1e-6");
    }
    return g_first_failure.empty();
}

// ---- criterion 9: byte-identical cli outputs ------------------------------

int run_cli(const std::string& args) {
    const std::string cmd = g_cli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return status == -1 ? -1 : WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool criterion_determinism() {
    const std::string in = g_dir + "/det.blpm";
    expect(run_cli("gen --rows 200 --cols 150 --dist gaussian --seed 31 --out " + in) == 0,
           "gen for determinism check");
    for (const std::string family : {"l1inf", "l11", "l12", "l1inf-exact"}) {
        const std::string base =
            "project --input " + in + " --family " + family + " --radius 4 --output ";
        const std::string a = g_dir + "/a.blpm", b = g_dir + "/b.blpm", c = g_dir + "/c.blpm";
        expect(run_cli(base + a + " --threads 1") == 0, "project run 1");
        expect(run_cli(base + b + " --threads 1") == 0, "project run 2");
        expect(run_cli(base + c + " --threads 8") == 0, "project run threads=8");
        const std::string bytes = slurp(a);
        expect(!bytes.empty() && bytes == slurp(b), "repeat run byte-identical (" + family + ")");
        expect(bytes == slurp(c), "threads 1 vs 8 byte-identical (" + family + ")");
    }
    return g_first_failure.empty();
}

struct Criterion {
    const char* label;
    double budget_seconds; // 0 = no budget
    std::function<bool()> run;
};

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance_tests <path-to-blproj-cli>\n");
        return 64;
    }
    g_cli = argv[1];
    char tmpl[] = "/tmp/blproj_acceptance_XXXXXX";
    if (!mkdtemp(tmpl)) {
        std::perror("mkdtemp");
        return 64;
    }
    g_dir = tmpl;

    const Criterion criteria[] = {
        {"1 norm identities (4 projections, 100 matrices to 500x500)", 120, criterion_identity},
        {"2 worked-example goldens within 1e-12", 0, criterion_goldens},
        {"3 exactness: grid oracle 2e-3, VI <= 1e-9 over 1e4 samples", 0, criterion_exactness},
        {"4 optimality dominance on 1000 instances, strict on worked", 0, criterion_dominance},
        {"5 linear complexity of bp-l1inf, bp faster than exact", 300, criterion_complexity},
        {"6 pivot vs sort l1 projection, 1e4 vectors to 1e5", 0, criterion_l1_crossvalidation},
        {"7 sparsity direction on sparse-signal(64) 1000x1000", 0, criterion_sparsity_direction},
        {"8 cross-norm frobenius gap exceeds 1e-6", 0, criterion_cross_norm_gap},
        {"9 cli determinism across runs and thread counts", 0, criterion_determinism},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        g_checks = 0;
        g_first_failure.clear();
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        std::string error;
        try {
            ok = criterion.run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (criterion.budget_seconds > 0 && secs > criterion.budget_seconds) {
            ok = false;
            if (g_first_failure.empty())
                g_first_failure = "runtime budget exceeded";
        }
        std::printf("[%s] criterion %s (%d checks, %.1fs)\n", ok ? "PASS" : "FAIL",
                    criterion.label, g_checks, secs);
        if (!ok) {
            ++failures;
            if (!error.empty())
                std::printf("       exception: %s\n", error.c_str());
            else if (!g_first_failure.empty())
                std::printf("       first failing check: %s\n", g_first_failure.c_str());
        }
    }
    std::printf("%d of 9 criteria passed\n", 9 - failures);
    return failures;
}
