#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "hotgrid/global_stats.hpp"
#include "hotgrid/grid.hpp"
#include "hotgrid/local_stats.hpp"
#include "hotgrid/reference.hpp"
#include "hotgrid/rng.hpp"
#include "hotgrid/synth.hpp"
#include "hotgrid/weights.hpp"

namespace {

using namespace hotgrid;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Scenario bench_scenario(std::int64_t rows, std::int64_t cols, std::uint64_t seed) {
    Scenario s;
    s.grid = GridSpec{0.0, 0.0, 400.0, rows, cols};
    s.baseline_intensity = 5.0;
    s.blobs = {{rows / 2, cols / 2, 3, 4.0, BlobTarget::Both},
               {rows / 4, (3 * cols) / 4, 2, 6.0, BlobTarget::Y}};
    s.coupling = 0.5;
    s.seed = seed;
    return s;
}

double max_abs_diff(const std::vector<LocalStatRow>& engine, const std::vector<double>& oracle) {
    double m = 0.0;
    for (std::size_t i = 0; i < engine.size(); ++i)
        m = std::max(m, std::abs(engine[i].statistic - oracle[i]));
    return m;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"benchmark: parallel kernels vs serial reference"};
    std::int64_t rows = 100, cols = 100;
    int permutations = 999;
    std::uint64_t seed = 42;
    int max_threads = 0;
    app.add_option("--rows", rows, "grid rows for the permutation sweep");
    app.add_option("--cols", cols, "grid cols for the permutation sweep");
    app.add_option("-K,--permutations", permutations, "conditional permutations");
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--max-threads", max_threads, "cap for the thread sweep (0 = hardware)");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    const int hw = omp_get_max_threads();
#else
    const int hw = 1;
#endif
    if (max_threads <= 0) max_threads = hw;

    // Part 1: observed statistics, engine vs dense serial reference (20x20).
    {
        const Scenario s = bench_scenario(20, 20, seed);
        const auto [x, y] = gen_counts(s);
        const WeightsMatrix base = queen_weights(s.grid);
        const WeightsMatrix w_self = include_self(base);
        const WeightsMatrix w_std = row_standardize(base);

        auto t0 = Clock::now();
        const auto ref_gi = ref::gi_star(x.values, w_self);
        const auto ref_lm = ref::local_moran(x.values, w_std);
        const auto ref_bv = ref::bivariate_local_moran(x.values, y.values, w_std);
        const double t_ref = seconds_since(t0);

        t0 = Clock::now();
        const auto eng_gi = getis_ord_gstar(x, w_self, 1, seed);
        const auto eng_lm = local_moran(x, w_std, 1, seed);
        const auto eng_bv = bivariate_local_moran(x, y, w_std, 1, seed);
        const double t_eng = seconds_since(t0);

        const double d = std::max({max_abs_diff(eng_gi, ref_gi), max_abs_diff(eng_lm, ref_lm),
                                   max_abs_diff(eng_bv, ref_bv)});
        std::cout << "statistics on " << s.grid.cell_count()
                  << " cells: dense reference " << t_ref << " s, sparse engine (K=1) " << t_eng
                  << " s, max |engine - reference| = " << d << "\n\n";
    }

    // Part 2: permutation engine thread sweep.
    const Scenario s = bench_scenario(rows, cols, seed);
    const auto [x, y] = gen_counts(s);
    const WeightsMatrix base = queen_weights(s.grid);
    const WeightsMatrix w_self = include_self(base);
    const WeightsMatrix w_std = row_standardize(base);

    std::cout << "permutation sweep: " << s.grid.cell_count() << " cells, K=" << permutations
              << ", gi_star + bivariate local Moran\n";
    std::cout << "threads  seconds  speedup  identical\n";
    std::vector<int> sweep;
    for (int nt = 1; nt < max_threads; nt *= 2) sweep.push_back(nt);
    sweep.push_back(max_threads);

    std::vector<LocalStatRow> base_gi, base_bv;
    double t1 = 0.0;
    for (int nt : sweep) {
        const auto t0 = Clock::now();
        const auto gi = getis_ord_gstar(x, w_self, permutations, seed, nt);
        const auto bv = bivariate_local_moran(x, y, w_std, permutations, seed, nt);
        const double dt = seconds_since(t0);
        bool identical = true;
        if (nt == 1) {
            base_gi = gi;
            base_bv = bv;
            t1 = dt;
        } else {
            const auto same_p = [](double a, double b) {
                return (std::isnan(a) && std::isnan(b)) || a == b;
            };
            for (std::size_t i = 0; i < gi.size() && identical; ++i)
                identical = gi[i].statistic == base_gi[i].statistic &&
                            same_p(gi[i].pseudo_p, base_gi[i].pseudo_p) &&
                            bv[i].statistic == base_bv[i].statistic &&
                            same_p(bv[i].pseudo_p, base_bv[i].pseudo_p);
        }
        std::printf("%7d  %7.3f  %7.2fx  %s\n", nt, dt, t1 / dt,
                    nt == 1 ? "-" : (identical ? "yes" : "NO"));
    }
    return 0;
}
