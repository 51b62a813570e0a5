#include "hotgrid/global_stats.hpp"

#include <cmath>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hotgrid/errors.hpp"
#include "hotgrid/rng.hpp"

namespace hotgrid {

namespace {

int resolve_threads(int threads) {
#ifdef _OPENMP
    return threads > 0 ? threads : omp_get_max_threads();
#else
    (void)threads;
    return 1;
#endif
}

void check_common(const CellVariable& x, const WeightsMatrix& w, int permutations) {
    if (static_cast<std::int64_t>(x.values.size()) != w.n)
        throw ValidationError("global stats: variable length does not match weights (" + x.name + ")");
    if (w.standardization != WeightsKind::RowStandardized)
        throw ValidationError("global stats: weights must be row-standardized");
    if (w.self_included)
        throw ValidationError("global stats: weights must not include self");
    if (permutations < 1) throw ValidationError("global stats: permutations must be >= 1");
}

double lag_dot(const WeightsMatrix& w, const std::vector<double>& zx, const std::vector<double>& zy) {
    double acc = 0.0;
    for (std::int64_t i = 0; i < w.n; ++i) {
        auto nb = w.row_neighbors(i);
        auto wt = w.row_weights(i);
        double lag = 0.0;
        for (std::size_t k = 0; k < nb.size(); ++k) lag += wt[k] * zy[static_cast<std::size_t>(nb[k])];
        acc += zx[static_cast<std::size_t>(i)] * lag;
    }
    return acc;
}

void shuffle_values(std::vector<double>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size() - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(uniform_below(rng, i + 1));
        std::swap(v[i], v[j]);
    }
}

}  // namespace

std::vector<double> standardize(const CellVariable& x) {
    const std::size_t n = x.values.size();
    if (n < 2) throw DegenerateInputError("standardize: need at least 2 values (" + x.name + ")");
    double mean = 0.0;
    for (double v : x.values) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : x.values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    if (var == 0.0) throw DegenerateInputError("standardize: zero variance (" + x.name + ")");
    const double sd = std::sqrt(var);
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = (x.values[i] - mean) / sd;
    return z;
}

GlobalStatResult global_moran(const CellVariable& x, const WeightsMatrix& w_rowstd,
                              int permutations, std::uint64_t seed, int threads) {
    check_common(x, w_rowstd, permutations);
    const auto z = standardize(x);
    const double zz = std::inner_product(z.begin(), z.end(), z.begin(), 0.0);
    const double observed = lag_dot(w_rowstd, z, z) / zz;

    // zz is invariant under permutation, so replicates only need the cross term.
    const double cutoff = observed * zz;
    const bool high_side = observed >= 0.0;
    std::int64_t exceed = 0;
    const int nt = resolve_threads(threads);
#ifdef _OPENMP
#pragma omp parallel num_threads(nt) reduction(+ : exceed)
#endif
    {
        std::vector<double> perm(z);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (int r = 0; r < permutations; ++r) {
            auto rng = substream(seed, RngRole::GlobalPerm, static_cast<std::uint64_t>(r));
            perm = z;
            shuffle_values(perm, rng);
            const double cross = lag_dot(w_rowstd, perm, perm);
            if (high_side ? cross >= cutoff : cross <= cutoff) ++exceed;
        }
    }
    (void)nt;

    GlobalStatResult res;
    res.name = "global_moran_" + x.name;
    res.statistic = observed;
    res.expected_under_null = -1.0 / (static_cast<double>(w_rowstd.n) - 1.0);
    res.pseudo_p = static_cast<double>(1 + exceed) / static_cast<double>(1 + permutations);
    res.n_permutations = permutations;
    res.seed = seed;
    return res;
}

GlobalStatResult global_bivariate_moran(const CellVariable& x, const CellVariable& y,
                                        const WeightsMatrix& w_rowstd, int permutations,
                                        std::uint64_t seed, int threads) {
    check_common(x, w_rowstd, permutations);
    if (x.values.size() != y.values.size())
        throw ValidationError("global bivariate moran: variable lengths differ");
    const auto zx = standardize(x);
    const auto zy = standardize(y);
    const auto n = static_cast<double>(w_rowstd.n);
    const double observed = lag_dot(w_rowstd, zx, zy) / n;

    const double cutoff = observed * n;
    const bool high_side = observed >= 0.0;
    std::int64_t exceed = 0;
    const int nt = resolve_threads(threads);
#ifdef _OPENMP
#pragma omp parallel num_threads(nt) reduction(+ : exceed)
#endif
    {
        std::vector<double> perm(zy);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (int r = 0; r < permutations; ++r) {
            auto rng = substream(seed, RngRole::GlobalPerm, static_cast<std::uint64_t>(r));
            perm = zy;
            shuffle_values(perm, rng);
            const double cross = lag_dot(w_rowstd, zx, perm);
            if (high_side ? cross >= cutoff : cross <= cutoff) ++exceed;
        }
    }
    (void)nt;

    GlobalStatResult res;
    res.name = "global_bivariate_moran_" + x.name + "_" + y.name;
    res.statistic = observed;
    res.expected_under_null = 0.0;
    res.pseudo_p = static_cast<double>(1 + exceed) / static_cast<double>(1 + permutations);
    res.n_permutations = permutations;
    res.seed = seed;
    return res;
}

}  // namespace hotgrid
