#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hotgrid/grid.hpp"
#include "hotgrid/weights.hpp"

namespace hotgrid {

struct GlobalStatResult {
    std::string name;
    double statistic = 0.0;
    double expected_under_null = 0.0;  // -1/(n-1) for univariate Moran, 0 for bivariate
    double pseudo_p = 0.0;             // (1 + exceed) / (1 + K), one-sided toward the statistic's sign
    int n_permutations = 0;
    std::uint64_t seed = 0;
};

/// Mean 0, population variance 1 (denominator n). Throws DegenerateInputError
/// on a constant vector.
std::vector<double> standardize(const CellVariable& x);

/// Moran's I = sum_i z_i * lag_i / sum_i z_i^2 under row-standardized weights,
/// with significance from K full-vector permutations.
GlobalStatResult global_moran(const CellVariable& x, const WeightsMatrix& w_rowstd,
                              int permutations, std::uint64_t seed, int threads = 0);

/// I_xy = sum_i zx_i * lag(zy)_i / n. Permutations hold x fixed and shuffle y.
GlobalStatResult global_bivariate_moran(const CellVariable& x, const CellVariable& y,
                                        const WeightsMatrix& w_rowstd, int permutations,
                                        std::uint64_t seed, int threads = 0);

}  // namespace hotgrid
