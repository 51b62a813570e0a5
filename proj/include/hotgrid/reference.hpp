#pragma once

#include <span>
#include <vector>

#include "hotgrid/weights.hpp"

namespace hotgrid::ref {

// Serial brute-force reference implementations, kept deliberately independent
// of the engine code paths: dense double loops, literal formulas, no shared
// helpers. They exist to cross-check the parallel engine and are limited to
// small inputs (n <= 400 cells; n_a + n_b <= 12 for the exact rank test).

double global_moran(std::span<const double> x, const WeightsMatrix& w_rowstd);

double global_bivariate_moran(std::span<const double> x, std::span<const double> y,
                              const WeightsMatrix& w_rowstd);

std::vector<double> gi_star(std::span<const double> x, const WeightsMatrix& w_self_binary);

std::vector<double> local_moran(std::span<const double> x, const WeightsMatrix& w_rowstd);

std::vector<double> bivariate_local_moran(std::span<const double> x, std::span<const double> y,
                                          const WeightsMatrix& w_rowstd);

/// U statistic for the first sample (greater-than count with half credit for ties).
double mann_whitney_u_stat(std::span<const double> a, std::span<const double> b);

/// Exact two-sided p by enumerating every group assignment of the pooled values.
double mann_whitney_exact_p(std::span<const double> a, std::span<const double> b);

}  // namespace hotgrid::ref
