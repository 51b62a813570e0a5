#pragma once

#include <span>

namespace hotgrid {

/// Two-sided Mann-Whitney U test result. `u` is the statistic for the first
/// sample; `exact` is true when the p-value came from full enumeration of
/// group assignments rather than the normal approximation.
struct MWTest {
    double u = 0.0;
    double p = 1.0;
    bool exact = false;
};

/// Pooled sample sizes up to this bound use exact enumeration.
inline constexpr int kMWExactLimit = 12;

/// Rank-based U for the first sample (midranks for ties).
double mann_whitney_u(std::span<const double> a, std::span<const double> b);

/// Exact p for n_a + n_b <= kMWExactLimit, tie-corrected continuity-corrected
/// normal approximation beyond that. Throws DegenerateInputError on an empty
/// sample.
MWTest mann_whitney(std::span<const double> a, std::span<const double> b);

}  // namespace hotgrid
