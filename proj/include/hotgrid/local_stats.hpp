#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hotgrid/grid.hpp"
#include "hotgrid/weights.hpp"

namespace hotgrid {

enum class HotspotClass {
    Hot99,
    Hot95,
    Hot90,
    NotSignificant,
    Cold90,
    Cold95,
    Cold99,
    NotApplicable,  // isolate or degenerate cell
};

enum class LisaQuadrant {
    HH,
    HL,
    LH,
    LL,
    NotSignificant,
    NotApplicable,  // isolate cell
};

/// Per-cell local statistic. pseudo_p is NaN for isolate/degenerate cells.
struct LocalStatRow {
    std::int64_t cell_id = 0;
    double statistic = 0.0;
    double lag = 0.0;  // neighborhood mean of x for Gi*; spatial lag of z (or z_y) for the Moran family
    double pseudo_p = std::numeric_limits<double>::quiet_NaN();
    bool isolate = false;
    bool degenerate = false;

    bool has_p() const { return !std::isnan(pseudo_p); }
};

/// Getis-Ord Gi* (z-valued) over binary self-included weights, with
/// conditional-permutation pseudo p-values: the focal value stays fixed and
/// each replicate redraws the neighborhood from the remaining n-1 values.
std::vector<LocalStatRow> getis_ord_gstar(const CellVariable& x, const WeightsMatrix& w_self_binary,
                                          int permutations, std::uint64_t seed, int threads = 0);

/// Local Moran's I_i = z_i * lag(z)_i over row-standardized weights.
std::vector<LocalStatRow> local_moran(const CellVariable& x, const WeightsMatrix& w_rowstd,
                                      int permutations, std::uint64_t seed, int threads = 0);

/// Bivariate I_i = zx_i * lag(zy)_i; replicates hold zx_i fixed and redraw the
/// neighborhood from the other n-1 zy values.
std::vector<LocalStatRow> bivariate_local_moran(const CellVariable& x, const CellVariable& y,
                                                const WeightsMatrix& w_rowstd, int permutations,
                                                std::uint64_t seed, int threads = 0);

/// Tier by statistic sign and pseudo_p thresholds 0.01 / 0.05 / 0.10.
std::vector<HotspotClass> classify_hotspots(const std::vector<LocalStatRow>& rows);

/// Quadrant by (sign of zx_i, sign of lag) for cells with pseudo_p < alpha.
/// An exactly-zero zx_i or lag is NotSignificant (quadrant undefined on the axes).
std::vector<LisaQuadrant> classify_lisa(const std::vector<LocalStatRow>& rows, double alpha);

const char* to_string(HotspotClass c);
const char* to_string(LisaQuadrant q);
/// Long-form label used in map exports, e.g. "HH (High Crash-High HighG)".
const char* lisa_label(LisaQuadrant q);
LisaQuadrant lisa_quadrant_from_string(const std::string& s);

}  // namespace hotgrid
