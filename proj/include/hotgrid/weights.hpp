#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hotgrid/grid.hpp"

namespace hotgrid {

enum class WeightsKind { Binary, RowStandardized };

/// Sparse spatial weights in CSR form. Neighbor lists are sorted by column and
/// hold no duplicates. Contiguity weights (before self-inclusion) are
/// symmetric: j in N(i) <=> i in N(j).
struct WeightsMatrix {
    std::int64_t n = 0;
    std::vector<std::int64_t> offsets;    // size n + 1
    std::vector<std::int64_t> neighbors;  // column indices, sorted within each row
    std::vector<double> weights;          // parallel to neighbors, all > 0
    WeightsKind standardization = WeightsKind::Binary;
    bool self_included = false;

    std::int64_t degree(std::int64_t i) const { return offsets[i + 1] - offsets[i]; }

    std::span<const std::int64_t> row_neighbors(std::int64_t i) const {
        return {neighbors.data() + offsets[i], static_cast<std::size_t>(degree(i))};
    }
    std::span<const double> row_weights(std::int64_t i) const {
        return {weights.data() + offsets[i], static_cast<std::size_t>(degree(i))};
    }

    double row_sum(std::int64_t i) const {
        double s = 0.0;
        for (double w : row_weights(i)) s += w;
        return s;
    }

    /// A cell with no neighbors other than itself. Excluded from local
    /// statistics and from row standardization.
    bool is_isolate(std::int64_t i) const {
        const std::int64_t d = degree(i);
        if (!self_included) return d == 0;
        return d == 0 || (d == 1 && neighbors[offsets[i]] == i);
    }

    std::int64_t isolate_count() const;
};

/// Binary contiguity over the grid: neighbors share an edge or a corner
/// (up to 8 per cell). self_included = false.
WeightsMatrix queen_weights(const GridSpec& g);

/// Edge-sharing contiguity only (up to 4 neighbors per cell).
WeightsMatrix rook_weights(const GridSpec& g);

/// Scales every nonempty row to sum 1. Isolated cells keep empty rows.
/// Idempotent on already-standardized input.
WeightsMatrix row_standardize(const WeightsMatrix& w);

/// Adds w_ii = 1 to every row of a binary matrix. Errors if already included.
WeightsMatrix include_self(const WeightsMatrix& w);

}  // namespace hotgrid
