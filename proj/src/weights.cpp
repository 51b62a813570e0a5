#include "hotgrid/weights.hpp"

#include <algorithm>

#include "hotgrid/errors.hpp"

namespace hotgrid {

std::int64_t WeightsMatrix::isolate_count() const {
    std::int64_t k = 0;
    for (std::int64_t i = 0; i < n; ++i)
        if (is_isolate(i)) ++k;
    return k;
}

namespace {

// dr/dc offsets in an order that yields sorted cell ids per row.
WeightsMatrix contiguity(const GridSpec& g, bool corners) {
    const std::int64_t rows = g.n_rows, cols = g.n_cols;
    WeightsMatrix w;
    w.n = g.cell_count();
    w.offsets.assign(static_cast<std::size_t>(w.n) + 1, 0);
    w.neighbors.reserve(static_cast<std::size_t>(w.n) * (corners ? 8 : 4));

    for (std::int64_t r = 0; r < rows; ++r) {
        for (std::int64_t c = 0; c < cols; ++c) {
            const std::int64_t id = g.cell_id(r, c);
            for (std::int64_t dr = -1; dr <= 1; ++dr) {
                for (std::int64_t dc = -1; dc <= 1; ++dc) {
                    if (dr == 0 && dc == 0) continue;
                    if (!corners && dr != 0 && dc != 0) continue;
                    const std::int64_t nr = r + dr, nc = c + dc;
                    if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
                    w.neighbors.push_back(g.cell_id(nr, nc));
                }
            }
            w.offsets[static_cast<std::size_t>(id) + 1] = static_cast<std::int64_t>(w.neighbors.size());
        }
    }
    w.weights.assign(w.neighbors.size(), 1.0);
    w.standardization = WeightsKind::Binary;
    w.self_included = false;
    return w;
}

}  // namespace

WeightsMatrix queen_weights(const GridSpec& g) { return contiguity(g, true); }

WeightsMatrix rook_weights(const GridSpec& g) { return contiguity(g, false); }

WeightsMatrix row_standardize(const WeightsMatrix& w) {
    WeightsMatrix out = w;
    for (std::int64_t i = 0; i < w.n; ++i) {
        const double s = w.row_sum(i);
        if (s == 0.0) continue;  // isolate, row stays empty
        for (std::int64_t k = w.offsets[i]; k < w.offsets[i + 1]; ++k)
            out.weights[static_cast<std::size_t>(k)] = w.weights[static_cast<std::size_t>(k)] / s;
    }
    out.standardization = WeightsKind::RowStandardized;
    return out;
}

WeightsMatrix include_self(const WeightsMatrix& w) {
    if (w.self_included) throw ValidationError("include_self: weights already include self");
    if (w.standardization != WeightsKind::Binary)
        throw ValidationError("include_self: expected binary weights");

    WeightsMatrix out;
    out.n = w.n;
    out.offsets.assign(static_cast<std::size_t>(w.n) + 1, 0);
    out.neighbors.reserve(w.neighbors.size() + static_cast<std::size_t>(w.n));
    for (std::int64_t i = 0; i < w.n; ++i) {
        auto row = w.row_neighbors(i);
        auto insert_at = std::lower_bound(row.begin(), row.end(), i);
        for (auto it = row.begin(); it != insert_at; ++it) out.neighbors.push_back(*it);
        out.neighbors.push_back(i);
        for (auto it = insert_at; it != row.end(); ++it) out.neighbors.push_back(*it);
        out.offsets[static_cast<std::size_t>(i) + 1] = static_cast<std::int64_t>(out.neighbors.size());
    }
    out.weights.assign(out.neighbors.size(), 1.0);
    out.standardization = WeightsKind::Binary;
    out.self_included = true;
    return out;
}

}  // namespace hotgrid
