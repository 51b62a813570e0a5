#include "hotgrid/grid.hpp"

#include <cmath>
#include <limits>

#include "hotgrid/errors.hpp"

namespace hotgrid {

namespace {
constexpr std::int64_t kMaxCells = std::int64_t(1) << 31;
}

GridSpec make_grid(double min_x, double min_y, double max_x, double max_y, double cell_size) {
    if (!(std::isfinite(min_x) && std::isfinite(min_y) && std::isfinite(max_x) && std::isfinite(max_y)))
        throw ValidationError("make_grid: bbox coordinates must be finite");
    if (!(max_x > min_x) || !(max_y > min_y))
        throw ValidationError("make_grid: degenerate bbox (max must exceed min on both axes)");
    if (!(cell_size > 0.0) || !std::isfinite(cell_size))
        throw ValidationError("make_grid: cell_size must be positive and finite");

    GridSpec g;
    g.origin_x = min_x;
    g.origin_y = min_y;
    g.cell_size = cell_size;
    g.n_cols = static_cast<std::int64_t>(std::ceil((max_x - min_x) / cell_size));
    g.n_rows = static_cast<std::int64_t>(std::ceil((max_y - min_y) / cell_size));
    if (g.n_cols < 1) g.n_cols = 1;
    if (g.n_rows < 1) g.n_rows = 1;
    if (g.n_rows > kMaxCells / g.n_cols)
        throw ValidationError("make_grid: grid would exceed the cell-count limit");
    return g;
}

std::optional<std::int64_t> locate(const EventPoint& p, const GridSpec& g) {
    const double fx = std::floor((p.x - g.origin_x) / g.cell_size);
    const double fy = std::floor((p.y - g.origin_y) / g.cell_size);
    if (!(fx >= 0.0) || !(fy >= 0.0)) return std::nullopt;  // also rejects NaN
    if (fx >= static_cast<double>(g.n_cols) || fy >= static_cast<double>(g.n_rows)) return std::nullopt;
    return g.cell_id(static_cast<std::int64_t>(fy), static_cast<std::int64_t>(fx));
}

Aggregation aggregate_points(const std::vector<EventPoint>& points, const GridSpec& g,
                             const std::string& name) {
    Aggregation agg;
    agg.counts.name = name;
    agg.counts.values.assign(static_cast<std::size_t>(g.cell_count()), 0.0);
    for (const EventPoint& p : points) {
        if (auto id = locate(p, g)) {
            agg.counts.values[static_cast<std::size_t>(*id)] += 1.0;
            ++agg.in_extent;
        } else {
            ++agg.dropped;
        }
    }
    return agg;
}

CellRing cell_ring(const GridSpec& g, std::int64_t cell_id) {
    const double s = g.cell_size;
    const double x0 = g.origin_x + static_cast<double>(g.col_of(cell_id)) * s;
    const double y0 = g.origin_y + static_cast<double>(g.row_of(cell_id)) * s;
    return CellRing{{{x0, y0}, {x0 + s, y0}, {x0 + s, y0 + s}, {x0, y0 + s}, {x0, y0}}};
}

std::vector<CellRing> grid_polygons(const GridSpec& g) {
    std::vector<CellRing> rings;
    rings.reserve(static_cast<std::size_t>(g.cell_count()));
    for (std::int64_t id = 0; id < g.cell_count(); ++id) rings.push_back(cell_ring(g, id));
    return rings;
}

}  // namespace hotgrid
