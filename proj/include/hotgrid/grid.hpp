#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hotgrid {

/// Uniform square tessellation of a planar bounding box, anchored at its
/// lower-left corner. Cell (r, c) covers the half-open square
/// [origin_x + c*s, origin_x + (c+1)*s) x [origin_y + r*s, origin_y + (r+1)*s),
/// and cell_id = r * n_cols + c.
struct GridSpec {
    double origin_x = 0.0;
    double origin_y = 0.0;
    double cell_size = 0.0;  // meters, > 0
    std::int64_t n_rows = 0;
    std::int64_t n_cols = 0;

    std::int64_t cell_count() const { return n_rows * n_cols; }
    std::int64_t cell_id(std::int64_t row, std::int64_t col) const { return row * n_cols + col; }
    std::int64_t row_of(std::int64_t id) const { return id / n_cols; }
    std::int64_t col_of(std::int64_t id) const { return id % n_cols; }

    bool operator==(const GridSpec&) const = default;
};

/// One observed event in planar coordinates (meters). kind is free-form and
/// only meaningful for POI points.
struct EventPoint {
    double x = 0.0;
    double y = 0.0;
    std::string kind;
};

/// One numeric value per grid cell.
struct CellVariable {
    std::string name;
    std::vector<double> values;
};

struct Aggregation {
    CellVariable counts;
    std::int64_t in_extent = 0;
    std::int64_t dropped = 0;  // points outside the grid extent
};

/// Grid covering the bbox: n_cols = ceil(width / cell_size), n_rows likewise.
/// Throws ValidationError on a degenerate bbox or non-positive cell size.
GridSpec make_grid(double min_x, double min_y, double max_x, double max_y, double cell_size);

/// Cell containing (x, y) under the half-open membership rule, or nullopt if
/// the point lies outside the grid extent.
std::optional<std::int64_t> locate(const EventPoint& p, const GridSpec& g);

/// Per-cell point counts. Out-of-extent points are dropped (and counted).
Aggregation aggregate_points(const std::vector<EventPoint>& points, const GridSpec& g,
                             const std::string& name = "count");

/// Closed ring of a cell: 5 vertices counter-clockwise, first == last.
using CellRing = std::array<std::array<double, 2>, 5>;

CellRing cell_ring(const GridSpec& g, std::int64_t cell_id);

/// One ring per cell, indexed by cell_id.
std::vector<CellRing> grid_polygons(const GridSpec& g);

}  // namespace hotgrid
