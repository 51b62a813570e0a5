#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hotgrid/characterize.hpp"
#include "hotgrid/global_stats.hpp"
#include "hotgrid/grid.hpp"
#include "hotgrid/local_stats.hpp"
#include "hotgrid/weights.hpp"

namespace hotgrid {

/// Shortest decimal form that parses back to the same double ("nan" for NaN).
std::string format_double(double v);

/// FNV-1a 64-bit over a byte buffer.
std::uint64_t fnv1a64(const void* data, std::size_t size);

/// Checksum of a file's raw bytes, as a 16-digit lowercase hex string.
std::string file_checksum(const std::string& path);

/// Points with header `x,y`, `x,y,kind` or `kind,x,y`; extra columns rejected.
std::vector<EventPoint> read_points(const std::string& path);
void write_points(const std::string& path, const std::vector<EventPoint>& points, bool with_kind);

/// Per-cell table `cell_id,row,col,<var...>`; cell ids must be 0..n-1 in order.
struct CountsTable {
    std::int64_t n_rows_grid = 0;  // max row index + 1, for cross-checking
    std::int64_t n_cols_grid = 0;
    std::vector<CellVariable> variables;
};
CountsTable read_counts(const std::string& path);
void write_counts(const std::string& path, const GridSpec& g,
                  const std::vector<CellVariable>& variables);

/// Sparse weights rows `i,j,w`. Reading re-derives the tags: all-ones weights
/// read back as binary, any i==j row marks the matrix self-included.
WeightsMatrix read_weights_csv(const std::string& path, std::int64_t n);
void write_weights_csv(const std::string& path, const WeightsMatrix& w);

void write_global_csv(const std::string& path, const std::vector<GlobalStatResult>& results);

/// Intermediate per-cell statistic table `cell_id,statistic,lag,pseudo_p,flag`
/// with flag in {ok, isolate, degenerate}.
void write_local_csv(const std::string& path, const std::vector<LocalStatRow>& rows);
std::vector<LocalStatRow> read_local_csv(const std::string& path);

/// Joined per-cell results table (the main tabular artifact).
struct CellsTable {
    std::vector<std::int64_t> cell_id, row, col;
    std::vector<double> crash_count, highg_count;
    std::vector<LocalStatRow> gi, bv;
    std::vector<HotspotClass> hotspot;
    std::vector<LisaQuadrant> lisa;
};
void write_cells_csv(const std::string& path, const GridSpec& g, const CellsTable& t);
CellsTable read_cells_csv(const std::string& path);

/// Group-size table `lisa_quadrant,cell_count`, all six labels always present.
void write_lisa_groups_csv(const std::string& path, const std::vector<LisaQuadrant>& quadrants);

void write_mw_csv(const std::string& path, const std::vector<MWResult>& results);

}  // namespace hotgrid
