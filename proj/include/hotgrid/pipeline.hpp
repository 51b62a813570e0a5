#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hotgrid/config.hpp"
#include "hotgrid/csv.hpp"
#include "hotgrid/global_stats.hpp"
#include "hotgrid/grid.hpp"
#include "hotgrid/weights.hpp"

namespace hotgrid {

/// Grid from the config bbox, or from the union extent of both event point
/// sets when the bbox is unset.
GridSpec resolve_grid(const PipelineConfig& c, const std::vector<EventPoint>& crash,
                      const std::vector<EventPoint>& highg);

/// The three global rows every run reports: Moran's I for each variable plus
/// their bivariate association. Takes the base binary contiguity matrix and
/// row-standardizes internally.
std::vector<GlobalStatResult> standard_global_suite(const CellVariable& x, const CellVariable& y,
                                                    const WeightsMatrix& base, int permutations,
                                                    std::uint64_t seed, int threads);

/// Joins counts and both local-statistic runs into the per-cell results table.
CellsTable assemble_cells(const CellVariable& crash, const CellVariable& highg,
                          const std::vector<LocalStatRow>& gi, const std::vector<LocalStatRow>& bv,
                          double alpha);

struct PipelineResult {
    GridSpec grid;
    std::int64_t crash_total = 0, crash_dropped = 0;
    std::int64_t highg_total = 0, highg_dropped = 0;
    std::int64_t poi_total = 0, poi_dropped = 0;
    std::array<std::int64_t, 6> lisa_counts{};  // indexed by LisaQuadrant
    std::int64_t mw_tests = 0;
    std::vector<std::string> artifacts;  // paths written, in write order
};

/// Runs every stage and writes the artifact bundle into c.out_dir:
/// counts.geojson, global_stats.csv, cells.csv, lisa_groups.csv,
/// hotspots.geojson, lisa.geojson, mw_results.csv, manifest.json.
/// Output bytes are independent of c.threads.
PipelineResult run_pipeline(const PipelineConfig& c);

}  // namespace hotgrid
