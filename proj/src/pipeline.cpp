#include "hotgrid/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <limits>

#include <json.hpp>

#include "hotgrid/characterize.hpp"
#include "hotgrid/errors.hpp"
#include "hotgrid/geojson.hpp"
#include "hotgrid/local_stats.hpp"

namespace hotgrid {

GridSpec resolve_grid(const PipelineConfig& c, const std::vector<EventPoint>& crash,
                      const std::vector<EventPoint>& highg) {
    if (c.bbox_set()) return make_grid(c.min_x, c.min_y, c.max_x, c.max_y, c.cell_size);
    double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
    double hi_x = -lo_x, hi_y = -lo_y;
    for (const auto* pts : {&crash, &highg}) {
        for (const EventPoint& p : *pts) {
            lo_x = std::min(lo_x, p.x);
            lo_y = std::min(lo_y, p.y);
            hi_x = std::max(hi_x, p.x);
            hi_y = std::max(hi_y, p.y);
        }
    }
    if (!(hi_x > lo_x) || !(hi_y > lo_y))
        throw ValidationError("cannot derive a bbox: event points span no area; set one explicitly");
    return make_grid(lo_x, lo_y, hi_x, hi_y, c.cell_size);
}

std::vector<GlobalStatResult> standard_global_suite(const CellVariable& x, const CellVariable& y,
                                                    const WeightsMatrix& base, int permutations,
                                                    std::uint64_t seed, int threads) {
    const WeightsMatrix w = row_standardize(base);
    std::vector<GlobalStatResult> out;
    out.push_back(global_moran(x, w, permutations, seed, threads));
    out.push_back(global_moran(y, w, permutations, seed, threads));
    out.push_back(global_bivariate_moran(x, y, w, permutations, seed, threads));
    return out;
}

CellsTable assemble_cells(const CellVariable& crash, const CellVariable& highg,
                          const std::vector<LocalStatRow>& gi, const std::vector<LocalStatRow>& bv,
                          double alpha) {
    const std::size_t n = crash.values.size();
    if (highg.values.size() != n || gi.size() != n || bv.size() != n)
        throw ValidationError("assemble_cells: column lengths differ");
    CellsTable t;
    t.crash_count = crash.values;
    t.highg_count = highg.values;
    t.gi = gi;
    t.bv = bv;
    t.hotspot = classify_hotspots(gi);
    t.lisa = classify_lisa(bv, alpha);
    return t;
}

PipelineResult run_pipeline(const PipelineConfig& c) {
    validate(c);
    namespace fs = std::filesystem;

    const auto crash_pts = read_points(c.crash_points);
    const auto highg_pts = read_points(c.highg_points);
    const auto poi_pts = read_points(c.poi_points);

    PipelineResult res;
    res.grid = resolve_grid(c, crash_pts, highg_pts);
    res.crash_total = static_cast<std::int64_t>(crash_pts.size());
    res.highg_total = static_cast<std::int64_t>(highg_pts.size());
    res.poi_total = static_cast<std::int64_t>(poi_pts.size());

    auto crash_agg = aggregate_points(crash_pts, res.grid, "crash_count");
    auto highg_agg = aggregate_points(highg_pts, res.grid, "highg_count");
    res.crash_dropped = crash_agg.dropped;
    res.highg_dropped = highg_agg.dropped;

    const WeightsMatrix base =
        c.weights == "queen" ? queen_weights(res.grid) : rook_weights(res.grid);
    const auto global_rows =
        standard_global_suite(crash_agg.counts, highg_agg.counts, base, c.permutations, c.seed,
                              c.threads);
    const WeightsMatrix w_self = include_self(base);
    const auto gi = getis_ord_gstar(crash_agg.counts, w_self, c.permutations, c.seed, c.threads);
    const WeightsMatrix w_std = row_standardize(base);
    const auto bv = bivariate_local_moran(crash_agg.counts, highg_agg.counts, w_std,
                                          c.permutations, c.seed, c.threads);
    const CellsTable table = assemble_cells(crash_agg.counts, highg_agg.counts, gi, bv,
                                            c.lisa_alpha);
    for (LisaQuadrant q : table.lisa) ++res.lisa_counts[static_cast<std::size_t>(q)];

    fs::create_directories(c.out_dir);
    const auto path = [&](const char* name) { return (fs::path(c.out_dir) / name).string(); };
    const auto emit = [&](const char* name) { res.artifacts.push_back(path(name)); };

    write_counts_geojson(path("counts.geojson"), res.grid, crash_agg.counts, highg_agg.counts);
    emit("counts.geojson");
    write_global_csv(path("global_stats.csv"), global_rows);
    emit("global_stats.csv");
    write_cells_csv(path("cells.csv"), res.grid, table);
    emit("cells.csv");
    write_lisa_groups_csv(path("lisa_groups.csv"), table.lisa);
    emit("lisa_groups.csv");
    write_hotspot_geojson(path("hotspots.geojson"), res.grid, table);
    emit("hotspots.geojson");
    write_lisa_geojson(path("lisa.geojson"), res.grid, table);
    emit("lisa.geojson");

    // Characterization last: if a comparison group is empty this throws and
    // the spatial artifacts above are already on disk.
    const auto features = count_pois(poi_pts, res.grid);
    res.poi_dropped = features.dropped;
    const auto mw = compare_groups(features, table.lisa, lisa_quadrant_from_string(c.group_a),
                                   lisa_quadrant_from_string(c.group_b), c.lisa_alpha, c.threads);
    res.mw_tests = static_cast<std::int64_t>(mw.size());
    write_mw_csv(path("mw_results.csv"), mw);
    emit("mw_results.csv");

    nlohmann::json manifest;
    manifest["parameters"] = {{"cell_size", c.cell_size},
                              {"weights", c.weights},
                              {"permutations", c.permutations},
                              {"seed", c.seed},
                              {"lisa_alpha", c.lisa_alpha},
                              {"group_a", c.group_a},
                              {"group_b", c.group_b},
                              {"bbox",
                               {{"min_x", c.min_x},
                                {"min_y", c.min_y},
                                {"max_x", c.max_x},
                                {"max_y", c.max_y},
                                {"derived_from_events", !c.bbox_set()}}}};
    manifest["grid"] = {{"origin_x", res.grid.origin_x},
                       {"origin_y", res.grid.origin_y},
                       {"cell_size", res.grid.cell_size},
                       {"n_rows", res.grid.n_rows},
                       {"n_cols", res.grid.n_cols},
                       {"cells", res.grid.cell_count()}};
    const auto input_entry = [](const std::string& p, std::int64_t total, std::int64_t dropped) {
        return nlohmann::json{{"path", p},
                              {"checksum_fnv1a64", file_checksum(p)},
                              {"points", total},
                              {"dropped", dropped}};
    };
    manifest["inputs"] = {{"crash_points", input_entry(c.crash_points, res.crash_total,
                                                       res.crash_dropped)},
                         {"highg_points", input_entry(c.highg_points, res.highg_total,
                                                      res.highg_dropped)},
                         {"poi_points", input_entry(c.poi_points, res.poi_total, res.poi_dropped)}};
    manifest["mw_tests"] = res.mw_tests;  // tests run with no multiple-comparison correction
    nlohmann::json outputs;
    for (const std::string& p : res.artifacts)
        outputs[fs::path(p).filename().string()] = file_checksum(p);
    manifest["outputs"] = std::move(outputs);
    write_text_file(path("manifest.json"), manifest.dump(2) + "\n");
    emit("manifest.json");

    return res;
}

}  // namespace hotgrid
