#include <array>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hotgrid/characterize.hpp"
#include "hotgrid/config.hpp"
#include "hotgrid/csv.hpp"
#include "hotgrid/errors.hpp"
#include "hotgrid/geojson.hpp"
#include "hotgrid/global_stats.hpp"
#include "hotgrid/grid.hpp"
#include "hotgrid/local_stats.hpp"
#include "hotgrid/pipeline.hpp"
#include "hotgrid/synth.hpp"
#include "hotgrid/weights.hpp"

namespace {

namespace fs = std::filesystem;
using namespace hotgrid;

std::string join(const std::string& dir, const char* name) {
    return (fs::path(dir) / name).string();
}

const CellVariable& pick_variable(const CountsTable& t, const std::string& name,
                                  const std::string& path) {
    for (const CellVariable& v : t.variables)
        if (v.name == name) return v;
    throw ValidationError(path + " has no column named " + name);
}

struct SynthArgs {
    std::string scenario_path;
    std::string out_dir = "synth_out";
};

int run_synth(const SynthArgs& a) {
    const Scenario s = scenario_from_json(read_text_file(a.scenario_path));
    const auto [x, y] = gen_counts(s);
    const auto crash_pts = counts_to_points(x, s.grid, s.seed);
    const auto highg_pts = counts_to_points(y, s.grid, s.seed + 1);
    const auto pois = gen_pois(s);

    fs::create_directories(a.out_dir);
    write_points(join(a.out_dir, "crash_points.csv"), crash_pts, false);
    write_points(join(a.out_dir, "highg_points.csv"), highg_pts, false);
    write_points(join(a.out_dir, "pois.csv"), pois, true);
    write_counts(join(a.out_dir, "true_counts.csv"), s.grid, {x, y});

    PipelineConfig cfg;
    cfg.crash_points = join(a.out_dir, "crash_points.csv");
    cfg.highg_points = join(a.out_dir, "highg_points.csv");
    cfg.poi_points = join(a.out_dir, "pois.csv");
    cfg.min_x = s.grid.origin_x;
    cfg.min_y = s.grid.origin_y;
    cfg.max_x = s.grid.origin_x + static_cast<double>(s.grid.n_cols) * s.grid.cell_size;
    cfg.max_y = s.grid.origin_y + static_cast<double>(s.grid.n_rows) * s.grid.cell_size;
    cfg.cell_size = s.grid.cell_size;
    cfg.seed = s.seed;
    cfg.out_dir = join(a.out_dir, "pipeline_out");
    write_text_file(join(a.out_dir, "synth_config.json"), config_to_json(cfg));

    std::cout << "synth: cells=" << s.grid.cell_count() << " crash_points=" << crash_pts.size()
              << " highg_points=" << highg_pts.size() << " pois=" << pois.size() << " -> "
              << a.out_dir << "\n";
    return 0;
}

struct GridArgs {
    std::string crash_path, highg_path;
    std::vector<double> bbox;  // empty or 4 values
    double cell_size = 400.0;
    std::string out_dir = ".";
};

int run_grid(const GridArgs& a) {
    const auto crash_pts = read_points(a.crash_path);
    const auto highg_pts = read_points(a.highg_path);
    PipelineConfig c;
    c.cell_size = a.cell_size;
    if (!a.bbox.empty()) {
        c.min_x = a.bbox[0];
        c.min_y = a.bbox[1];
        c.max_x = a.bbox[2];
        c.max_y = a.bbox[3];
        if (!c.bbox_set()) throw ValidationError("bbox must satisfy max > min on both axes");
    }
    const GridSpec g = resolve_grid(c, crash_pts, highg_pts);
    const auto crash = aggregate_points(crash_pts, g, "crash_count");
    const auto highg = aggregate_points(highg_pts, g, "highg_count");

    fs::create_directories(a.out_dir);
    write_text_file(join(a.out_dir, "grid.json"), grid_to_json(g));
    write_counts(join(a.out_dir, "counts.csv"), g, {crash.counts, highg.counts});
    write_counts_geojson(join(a.out_dir, "counts.geojson"), g, crash.counts, highg.counts);

    std::cout << "grid: cells=" << g.cell_count() << " (" << g.n_rows << "x" << g.n_cols
              << ") in_extent=" << crash.in_extent + highg.in_extent
              << " dropped=" << crash.dropped + highg.dropped << "\n";
    return 0;
}

struct WeightsArgs {
    std::string grid_path;
    std::string kind = "queen";
    std::string out_path = "weights.csv";
};

int run_weights(const WeightsArgs& a) {
    const GridSpec g = grid_from_json(read_text_file(a.grid_path));
    const WeightsMatrix w = a.kind == "queen" ? queen_weights(g) : rook_weights(g);
    write_weights_csv(a.out_path, w);
    std::cout << "weights: " << a.kind << " n=" << w.n << " links=" << w.neighbors.size()
              << " isolates=" << w.isolate_count() << "\n";
    return 0;
}

struct StatArgs {
    std::string counts_path, weights_path;
    std::string var_x = "crash_count", var_y = "highg_count";
    int permutations = 999;
    std::uint64_t seed = 42;
    int threads = 0;
    std::string out_path;
};

int run_global(const StatArgs& a) {
    const CountsTable t = read_counts(a.counts_path);
    const auto& x = pick_variable(t, a.var_x, a.counts_path);
    const auto& y = pick_variable(t, a.var_y, a.counts_path);
    const auto n = static_cast<std::int64_t>(x.values.size());
    const WeightsMatrix base = read_weights_csv(a.weights_path, n);
    const auto rows = standard_global_suite(x, y, base, a.permutations, a.seed, a.threads);
    write_global_csv(a.out_path, rows);
    for (const auto& r : rows)
        std::cout << r.name << ": I=" << format_double(r.statistic)
                  << " pseudo_p=" << format_double(r.pseudo_p) << "\n";
    return 0;
}

int run_local(const StatArgs& a) {
    const CountsTable t = read_counts(a.counts_path);
    const auto& x = pick_variable(t, a.var_x, a.counts_path);
    const auto n = static_cast<std::int64_t>(x.values.size());
    const WeightsMatrix w = include_self(read_weights_csv(a.weights_path, n));
    const auto rows = getis_ord_gstar(x, w, a.permutations, a.seed, a.threads);
    write_local_csv(a.out_path, rows);
    std::int64_t hot = 0;
    for (const auto& r : rows)
        if (r.has_p() && r.statistic > 0.0 && r.pseudo_p < 0.05) ++hot;
    std::cout << "local: gi_star over " << a.var_x << ", hot cells (p<0.05)=" << hot << "\n";
    return 0;
}

int run_bivariate(const StatArgs& a) {
    const CountsTable t = read_counts(a.counts_path);
    const auto& x = pick_variable(t, a.var_x, a.counts_path);
    const auto& y = pick_variable(t, a.var_y, a.counts_path);
    const auto n = static_cast<std::int64_t>(x.values.size());
    const WeightsMatrix w = row_standardize(read_weights_csv(a.weights_path, n));
    const auto rows = bivariate_local_moran(x, y, w, a.permutations, a.seed, a.threads);
    write_local_csv(a.out_path, rows);
    std::int64_t sig = 0;
    for (const auto& r : rows)
        if (r.has_p() && r.pseudo_p < 0.05) ++sig;
    std::cout << "bivariate: " << a.var_x << " x " << a.var_y << ", significant (p<0.05)=" << sig
              << "\n";
    return 0;
}

struct ClassifyArgs {
    std::string grid_path, counts_path, gi_path, bv_path;
    double alpha = 0.05;
    std::string out_dir = ".";
};

int run_classify(const ClassifyArgs& a) {
    const GridSpec g = grid_from_json(read_text_file(a.grid_path));
    const CountsTable t = read_counts(a.counts_path);
    const auto& crash = pick_variable(t, "crash_count", a.counts_path);
    const auto& highg = pick_variable(t, "highg_count", a.counts_path);
    const auto gi = read_local_csv(a.gi_path);
    const auto bv = read_local_csv(a.bv_path);
    const CellsTable table = assemble_cells(crash, highg, gi, bv, a.alpha);

    fs::create_directories(a.out_dir);
    write_cells_csv(join(a.out_dir, "cells.csv"), g, table);
    write_lisa_groups_csv(join(a.out_dir, "lisa_groups.csv"), table.lisa);
    write_hotspot_geojson(join(a.out_dir, "hotspots.geojson"), g, table);
    write_lisa_geojson(join(a.out_dir, "lisa.geojson"), g, table);

    std::array<std::int64_t, 6> counts{};
    for (LisaQuadrant q : table.lisa) ++counts[static_cast<std::size_t>(q)];
    std::cout << "classify:";
    for (int i = 0; i < 6; ++i)
        std::cout << ' ' << to_string(static_cast<LisaQuadrant>(i)) << '='
                  << counts[static_cast<std::size_t>(i)];
    std::cout << "\n";
    return 0;
}

struct CharacterizeArgs {
    std::string grid_path, cells_path, pois_path;
    std::string group_a = "HH", group_b = "LH";
    double alpha = 0.05;
    int threads = 0;
    std::string out_path = "mw_results.csv";
};

int run_characterize(const CharacterizeArgs& a) {
    const GridSpec g = grid_from_json(read_text_file(a.grid_path));
    const CellsTable cells = read_cells_csv(a.cells_path);
    if (static_cast<std::int64_t>(cells.lisa.size()) != g.cell_count())
        throw ValidationError(a.cells_path + " does not match the grid");
    const auto pois = read_points(a.pois_path);
    const auto features = count_pois(pois, g);
    const auto mw = compare_groups(features, cells.lisa, lisa_quadrant_from_string(a.group_a),
                                   lisa_quadrant_from_string(a.group_b), a.alpha, a.threads);
    write_mw_csv(a.out_path, mw);
    std::cout << "characterize: " << mw.size() << " tests (" << a.group_a << " vs " << a.group_b
              << "), no multiple-comparison correction\n";
    return 0;
}

struct PipelineArgs {
    std::string config_path;
    PipelineConfig flags;  // flag values; only applied when the flag was given
    std::vector<double> bbox;
};

int run_pipeline_cmd(CLI::App* sub, PipelineArgs& a) {
    PipelineConfig c;
    if (!a.config_path.empty()) c = config_from_json(read_text_file(a.config_path));
    if (sub->count("--crash") > 0) c.crash_points = a.flags.crash_points;
    if (sub->count("--highg") > 0) c.highg_points = a.flags.highg_points;
    if (sub->count("--pois") > 0) c.poi_points = a.flags.poi_points;
    if (!a.bbox.empty()) {
        c.min_x = a.bbox[0];
        c.min_y = a.bbox[1];
        c.max_x = a.bbox[2];
        c.max_y = a.bbox[3];
    }
    if (sub->count("--cell-size") > 0) c.cell_size = a.flags.cell_size;
    if (sub->count("--weights") > 0) c.weights = a.flags.weights;
    if (sub->count("--permutations") > 0) c.permutations = a.flags.permutations;
    if (sub->count("--seed") > 0) c.seed = a.flags.seed;
    if (sub->count("--alpha") > 0) c.lisa_alpha = a.flags.lisa_alpha;
    if (sub->count("--group-a") > 0) c.group_a = a.flags.group_a;
    if (sub->count("--group-b") > 0) c.group_b = a.flags.group_b;
    if (sub->count("--out-dir") > 0) c.out_dir = a.flags.out_dir;
    if (sub->count("--threads") > 0) c.threads = a.flags.threads;

    const PipelineResult r = run_pipeline(c);
    std::cout << "grid: cells=" << r.grid.cell_count() << " (" << r.grid.n_rows << "x"
              << r.grid.n_cols << ")\n";
    std::cout << "points: crash=" << r.crash_total << " (dropped " << r.crash_dropped
              << ") highg=" << r.highg_total << " (dropped " << r.highg_dropped
              << ") pois=" << r.poi_total << " (dropped " << r.poi_dropped << ")\n";
    std::cout << "lisa:";
    for (int i = 0; i < 6; ++i)
        std::cout << ' ' << to_string(static_cast<LisaQuadrant>(i)) << '='
                  << r.lisa_counts[static_cast<std::size_t>(i)];
    std::cout << "\n";
    std::cout << "characterize: " << r.mw_tests << " tests (" << c.group_a << " vs " << c.group_b
              << "), no multiple-comparison correction\n";
    std::cout << "wrote " << r.artifacts.size() << " artifacts to " << c.out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"accident hotspot analysis over a square grid"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "hotgrid 1.0.0");

    SynthArgs synth_args;
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic dataset from a scenario");
    synth_cmd->add_option("--scenario", synth_args.scenario_path, "scenario JSON file")
        ->required();
    synth_cmd->add_option("--out-dir", synth_args.out_dir, "output directory");

    GridArgs grid_args;
    auto* grid_cmd = app.add_subcommand("grid", "build the grid and aggregate event points");
    grid_cmd->add_option("--crash", grid_args.crash_path, "crash points CSV")->required();
    grid_cmd->add_option("--highg", grid_args.highg_path, "high-G points CSV")->required();
    grid_cmd->add_option("--bbox", grid_args.bbox, "min_x min_y max_x max_y")->expected(4);
    grid_cmd->add_option("--cell-size", grid_args.cell_size, "cell size in meters");
    grid_cmd->add_option("--out-dir", grid_args.out_dir, "output directory");

    WeightsArgs weights_args;
    auto* weights_cmd = app.add_subcommand("weights", "export the contiguity matrix");
    weights_cmd->add_option("--grid", weights_args.grid_path, "grid JSON file")->required();
    weights_cmd->add_option("--kind", weights_args.kind, "contiguity kind")
        ->check(CLI::IsMember({"queen", "rook"}));
    weights_cmd->add_option("--out", weights_args.out_path, "output CSV");

    const auto add_stat_options = [](CLI::App* sub, StatArgs& a, bool wants_y) {
        sub->add_option("--counts", a.counts_path, "per-cell counts CSV")->required();
        sub->add_option("--weights", a.weights_path, "contiguity CSV")->required();
        sub->add_option(wants_y ? "--x" : "--var", a.var_x, "variable column");
        if (wants_y) sub->add_option("--y", a.var_y, "second variable column");
        sub->add_option("-K,--permutations", a.permutations, "conditional permutations");
        sub->add_option("--seed", a.seed, "RNG seed");
        sub->add_option("--threads", a.threads, "worker threads (0 = all cores)");
        sub->add_option("--out", a.out_path, "output CSV")->required();
    };

    StatArgs global_args;
    auto* global_cmd = app.add_subcommand("global", "global autocorrelation statistics");
    add_stat_options(global_cmd, global_args, true);

    StatArgs local_args;
    auto* local_cmd = app.add_subcommand("local", "per-cell hotspot statistic");
    add_stat_options(local_cmd, local_args, false);

    StatArgs bivariate_args;
    auto* bivariate_cmd = app.add_subcommand("bivariate", "per-cell bivariate concordance");
    add_stat_options(bivariate_cmd, bivariate_args, true);

    ClassifyArgs classify_args;
    auto* classify_cmd = app.add_subcommand("classify", "join statistics into labelled tables and maps");
    classify_cmd->add_option("--grid", classify_args.grid_path, "grid JSON file")->required();
    classify_cmd->add_option("--counts", classify_args.counts_path, "per-cell counts CSV")->required();
    classify_cmd->add_option("--gi", classify_args.gi_path, "hotspot statistic CSV")->required();
    classify_cmd->add_option("--bv", classify_args.bv_path, "bivariate statistic CSV")->required();
    classify_cmd->add_option("--alpha", classify_args.alpha, "significance level");
    classify_cmd->add_option("--out-dir", classify_args.out_dir, "output directory");

    CharacterizeArgs char_args;
    auto* char_cmd = app.add_subcommand("characterize", "compare POI features between two groups");
    char_cmd->add_option("--grid", char_args.grid_path, "grid JSON file")->required();
    char_cmd->add_option("--cells", char_args.cells_path, "per-cell results CSV")->required();
    char_cmd->add_option("--pois", char_args.pois_path, "POI points CSV")->required();
    char_cmd->add_option("--group-a", char_args.group_a, "first comparison group");
    char_cmd->add_option("--group-b", char_args.group_b, "second comparison group");
    char_cmd->add_option("--alpha", char_args.alpha, "significance level");
    char_cmd->add_option("--threads", char_args.threads, "worker threads (0 = all cores)");
    char_cmd->add_option("--out", char_args.out_path, "output CSV");

    PipelineArgs pipe_args;
    auto* pipe_cmd = app.add_subcommand("pipeline", "run every stage and write the artifact bundle");
    pipe_cmd->add_option("--config", pipe_args.config_path, "pipeline config JSON");
    pipe_cmd->add_option("--crash", pipe_args.flags.crash_points, "crash points CSV");
    pipe_cmd->add_option("--highg", pipe_args.flags.highg_points, "high-G points CSV");
    pipe_cmd->add_option("--pois", pipe_args.flags.poi_points, "POI points CSV");
    pipe_cmd->add_option("--bbox", pipe_args.bbox, "min_x min_y max_x max_y")->expected(4);
    pipe_cmd->add_option("--cell-size", pipe_args.flags.cell_size, "cell size in meters");
    pipe_cmd->add_option("--weights", pipe_args.flags.weights, "contiguity kind")
        ->check(CLI::IsMember({"queen", "rook"}));
    pipe_cmd->add_option("-K,--permutations", pipe_args.flags.permutations, "conditional permutations");
    pipe_cmd->add_option("--seed", pipe_args.flags.seed, "RNG seed");
    pipe_cmd->add_option("--alpha", pipe_args.flags.lisa_alpha, "significance level");
    pipe_cmd->add_option("--group-a", pipe_args.flags.group_a, "first comparison group");
    pipe_cmd->add_option("--group-b", pipe_args.flags.group_b, "second comparison group");
    pipe_cmd->add_option("--out-dir", pipe_args.flags.out_dir, "output directory");
    pipe_cmd->add_option("--threads", pipe_args.flags.threads, "worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*synth_cmd) return run_synth(synth_args);
        if (*grid_cmd) return run_grid(grid_args);
        if (*weights_cmd) return run_weights(weights_args);
        if (*global_cmd) return run_global(global_args);
        if (*local_cmd) return run_local(local_args);
        if (*bivariate_cmd) return run_bivariate(bivariate_args);
        if (*classify_cmd) return run_classify(classify_args);
        if (*char_cmd) return run_characterize(char_args);
        if (*pipe_cmd) return run_pipeline_cmd(pipe_cmd, pipe_args);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
