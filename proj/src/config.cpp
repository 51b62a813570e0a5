#include "hotgrid/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hotgrid/errors.hpp"
#include "hotgrid/local_stats.hpp"

namespace hotgrid {

void validate(const PipelineConfig& c) {
    if (c.crash_points.empty()) throw ValidationError("config: crash_points path is required");
    if (c.highg_points.empty()) throw ValidationError("config: highg_points path is required");
    if (c.poi_points.empty()) throw ValidationError("config: poi_points path is required");
    if (!(c.cell_size > 0.0)) throw ValidationError("config: cell_size must be > 0");
    if (c.weights != "queen" && c.weights != "rook")
        throw ValidationError("config: weights must be queen or rook, got " + c.weights);
    if (c.permutations < 1) throw ValidationError("config: permutations must be >= 1");
    if (!(c.lisa_alpha > 0.0 && c.lisa_alpha < 1.0))
        throw ValidationError("config: lisa_alpha must be in (0,1)");
    if (c.out_dir.empty()) throw ValidationError("config: out_dir is required");
    if (c.threads < 0) throw ValidationError("config: threads must be >= 0");
    lisa_quadrant_from_string(c.group_a);
    lisa_quadrant_from_string(c.group_b);
    if (c.group_a == c.group_b) throw ValidationError("config: comparison groups must differ");
}

PipelineConfig config_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("config: invalid JSON: ") + e.what());
    }
    PipelineConfig c;
    try {
        c.crash_points = j.value("crash_points", "");
        c.highg_points = j.value("highg_points", "");
        c.poi_points = j.value("poi_points", "");
        if (j.contains("bbox")) {
            const auto& b = j.at("bbox");
            c.min_x = b.at("min_x").get<double>();
            c.min_y = b.at("min_y").get<double>();
            c.max_x = b.at("max_x").get<double>();
            c.max_y = b.at("max_y").get<double>();
        }
        c.cell_size = j.value("cell_size", 400.0);
        c.weights = j.value("weights", "queen");
        c.permutations = j.value("permutations", 999);
        c.seed = j.value("seed", std::uint64_t{42});
        c.lisa_alpha = j.value("lisa_alpha", 0.05);
        c.group_a = j.value("group_a", "HH");
        c.group_b = j.value("group_b", "LH");
        c.out_dir = j.value("out_dir", "out");
        c.threads = j.value("threads", 0);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("config: bad field: ") + e.what());
    }
    return c;
}

std::string config_to_json(const PipelineConfig& c) {
    nlohmann::json j;
    j["crash_points"] = c.crash_points;
    j["highg_points"] = c.highg_points;
    j["poi_points"] = c.poi_points;
    j["bbox"] = {{"min_x", c.min_x}, {"min_y", c.min_y}, {"max_x", c.max_x}, {"max_y", c.max_y}};
    j["cell_size"] = c.cell_size;
    j["weights"] = c.weights;
    j["permutations"] = c.permutations;
    j["seed"] = c.seed;
    j["lisa_alpha"] = c.lisa_alpha;
    j["group_a"] = c.group_a;
    j["group_b"] = c.group_b;
    j["out_dir"] = c.out_dir;
    j["threads"] = c.threads;
    return j.dump(2) + "\n";
}

GridSpec grid_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("grid: invalid JSON: ") + e.what());
    }
    GridSpec g;
    try {
        g.origin_x = j.at("origin_x").get<double>();
        g.origin_y = j.at("origin_y").get<double>();
        g.cell_size = j.at("cell_size").get<double>();
        g.n_rows = j.at("n_rows").get<std::int64_t>();
        g.n_cols = j.at("n_cols").get<std::int64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("grid: bad field: ") + e.what());
    }
    if (g.n_rows < 1 || g.n_cols < 1 || !(g.cell_size > 0.0))
        throw ValidationError("grid: invalid dimensions");
    return g;
}

std::string grid_to_json(const GridSpec& g) {
    nlohmann::json j;
    j["origin_x"] = g.origin_x;
    j["origin_y"] = g.origin_y;
    j["cell_size"] = g.cell_size;
    j["n_rows"] = g.n_rows;
    j["n_cols"] = g.n_cols;
    return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open " + path + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

}  // namespace hotgrid
