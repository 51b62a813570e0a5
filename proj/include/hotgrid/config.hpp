#pragma once

#include <cstdint>
#include <string>

#include "hotgrid/grid.hpp"

namespace hotgrid {

/// Everything a full pipeline run depends on. Round-trips losslessly through
/// JSON. `threads` only controls scheduling and is excluded from the run
/// manifest; outputs must not depend on it.
struct PipelineConfig {
    std::string crash_points;
    std::string highg_points;
    std::string poi_points;

    // Analysis extent. When max <= min on either axis the bbox is treated as
    // unset and derived from the union of the two event point files.
    double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

    double cell_size = 400.0;
    std::string weights = "queen";  // queen | rook
    int permutations = 999;
    std::uint64_t seed = 42;
    double lisa_alpha = 0.05;
    std::string group_a = "HH";  // Mann-Whitney comparison groups
    std::string group_b = "LH";
    std::string out_dir = "out";
    int threads = 0;  // 0 = all available cores

    bool bbox_set() const { return max_x > min_x && max_y > min_y; }
};

void validate(const PipelineConfig& c);

PipelineConfig config_from_json(const std::string& text);
std::string config_to_json(const PipelineConfig& c);

GridSpec grid_from_json(const std::string& text);
std::string grid_to_json(const GridSpec& g);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace hotgrid
