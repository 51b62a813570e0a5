#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hotgrid/grid.hpp"
#include "hotgrid/local_stats.hpp"

namespace hotgrid {

/// Per-type POI counts over the grid, one dense column per observed type.
/// Types are sorted and unique; column k belongs to types[k].
struct PoiFeatureMatrix {
    std::int64_t n_cells = 0;
    std::vector<std::string> types;
    std::vector<std::vector<double>> columns;
    std::int64_t dropped = 0;  // POIs outside the grid extent

    const std::vector<double>& column(const std::string& type) const;
};

/// Bins POIs with the same half-open cell membership rule used for events.
/// Points with an empty kind are rejected.
PoiFeatureMatrix count_pois(const std::vector<EventPoint>& pois, const GridSpec& g);

/// One Mann-Whitney comparison row; u_statistic is for group A.
struct MWResult {
    std::string poi_type;
    double u_statistic = 0.0;
    double p_value = 1.0;
    double mean_group_a = 0.0;
    double mean_group_b = 0.0;
    bool significant = false;
    bool exact = false;
    std::int64_t n_a = 0;
    std::int64_t n_b = 0;
};

/// Tests every POI type between the cells labelled group_a and group_b,
/// sorted ascending by (p_value, poi_type). Throws DegenerateInputError
/// naming the quadrant when either group has no cells.
std::vector<MWResult> compare_groups(const PoiFeatureMatrix& features,
                                     const std::vector<LisaQuadrant>& quadrants,
                                     LisaQuadrant group_a, LisaQuadrant group_b, double alpha,
                                     int threads = 0);

}  // namespace hotgrid
