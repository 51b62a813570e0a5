#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hotgrid/grid.hpp"

namespace hotgrid {

/// Which intensity field a planted blob multiplies.
enum class BlobTarget { Both, X, Y };

/// Square bump: cells within Chebyshev `radius` of the center get their
/// intensity multiplier raised by `amplitude`.
struct Blob {
    std::int64_t row = 0;
    std::int64_t col = 0;
    std::int64_t radius = 0;
    double amplitude = 0.0;
    BlobTarget target = BlobTarget::Both;
};

/// Uniformly scattered POIs of one kind.
struct PoiSpec {
    std::string kind;
    std::int64_t count = 0;
};

/// Full description of a synthetic dataset. Identical scenarios (seed
/// included) always generate identical fields.
struct Scenario {
    GridSpec grid;
    double baseline_intensity = 2.0;
    std::vector<Blob> blobs;
    double coupling = 0.0;  // in [-1, 1]; correlation knob between x and y draws
    std::uint64_t seed = 42;
    std::vector<PoiSpec> pois;
};

void validate(const Scenario& s);

/// Expected-count fields (lambda_x, lambda_y) per cell:
/// lambda = baseline * (1 + sum of amplitudes of covering blobs).
std::pair<std::vector<double>, std::vector<double>> intensity_fields(const Scenario& s);

/// Poisson counts per cell, named crash_count / highg_count. Nonnegative
/// coupling shares a common Poisson shock between the pair; negative coupling
/// mixes in antithetic quantile draws.
std::pair<CellVariable, CellVariable> gen_counts(const Scenario& s);

/// Scatters each cell's count uniformly inside the cell, so re-aggregating
/// the points reproduces the counts exactly.
std::vector<EventPoint> counts_to_points(const CellVariable& counts, const GridSpec& g,
                                         std::uint64_t seed);

/// Uniform POIs over the grid extent per PoiSpec entry.
std::vector<EventPoint> gen_pois(const Scenario& s);

Scenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const Scenario& s);

}  // namespace hotgrid
