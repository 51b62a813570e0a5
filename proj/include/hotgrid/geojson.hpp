#pragma once

#include <string>

#include "hotgrid/csv.hpp"
#include "hotgrid/grid.hpp"

namespace hotgrid {

/// RFC-7946 FeatureCollection writers: one Polygon feature per cell, feature
/// id = cell_id, collection bbox = grid extent. Coordinates are the planar
/// grid coordinates passed through unmodified (projected meters, not lon/lat,
/// so desk-scale tools can verify geometry directly). NaN becomes null.

/// Grid + raw counts layer.
void write_counts_geojson(const std::string& path, const GridSpec& g,
                          const CellVariable& crash, const CellVariable& highg);

/// Hotspot map layer: full per-cell results, styled on hotspot_class.
void write_hotspot_geojson(const std::string& path, const GridSpec& g, const CellsTable& t);

/// Bivariate concordance map layer: full per-cell results plus the long-form
/// lisa_label string, styled on lisa_quadrant.
void write_lisa_geojson(const std::string& path, const GridSpec& g, const CellsTable& t);

}  // namespace hotgrid
