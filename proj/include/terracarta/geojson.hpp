#pragma once

#include <span>
#include <string>

#include "terracarta/contour.hpp"
#include "terracarta/hydrology.hpp"
#include "terracarta/polygonize.hpp"
#include "terracarta/scarcity.hpp"

namespace terracarta {

/// GeoJSON FeatureCollection writers. Coordinates are emitted in the source
/// grid's frame: lon/lat degrees for geographic grids, easting/northing
/// meters otherwise. Output is deterministic for identical inputs.

/// LineString features with property `level` (meters).
std::string contours_to_geojson(const ContourSet& contours);

/// Polygon features with properties `pixel_value`, `cell_count`, `area_ha`.
std::string polygons_to_geojson(std::span<const RegionPolygon> polys);

/// Polygon features with `area_ha`, `mean_elevation_m`.
std::string water_bodies_to_geojson(std::span<const WaterBody> bodies);

/// LineString features with `length_km` and optional `name`.
std::string rivers_to_geojson(std::span<const RiverSegment> rivers);

/// Polygon features with `class` in {normal, critical, very_critical} and
/// `color` in {yellow, orange, red}; zone polygons carry class codes 0/1/2
/// as their pixel value.
std::string zones_to_geojson(std::span<const RegionPolygon> zones);

}  // namespace terracarta
