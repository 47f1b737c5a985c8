#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "terracarta/contour.hpp"
#include "terracarta/polygonize.hpp"
#include "terracarta/raster.hpp"

namespace terracarta {

struct Village {
  std::string name;
  GeoPoint location;
  std::optional<double> elevation_m;  // field value beats DEM sampling
};

/// Exact Euclidean distance to the nearest water cell, in meters, two-pass
/// transform. Geographic grids use a constant east-west cell width taken at
/// the grid's mean latitude so the two passes stay separable; the value at a
/// cell equals the brute-force nearest-water-cell distance under that
/// metric. Throws NoWaterCells.
Grid distance_to_water(const MaskGrid& water);

struct ScarcityParams {
  double w_dist = 1.0;
  double w_elev = 0.25;
  double d_ref_m = 5000.0;
  double t1 = 1.0;  // Normal/Critical score threshold
  double t2 = 2.0;  // Critical/VeryCritical score threshold
};

/// score = w_dist * distance/d_ref + w_elev * max(0, (z - mean)/std).
/// Monotone non-decreasing in both distance and elevation.
double scarcity_score(double distance_m, double elevation_m, double dem_mean,
                      double dem_std, const ScarcityParams& params = {});

enum class ScarcityClass { Normal = 0, Critical = 1, VeryCritical = 2 };

ScarcityClass classify_score(double score, const ScarcityParams& params);

const char* scarcity_class_name(ScarcityClass c);  // normal/critical/very_critical
const char* scarcity_class_color(ScarcityClass c);  // yellow/orange/red

struct ScarcityRow {
  Village village;
  bool in_extent = false;
  double distance_m = 0.0;
  double elevation_m = 0.0;
  double score = 0.0;
  ScarcityClass cls = ScarcityClass::Normal;
};

struct ScarcityReport {
  std::vector<ScarcityRow> rows;
};

/// Per-village distance (bilinear) and elevation sampling plus score-based
/// classing. Villages outside the extent are reported with in_extent=false,
/// never fatal. Throws BadInput when thresholds are not ordered t1 < t2.
ScarcityReport classify_villages(std::span<const Village> villages,
                                 const Grid& distance, const Grid& dem,
                                 const ScarcityParams& params = {});

/// Per-cell classing of the whole raster, polygonized 4-connected; the
/// polygon pixel_value carries the class code 0/1/2.
std::vector<RegionPolygon> scarcity_zones(const Grid& distance, const Grid& dem,
                                          const ScarcityParams& params = {});

/// Village CSV: header `name,lon,lat[,elevation_m]`, UTF-8.
std::vector<Village> parse_villages_csv(std::string_view text);
std::vector<Village> read_villages_csv(const std::filesystem::path& file);

}  // namespace terracarta
