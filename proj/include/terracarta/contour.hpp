#pragma once

#include <span>
#include <utility>
#include <vector>

#include "terracarta/raster.hpp"

namespace terracarta {

/// Contouring rule: levels are base + k*interval for integer k >= 0.
struct ContourLevelSpec {
  double base = 0.0;
  double interval = 25.0;
};

struct ContourLine {
  double level = 0.0;
  std::vector<WorldPoint> points;  // closed loops repeat the first vertex

  bool closed() const {
    return points.size() > 2 && points.front() == points.back();
  }
};

struct ContourSet {
  std::vector<ContourLine> lines;
};

/// All lattice levels base + k*interval (k >= 0) inside [zmin, zmax],
/// ascending. Levels below base are never generated.
std::vector<double> contour_levels(double zmin, double zmax,
                                   const ContourLevelSpec& spec);

/// Marching squares over the cell-center lattice with linear edge
/// interpolation. Saddles connect the high corners when the cell average is
/// at or above the level; cells with a nodata corner are skipped; corners
/// exactly at a level are nudged up by 1e-9*interval.
ContourSet extract_contours(const Grid& grid, const ContourLevelSpec& spec);

/// One elevation band of the hypsometric table.
struct BandRow {
  double band_floor = 0.0;
  double area_ha = 0.0;
  std::int64_t cell_count = 0;
};

/// Band areas over half-open intervals [break_i, break_{i+1}); the last band
/// is unbounded above. Cells below the first break land in `underflow`.
struct BandTable {
  std::vector<BandRow> bands;
  BandRow underflow;
};

BandTable band_areas(const Grid& grid, std::span<const double> breaks);

struct ElevationStats {
  double mean = 0.0;
  double std_dev = 0.0;  // population
  double min = 0.0;
  double max = 0.0;
  std::int64_t count = 0;
};

/// Population statistics over non-nodata cells. Throws AllNoData.
ElevationStats elevation_stats(const Grid& grid);

/// Inverse-distance-weighted DEM reconstruction from contour vertices.
struct IdwParams {
  int k_nearest = 12;
  double cutoff_cells = 10.0;   // nodata beyond this many cellsizes
  double densify_cells = 1.0;   // max vertex spacing before interpolation
};

Grid dem_from_contours(const ContourSet& contours, const GridHeader& target,
                       const IdwParams& params = {});

/// Vertical accuracy of a DEM against reference (point, elevation) pairs.
struct AccuracyStats {
  std::int64_t n = 0;        // usable reference points
  std::int64_t skipped = 0;  // outside extent or over nodata
  double mean_error = 0.0;
  double std_dev = 0.0;  // population
  double rmse = 0.0;
};

AccuracyStats vertical_accuracy(
    const Grid& grid, std::span<const std::pair<GeoPoint, double>> reference);

}  // namespace terracarta
