#pragma once

#include <optional>
#include <vector>

#include "terracarta/raster.hpp"

namespace terracarta {

enum class SampleMethod { Nearest, Bilinear };

/// One station along a terrain profile.
struct ProfileSample {
  double distance_m = 0.0;
  std::optional<double> elevation;  // empty where the DEM has no data
  GeoPoint point;
};

/// Converts a lon/lat point to the grid's planar frame (identity for
/// geographic grids, forward UTM projection otherwise).
WorldPoint to_grid_frame(const GridHeader& h, const GeoPoint& p);

/// Samples a raster at a planar point in the grid's own frame. Nearest
/// returns the containing cell's value; Bilinear interpolates the four
/// surrounding cell centers and returns nullopt when any contributing cell
/// is nodata. Throws OutOfExtent for points outside the grid rectangle.
std::optional<double> sample_at_xy(const Grid& grid, double x, double y,
                                   SampleMethod method);

/// Samples the grid at a lon/lat point.
std::optional<double> sample_elevation(const Grid& grid, const GeoPoint& p,
                                       SampleMethod method);

/// Bilinear elevations along the a-b segment at `step_m` spacing plus the
/// exact endpoint; distances are spherical law-of-cosines meters. a == b
/// degenerates to a single sample.
std::vector<ProfileSample> terrain_profile(const Grid& grid, const GeoPoint& a,
                                           const GeoPoint& b, double step_m);

}  // namespace terracarta
