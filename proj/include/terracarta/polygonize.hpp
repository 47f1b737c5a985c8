#pragma once

#include <cstdint>
#include <vector>

#include "terracarta/raster.hpp"

namespace terracarta {

enum class Connectivity { Four, Eight };

/// Closed vertex ring in grid world coordinates; first point == last point.
/// Outer rings wind counter-clockwise, holes clockwise.
using Ring = std::vector<WorldPoint>;

/// One connected equal-valued raster region as vector geometry.
struct RegionPolygon {
  Ring outer;
  std::vector<Ring> holes;
  double pixel_value = 0.0;
  std::int64_t cell_count = 0;
  double area_ha = 0.0;  // raster-sum area, canonical
};

/// Connected-component labels over eligible, non-nodata, equal-valued cells.
/// Ineligible cells get label -1; labels are assigned in scan order.
struct ComponentLabels {
  Eigen::Array<std::int32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
      labels;
  std::int32_t count = 0;
};

ComponentLabels connected_components(const Grid& grid, const MaskGrid* mask,
                                     Connectivity connectivity);

/// Traces every connected region of equal-valued eligible cells into a
/// polygon whose boundary follows cell edges exactly (collinear vertices
/// merged, no simplification). Output is sorted by (pixel_value, first cell
/// north-to-south, west-to-east). Throws DimensionMismatch when the mask
/// dims differ from the grid's.
std::vector<RegionPolygon> polygonize(const Grid& grid,
                                      const MaskGrid* mask = nullptr,
                                      Connectivity connectivity = Connectivity::Four);

/// Canonical area: the raster-sum stored at polygonize time.
double polygon_area_ha(const RegionPolygon& poly);

/// Shoelace area of the traced rings (outer minus holes) in hectares. For
/// geographic grids the rings are first projected onto a local
/// equirectangular plane about the polygon centroid, so the result is
/// approximate; the raster-sum remains canonical.
double geometry_area_ha(const RegionPolygon& poly, const Crs& crs);

/// Signed shoelace area of one ring in its native plane units.
double ring_signed_area(const Ring& ring);

}  // namespace terracarta
