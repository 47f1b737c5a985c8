#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "terracarta/polygonize.hpp"
#include "terracarta/raster.hpp"

namespace terracarta {

/// Slope in degrees from the Horn 3x3 kernel. Border cells and cells with a
/// nodata neighbor get nodata. Geographic grids use per-row metric cell
/// widths. Throws GridTooSmall below 3x3.
Grid slope_map(const Grid& dem);

/// Priority-flood depression filling. Output is >= input everywhere and
/// every valid cell gains a descending 8-neighbor path to the grid border
/// (or to a nodata cell); flats are oriented with an epsilon gradient per
/// step. Idempotent.
Grid fill_sinks(const Grid& dem, double epsilon = 1e-5);

/// D8 neighbor order, which is also the tie-break order.
enum class FlowDir : std::uint8_t {
  E = 0, SE, S, SW, W, NW, N, NE,
  Sink,    // no lower neighbor; drains out of the grid
  NoData,
};

extern const int kFlowDr[8];
extern const int kFlowDc[8];

struct FlowGrid {
  GridHeader header;
  Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
      direction;
  Eigen::Array<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
      accumulation;  // 0 until flow_accumulation runs
  bool has_accumulation = false;

  FlowDir dir(int r, int c) const {
    return static_cast<FlowDir>(direction(r, c));
  }
};

/// Steepest-descent D8 directions (drop over distance, diagonals scaled by
/// sqrt(2)); ties break in FlowDir order. Cells with no strictly lower
/// neighbor become Sink. Throws NotSinkFilled if the direction graph turns
/// out cyclic, which signals the DEM was not sink-filled.
FlowGrid flow_directions(const Grid& dem_filled);

/// Upstream cell counts (including self) in topological order.
/// Throws CycleDetected on a cyclic direction graph.
FlowGrid flow_accumulation(FlowGrid flow);

/// Water detection rule: slope at or below `max_slope_deg` and either inside
/// a depression (cell raised by fill_sinks) or perfectly flat.
MaskGrid detect_water_cells(const Grid& dem, const Grid& slope,
                            double max_slope_deg);

struct WaterBody {
  RegionPolygon polygon;
  double mean_elevation = 0.0;
};

/// Water-body extraction: detect, polygonize (4-connected), drop components
/// under `min_area_ha`, attach mean DEM elevation.
std::vector<WaterBody> extract_water_bodies(const Grid& dem, const Grid& slope,
                                            double max_slope_deg,
                                            double min_area_ha);

struct RiverSegment {
  std::vector<WorldPoint> path;  // cell centers, downstream order
  double length_km = 0.0;
  std::string name;
};

/// Channel cells (accumulation >= threshold) decomposed into segments at
/// junctions; junction cells are shared between the inflowing and outflowing
/// segments. An impossible threshold yields an empty network.
std::vector<RiverSegment> extract_rivers(const FlowGrid& flow,
                                         std::int64_t accumulation_threshold);

struct RiverSeed {
  std::string name;
  GeoPoint point;
};

/// Attaches each seed's name to the segment passing nearest to it.
void assign_river_names(std::vector<RiverSegment>& rivers,
                        std::span<const RiverSeed> seeds, const GridHeader& h);

struct WaterInventory {
  std::vector<WaterBody> bodies;
  std::vector<RiverSegment> rivers;
  double total_water_ha = 0.0;
  double district_area_ha = 0.0;
  double water_fraction_pct = 0.0;
};

WaterInventory water_inventory(std::vector<WaterBody> bodies,
                               std::vector<RiverSegment> rivers,
                               double district_area_ha);

/// Union mask of retained water-body cells and (optionally) river channel
/// cells; the source set for the scarcity distance transform.
MaskGrid water_source_mask(const Grid& dem, const Grid& slope,
                           double max_slope_deg, double min_area_ha,
                           const FlowGrid* flow = nullptr,
                           std::int64_t accumulation_threshold = 0);

}  // namespace terracarta
