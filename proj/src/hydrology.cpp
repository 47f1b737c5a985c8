#include "terracarta/hydrology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "terracarta/sampling.hpp"

namespace terracarta {

// Neighbor offsets in FlowDir order: E, SE, S, SW, W, NW, N, NE.
const int kFlowDr[8] = {0, 1, 1, 1, 0, -1, -1, -1};
const int kFlowDc[8] = {1, 1, 0, -1, -1, -1, 0, 1};

Grid slope_map(const Grid& dem) {
  if (dem.rows() < 3 || dem.cols() < 3)
    fail(Errc::GridTooSmall, "slope needs at least a 3x3 grid");

  const GridHeader& h = dem.header();
  Grid out(h, h.nodata);
  const double dy = cell_height_m(h);

  for (int r = 1; r + 1 < dem.rows(); ++r) {
    const double dx = cell_width_m(h, r);
    for (int c = 1; c + 1 < dem.cols(); ++c) {
      bool ok = true;
      double w[3][3];
      for (int i = -1; i <= 1 && ok; ++i)
        for (int j = -1; j <= 1 && ok; ++j) {
          if (!dem.valid(r + i, c + j)) ok = false;
          else w[i + 1][j + 1] = dem(r + i, c + j);
        }
      if (!ok) continue;
      // Horn 1981: a b c / d e f / g h i, x east, y north (row 0 = north).
      const double dzdx =
          ((w[0][2] + 2.0 * w[1][2] + w[2][2]) -
           (w[0][0] + 2.0 * w[1][0] + w[2][0])) / (8.0 * dx);
      const double dzdy =
          ((w[0][0] + 2.0 * w[0][1] + w[0][2]) -
           (w[2][0] + 2.0 * w[2][1] + w[2][2])) / (8.0 * dy);
      out(r, c) = std::atan(std::sqrt(dzdx * dzdx + dzdy * dzdy)) / kDegToRad;
    }
  }
  return out;
}

namespace {

struct PqCell {
  double z;
  int r, c;
  std::int64_t seq;  // insertion order; makes pop order deterministic

  bool operator>(const PqCell& o) const {
    if (z != o.z) return z > o.z;
    return seq > o.seq;
  }
};

using MinQueue =
    std::priority_queue<PqCell, std::vector<PqCell>, std::greater<PqCell>>;

}  // namespace

Grid fill_sinks(const Grid& dem, double epsilon) {
  const int nr = dem.rows(), nc = dem.cols();
  Grid out = dem;

  Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
      closed(nr, nc);
  closed.setZero();

  MinQueue open;
  std::int64_t seq = 0;

  // Outlets: cells on the border plus cells adjacent to nodata.
  auto is_outlet = [&](int r, int c) {
    if (r == 0 || r == nr - 1 || c == 0 || c == nc - 1) return true;
    for (int n = 0; n < 8; ++n)
      if (!dem.valid(r + kFlowDr[n], c + kFlowDc[n])) return true;
    return false;
  };

  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c) {
      if (!dem.valid(r, c)) {
        closed(r, c) = 1;
        continue;
      }
      if (is_outlet(r, c)) {
        open.push({out(r, c), r, c, seq++});
        closed(r, c) = 1;
      }
    }

  while (!open.empty()) {
    const PqCell cell = open.top();
    open.pop();
    for (int n = 0; n < 8; ++n) {
      const int rr = cell.r + kFlowDr[n], cc = cell.c + kFlowDc[n];
      if (rr < 0 || rr >= nr || cc < 0 || cc >= nc || closed(rr, cc)) continue;
      closed(rr, cc) = 1;
      if (out(rr, cc) <= cell.z) out(rr, cc) = cell.z + epsilon;
      open.push({out(rr, cc), rr, cc, seq++});
    }
  }
  return out;
}

FlowGrid flow_directions(const Grid& dem) {
  const int nr = dem.rows(), nc = dem.cols();
  FlowGrid flow;
  flow.header = dem.header();
  flow.direction.setConstant(nr, nc,
                             static_cast<std::uint8_t>(FlowDir::NoData));
  flow.accumulation.setZero(nr, nc);

  const double dy = cell_height_m(dem.header());
  for (int r = 0; r < nr; ++r) {
    const double dx = cell_width_m(dem.header(), r);
    const double dist[8] = {dx, std::hypot(dx, dy), dy, std::hypot(dx, dy),
                            dx, std::hypot(dx, dy), dy, std::hypot(dx, dy)};
    for (int c = 0; c < nc; ++c) {
      if (!dem.valid(r, c)) continue;
      const double z = dem(r, c);
      double best = 0.0;
      int best_n = -1;
      for (int n = 0; n < 8; ++n) {
        const int rr = r + kFlowDr[n], cc = c + kFlowDc[n];
        if (rr < 0 || rr >= nr || cc < 0 || cc >= nc) continue;
        if (!dem.valid(rr, cc)) continue;
        const double drop = (z - dem(rr, cc)) / dist[n];
        if (drop > best) {  // strict: earlier neighbor order wins ties
          best = drop;
          best_n = n;
        }
      }
      flow.direction(r, c) = static_cast<std::uint8_t>(
          best_n < 0 ? FlowDir::Sink : static_cast<FlowDir>(best_n));
    }
  }

  // Defensive acyclicity check: strict descent cannot cycle, so a cycle here
  // means the routing rule was changed without refilling the DEM.
  Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
      state(nr, nc);
  state.setZero();  // 0 unvisited, 1 on path, 2 done
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c) {
      if (state(r, c) != 0) continue;
      int cr = r, cc = c;
      std::vector<std::pair<int, int>> path;
      while (true) {
        const FlowDir d = flow.dir(cr, cc);
        if (d == FlowDir::NoData || d == FlowDir::Sink || state(cr, cc) == 2)
          break;
        if (state(cr, cc) == 1)
          fail(Errc::NotSinkFilled, "flow direction cycle; run fill_sinks first");
        state(cr, cc) = 1;
        path.emplace_back(cr, cc);
        const int n = static_cast<int>(d);
        cr += kFlowDr[n];
        cc += kFlowDc[n];
      }
      for (auto [pr, pc] : path) state(pr, pc) = 2;
      state(r, c) = 2;
    }
  return flow;
}

FlowGrid flow_accumulation(FlowGrid flow) {
  const int nr = flow.direction.rows(), nc = flow.direction.cols();
  flow.accumulation.setZero(nr, nc);

  Eigen::Array<std::int32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
      indegree(nr, nc);
  indegree.setZero();

  std::int64_t valid = 0;
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c) {
      const FlowDir d = flow.dir(r, c);
      if (d == FlowDir::NoData) continue;
      ++valid;
      if (d == FlowDir::Sink) continue;
      const int n = static_cast<int>(d);
      indegree(r + kFlowDr[n], c + kFlowDc[n]) += 1;
    }

  std::vector<std::pair<int, int>> ready;
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c)
      if (flow.dir(r, c) != FlowDir::NoData && indegree(r, c) == 0)
        ready.emplace_back(r, c);

  std::int64_t processed = 0;
  while (!ready.empty()) {
    const auto [r, c] = ready.back();
    ready.pop_back();
    ++processed;
    flow.accumulation(r, c) += 1;  // self
    const FlowDir d = flow.dir(r, c);
    if (d == FlowDir::Sink) continue;
    const int n = static_cast<int>(d);
    const int rr = r + kFlowDr[n], cc = c + kFlowDc[n];
    flow.accumulation(rr, cc) += flow.accumulation(r, c);
    if (--indegree(rr, cc) == 0) ready.emplace_back(rr, cc);
  }
  if (processed != valid)
    fail(Errc::CycleDetected, "flow direction graph contains a cycle");

  flow.has_accumulation = true;
  return flow;
}

MaskGrid detect_water_cells(const Grid& dem, const Grid& slope,
                            double max_slope_deg) {
  if (slope.rows() != dem.rows() || slope.cols() != dem.cols())
    fail(Errc::DimensionMismatch, "slope dims differ from DEM dims");

  const Grid filled = fill_sinks(dem);
  MaskGrid mask(dem.header(), 0);
  for (int r = 0; r < dem.rows(); ++r)
    for (int c = 0; c < dem.cols(); ++c) {
      if (!dem.valid(r, c) || !slope.valid(r, c)) continue;
      const double s = slope(r, c);
      if (s > max_slope_deg) continue;
      const bool raised = filled(r, c) - dem(r, c) > 0.0;
      if (raised || s == 0.0) mask(r, c) = 1;
    }
  return mask;
}

std::vector<WaterBody> extract_water_bodies(const Grid& dem, const Grid& slope,
                                            double max_slope_deg,
                                            double min_area_ha) {
  const MaskGrid water = detect_water_cells(dem, slope, max_slope_deg);

  // Polygonize the binary water raster, restricted to water cells.
  Grid binary(dem.header(), 0.0);
  for (int r = 0; r < dem.rows(); ++r)
    for (int c = 0; c < dem.cols(); ++c) binary(r, c) = water(r, c) ? 1.0 : 0.0;

  auto polys = polygonize(binary, &water, Connectivity::Four);

  // Mean elevations per component. Every polygon carries pixel value 1, so
  // polygonize's stable ordering equals the component label order.
  const ComponentLabels comp =
      connected_components(binary, &water, Connectivity::Four);
  std::vector<double> zsum(comp.count, 0.0);
  std::vector<std::int64_t> zcnt(comp.count, 0);
  for (int r = 0; r < dem.rows(); ++r)
    for (int c = 0; c < dem.cols(); ++c) {
      const std::int32_t label = comp.labels(r, c);
      if (label < 0) continue;
      zsum[label] += dem(r, c);
      zcnt[label] += 1;
    }

  std::vector<WaterBody> out;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (polys[i].area_ha < min_area_ha) continue;
    WaterBody body;
    body.polygon = std::move(polys[i]);
    if (i < zsum.size() && zcnt[i] > 0) body.mean_elevation = zsum[i] / zcnt[i];
    out.push_back(std::move(body));
  }
  return out;
}

std::vector<RiverSegment> extract_rivers(const FlowGrid& flow,
                                         std::int64_t accumulation_threshold) {
  if (!flow.has_accumulation)
    fail(Errc::BadInput, "extract_rivers needs flow accumulation");

  const int nr = flow.direction.rows(), nc = flow.direction.cols();
  const GridHeader& h = flow.header;

  auto is_channel = [&](int r, int c) {
    return flow.dir(r, c) != FlowDir::NoData &&
           flow.accumulation(r, c) >= accumulation_threshold;
  };

  // Channel inflow counts mark junctions and heads.
  Eigen::Array<std::int32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
      inflow(nr, nc);
  inflow.setZero();
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c) {
      if (!is_channel(r, c)) continue;
      const FlowDir d = flow.dir(r, c);
      if (d == FlowDir::Sink) continue;
      const int n = static_cast<int>(d);
      const int rr = r + kFlowDr[n], cc = c + kFlowDc[n];
      if (is_channel(rr, cc)) inflow(rr, cc) += 1;
    }

  const double dy = cell_height_m(h);
  auto step_len_m = [&](int r, int dir) {
    const double dx = cell_width_m(h, r);
    switch (static_cast<FlowDir>(dir)) {
      case FlowDir::E: case FlowDir::W: return dx;
      case FlowDir::N: case FlowDir::S: return dy;
      default: return std::hypot(dx, dy);
    }
  };

  std::vector<RiverSegment> out;
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c) {
      if (!is_channel(r, c)) continue;
      const bool head = inflow(r, c) == 0;
      const bool junction = inflow(r, c) >= 2;
      if (!head && !junction) continue;

      RiverSegment seg;
      int cr = r, cc = c;
      double length_m = 0.0;
      seg.path.push_back({h.x_of_col(cc), h.y_of_row(cr)});
      while (true) {
        const FlowDir d = flow.dir(cr, cc);
        if (d == FlowDir::Sink) break;
        const int n = static_cast<int>(d);
        const int rr = cr + kFlowDr[n], ncol = cc + kFlowDc[n];
        if (!is_channel(rr, ncol)) break;
        length_m += step_len_m(cr, n);
        cr = rr;
        cc = ncol;
        seg.path.push_back({h.x_of_col(cc), h.y_of_row(cr)});
        if (inflow(cr, cc) >= 2) break;  // junction ends the segment
      }
      if (seg.path.size() < 2) continue;
      seg.length_km = length_m / 1000.0;
      out.push_back(std::move(seg));
    }
  return out;
}

void assign_river_names(std::vector<RiverSegment>& rivers,
                        std::span<const RiverSeed> seeds, const GridHeader& h) {
  for (const RiverSeed& seed : seeds) {
    const WorldPoint p = to_grid_frame(h, seed.point);
    double best = std::numeric_limits<double>::infinity();
    RiverSegment* best_seg = nullptr;
    for (auto& seg : rivers)
      for (const WorldPoint& q : seg.path) {
        const double d2 = (q.x - p.x) * (q.x - p.x) + (q.y - p.y) * (q.y - p.y);
        if (d2 < best) {
          best = d2;
          best_seg = &seg;
        }
      }
    if (best_seg) best_seg->name = seed.name;
  }
}

WaterInventory water_inventory(std::vector<WaterBody> bodies,
                               std::vector<RiverSegment> rivers,
                               double district_area_ha) {
  if (!(district_area_ha > 0.0))
    fail(Errc::BadInput, "district area must be positive");

  WaterInventory inv;
  inv.bodies = std::move(bodies);
  inv.rivers = std::move(rivers);
  inv.district_area_ha = district_area_ha;
  for (const auto& b : inv.bodies) inv.total_water_ha += b.polygon.area_ha;
  inv.water_fraction_pct = 100.0 * inv.total_water_ha / district_area_ha;
  return inv;
}

MaskGrid water_source_mask(const Grid& dem, const Grid& slope,
                           double max_slope_deg, double min_area_ha,
                           const FlowGrid* flow,
                           std::int64_t accumulation_threshold) {
  const MaskGrid detected = detect_water_cells(dem, slope, max_slope_deg);

  Grid binary(dem.header(), 0.0);
  for (int r = 0; r < dem.rows(); ++r)
    for (int c = 0; c < dem.cols(); ++c)
      binary(r, c) = detected(r, c) ? 1.0 : 0.0;
  const ComponentLabels comp =
      connected_components(binary, &detected, Connectivity::Four);

  std::vector<double> area_ha(comp.count, 0.0);
  for (int r = 0; r < dem.rows(); ++r) {
    const double ha = cell_area_m2(dem.header(), r) / 10000.0;
    for (int c = 0; c < dem.cols(); ++c)
      if (comp.labels(r, c) >= 0) area_ha[comp.labels(r, c)] += ha;
  }

  MaskGrid mask(dem.header(), 0);
  for (int r = 0; r < dem.rows(); ++r)
    for (int c = 0; c < dem.cols(); ++c) {
      const std::int32_t label = comp.labels(r, c);
      if (label >= 0 && area_ha[label] >= min_area_ha) mask(r, c) = 1;
    }

  if (flow && flow->has_accumulation) {
    for (int r = 0; r < dem.rows(); ++r)
      for (int c = 0; c < dem.cols(); ++c)
        if (flow->dir(r, c) != FlowDir::NoData &&
            flow->accumulation(r, c) >= accumulation_threshold)
          mask(r, c) = 1;
  }
  return mask;
}

}  // namespace terracarta
