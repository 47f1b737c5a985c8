#include "terracarta/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "terracarta/sampling.hpp"

namespace terracarta {

std::vector<double> contour_levels(double zmin, double zmax,
                                   const ContourLevelSpec& spec) {
  if (!(spec.interval > 0.0)) fail(Errc::BadInput, "contour interval must be positive");
  if (zmin > zmax) fail(Errc::BadInput, "zmin exceeds zmax");

  std::int64_t k = static_cast<std::int64_t>(
      std::ceil((zmin - spec.base) / spec.interval));
  if (k < 0) k = 0;
  // Correct for rounding at exact lattice hits.
  while (spec.base + k * spec.interval < zmin) ++k;
  while (k > 0 && spec.base + (k - 1) * spec.interval >= zmin) --k;

  std::int64_t k_end = static_cast<std::int64_t>(
      std::floor((zmax - spec.base) / spec.interval));
  while (spec.base + k_end * spec.interval > zmax) --k_end;
  while (spec.base + (k_end + 1) * spec.interval <= zmax) ++k_end;

  std::vector<double> levels;
  for (; k <= k_end; ++k) levels.push_back(spec.base + k * spec.interval);
  return levels;
}

namespace {

// Lattice edge between adjacent cell centers: (r,c,H) joins centers (r,c) and
// (r,c+1); (r,c,V) joins (r,c) and (r+1,c).
std::int64_t edge_key(int r, int c, bool vertical, int ncols) {
  return ((std::int64_t(r) * (ncols + 1) + c) << 1) | (vertical ? 1 : 0);
}

struct LevelTracer {
  const Grid& grid;
  double level;
  double nudge;

  std::vector<std::pair<std::int64_t, std::int64_t>> segments;
  std::unordered_map<std::int64_t, WorldPoint> edge_points;
  std::unordered_map<std::int64_t, std::vector<int>> incident;
  std::vector<std::int64_t> edge_order;  // first-seen keys, for determinism

  LevelTracer(const Grid& g, double lvl, double ndg)
      : grid(g), level(lvl), nudge(ndg) {}

  double effective(int r, int c) const {
    const double z = grid(r, c);
    return z == level ? level + nudge : z;
  }

  WorldPoint center(int r, int c) const {
    return {grid.header().x_of_col(c), grid.header().y_of_row(r)};
  }

  // Crossing point on the lattice edge from corner (r0,c0) to (r1,c1).
  WorldPoint crossing(int r0, int c0, int r1, int c1) const {
    const double z0 = effective(r0, c0);
    const double z1 = effective(r1, c1);
    const double t = (level - z0) / (z1 - z0);
    const WorldPoint a = center(r0, c0);
    const WorldPoint b = center(r1, c1);
    return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
  }

  void add_segment(int r, int c, int e0, int e1) {
    // Local edges of dual cell (r,c): 0 top, 1 right, 2 bottom, 3 left.
    auto resolve = [&](int e) {
      const int ncols = grid.cols();
      switch (e) {
        case 0: return std::tuple{edge_key(r, c, false, ncols), r, c, r, c + 1};
        case 1: return std::tuple{edge_key(r, c + 1, true, ncols), r, c + 1, r + 1, c + 1};
        case 2: return std::tuple{edge_key(r + 1, c, false, ncols), r + 1, c, r + 1, c + 1};
        default: return std::tuple{edge_key(r, c, true, ncols), r, c, r + 1, c};
      }
    };
    auto [k0, a0, b0, a1, b1] = resolve(e0);
    auto [k1, c0_, d0, c1_, d1] = resolve(e1);
    register_edge(k0, a0, b0, a1, b1);
    register_edge(k1, c0_, d0, c1_, d1);
    const int idx = static_cast<int>(segments.size());
    segments.emplace_back(k0, k1);
    incident[k0].push_back(idx);
    incident[k1].push_back(idx);
  }

  void register_edge(std::int64_t key, int r0, int c0, int r1, int c1) {
    if (edge_points.emplace(key, WorldPoint{}).second) {
      edge_points[key] = crossing(r0, c0, r1, c1);
      edge_order.push_back(key);
    }
  }

  void trace_cell(int r, int c) {
    if (!grid.valid(r, c) || !grid.valid(r, c + 1) || !grid.valid(r + 1, c) ||
        !grid.valid(r + 1, c + 1))
      return;

    const double tl = effective(r, c), tr = effective(r, c + 1);
    const double bl = effective(r + 1, c), br = effective(r + 1, c + 1);
    const int mask = (tl > level ? 8 : 0) | (tr > level ? 4 : 0) |
                     (br > level ? 2 : 0) | (bl > level ? 1 : 0);

    switch (mask) {
      case 0: case 15: break;
      case 8: case 7: add_segment(r, c, 0, 3); break;   // TL corner
      case 4: case 11: add_segment(r, c, 0, 1); break;  // TR corner
      case 2: case 13: add_segment(r, c, 1, 2); break;  // BR corner
      case 1: case 14: add_segment(r, c, 2, 3); break;  // BL corner
      case 12: case 3: add_segment(r, c, 3, 1); break;  // horizontal cut
      case 6: case 9: add_segment(r, c, 0, 2); break;   // vertical cut
      case 10: case 5: {
        // Saddle: average at or above the level connects the high corners.
        const bool high_connected = (tl + tr + bl + br) / 4.0 >= level;
        const bool tl_high = mask == 10;
        if (high_connected == tl_high) {
          add_segment(r, c, 0, 1);  // isolate TR side
          add_segment(r, c, 2, 3);  // isolate BL side
        } else {
          add_segment(r, c, 0, 3);  // isolate TL side
          add_segment(r, c, 1, 2);  // isolate BR side
        }
        break;
      }
    }
  }

  std::vector<ContourLine> chain() {
    std::vector<ContourLine> lines;
    std::vector<bool> used(segments.size(), false);

    auto walk = [&](std::int64_t start_key) {
      ContourLine line;
      line.level = level;
      line.points.push_back(edge_points.at(start_key));
      std::int64_t key = start_key;
      while (true) {
        int next = -1;
        for (int idx : incident.at(key))
          if (!used[idx]) { next = idx; break; }
        if (next < 0) break;
        used[next] = true;
        const auto& [a, b] = segments[next];
        key = (a == key) ? b : a;
        line.points.push_back(edge_points.at(key));
      }
      return line;
    };

    // Open chains start at degree-1 crossings, scanned in first-seen order.
    for (std::int64_t key : edge_order)
      if (incident.at(key).size() == 1 && !used[incident.at(key)[0]])
        lines.push_back(walk(key));

    // Remaining segments form closed loops.
    for (std::size_t i = 0; i < segments.size(); ++i) {
      if (used[i]) continue;
      ContourLine loop = walk(segments[i].first);
      lines.push_back(std::move(loop));
    }
    return lines;
  }
};

}  // namespace

ContourSet extract_contours(const Grid& grid, const ContourLevelSpec& spec) {
  if (grid.rows() < 2 || grid.cols() < 2)
    fail(Errc::GridTooSmall, "contouring needs at least a 2x2 grid");

  double zmin = std::numeric_limits<double>::infinity();
  double zmax = -std::numeric_limits<double>::infinity();
  std::int64_t valid = 0;
  for (int r = 0; r < grid.rows(); ++r)
    for (int c = 0; c < grid.cols(); ++c)
      if (grid.valid(r, c)) {
        zmin = std::min(zmin, grid(r, c));
        zmax = std::max(zmax, grid(r, c));
        ++valid;
      }
  if (valid < 4) fail(Errc::GridTooSmall, "fewer than 2x2 non-nodata cells");

  ContourSet out;
  for (double level : contour_levels(zmin, zmax, spec)) {
    LevelTracer tracer(grid, level, 1e-9 * spec.interval);
    for (int r = 0; r + 1 < grid.rows(); ++r)
      for (int c = 0; c + 1 < grid.cols(); ++c) tracer.trace_cell(r, c);
    auto lines = tracer.chain();
    out.lines.insert(out.lines.end(), std::make_move_iterator(lines.begin()),
                     std::make_move_iterator(lines.end()));
  }
  return out;
}

BandTable band_areas(const Grid& grid, std::span<const double> breaks) {
  if (breaks.empty()) fail(Errc::BadInput, "need at least one band break");
  for (std::size_t i = 1; i < breaks.size(); ++i)
    if (!(breaks[i - 1] < breaks[i]))
      fail(Errc::UnsortedBreaks, "breaks must be strictly ascending");

  BandTable table;
  table.bands.resize(breaks.size());
  for (std::size_t i = 0; i < breaks.size(); ++i)
    table.bands[i].band_floor = breaks[i];
  table.underflow.band_floor = -std::numeric_limits<double>::infinity();

  for (int r = 0; r < grid.rows(); ++r) {
    const double ha = cell_area_m2(grid.header(), r) / 10000.0;
    for (int c = 0; c < grid.cols(); ++c) {
      if (!grid.valid(r, c)) continue;
      const double z = grid(r, c);
      BandRow* row;
      if (z < breaks.front()) {
        row = &table.underflow;
      } else {
        const auto it = std::upper_bound(breaks.begin(), breaks.end(), z);
        row = &table.bands[static_cast<std::size_t>(it - breaks.begin()) - 1];
      }
      row->area_ha += ha;
      row->cell_count += 1;
    }
  }
  return table;
}

ElevationStats elevation_stats(const Grid& grid) {
  ElevationStats s;
  s.min = std::numeric_limits<double>::infinity();
  s.max = -std::numeric_limits<double>::infinity();

  // Anchored accumulation keeps constant fields exact.
  double anchor = 0.0;
  bool have_anchor = false;
  double sum = 0.0;
  for (int r = 0; r < grid.rows(); ++r)
    for (int c = 0; c < grid.cols(); ++c)
      if (grid.valid(r, c)) {
        const double z = grid(r, c);
        if (!have_anchor) {
          anchor = z;
          have_anchor = true;
        }
        sum += z - anchor;
        s.min = std::min(s.min, z);
        s.max = std::max(s.max, z);
        ++s.count;
      }
  if (s.count == 0) fail(Errc::AllNoData, "grid has no usable cells");

  s.mean = anchor + sum / s.count;
  double ss = 0.0;
  for (int r = 0; r < grid.rows(); ++r)
    for (int c = 0; c < grid.cols(); ++c)
      if (grid.valid(r, c)) {
        const double d = grid(r, c) - s.mean;
        ss += d * d;
      }
  s.std_dev = std::sqrt(ss / s.count);
  return s;
}

namespace {

struct IdwVertex {
  double x, y, level;
};

// Uniform-bucket index with expanding ring search for k-nearest queries.
class VertexIndex {
 public:
  VertexIndex(std::vector<IdwVertex> vertices, double bucket)
      : vertices_(std::move(vertices)), bucket_(bucket) {
    min_x_ = min_y_ = std::numeric_limits<double>::infinity();
    for (const auto& v : vertices_) {
      min_x_ = std::min(min_x_, v.x);
      min_y_ = std::min(min_y_, v.y);
    }
    nx_ = ny_ = 0;
    for (const auto& v : vertices_) {
      nx_ = std::max(nx_, bx(v.x) + 1);
      ny_ = std::max(ny_, by(v.y) + 1);
    }
    cells_.resize(std::size_t(nx_) * ny_);
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      cells_[std::size_t(by(vertices_[i].y)) * nx_ + bx(vertices_[i].x)]
          .push_back(static_cast<int>(i));
  }

  // K nearest vertices as (dist2, level), unordered; `min_d2` reports the
  // overall nearest distance.
  void k_nearest(double x, double y, int k, std::vector<std::pair<double, double>>& heap,
                 double& min_d2) const {
    heap.clear();
    min_d2 = std::numeric_limits<double>::infinity();
    auto worst = [&] { return heap.front().first; };

    const int cx = bx(x), cy = by(y);
    const int max_ring = std::max(nx_, ny_) + 1;
    for (int ring = 0; ring <= max_ring; ++ring) {
      if (static_cast<int>(heap.size()) == k) {
        const double reach = (ring - 1) * bucket_;
        if (reach > 0.0 && reach * reach > worst()) break;
      }
      for_ring(cx, cy, ring, [&](int bxi, int byi) {
        for (int idx : cells_[std::size_t(byi) * nx_ + bxi]) {
          const auto& v = vertices_[idx];
          const double dx = v.x - x, dy = v.y - y;
          const double d2 = dx * dx + dy * dy;
          min_d2 = std::min(min_d2, d2);
          if (static_cast<int>(heap.size()) < k) {
            heap.emplace_back(d2, v.level);
            std::push_heap(heap.begin(), heap.end());
          } else if (d2 < worst()) {
            std::pop_heap(heap.begin(), heap.end());
            heap.back() = {d2, v.level};
            std::push_heap(heap.begin(), heap.end());
          }
        }
      });
    }
  }

 private:
  int bx(double x) const {
    int b = static_cast<int>(std::floor((x - min_x_) / bucket_));
    return b < 0 ? 0 : b;
  }
  int by(double y) const {
    int b = static_cast<int>(std::floor((y - min_y_) / bucket_));
    return b < 0 ? 0 : b;
  }

  template <typename F>
  void for_ring(int cx, int cy, int ring, F&& f) const {
    const auto visit = [&](int bxi, int byi) {
      if (bxi >= 0 && bxi < nx_ && byi >= 0 && byi < ny_) f(bxi, byi);
    };
    if (ring == 0) {
      visit(cx, cy);
      return;
    }
    for (int i = -ring; i <= ring; ++i) {
      visit(cx + i, cy - ring);
      visit(cx + i, cy + ring);
    }
    for (int i = -ring + 1; i <= ring - 1; ++i) {
      visit(cx - ring, cy + i);
      visit(cx + ring, cy + i);
    }
  }

  std::vector<IdwVertex> vertices_;
  double bucket_;
  double min_x_, min_y_;
  int nx_, ny_;
  std::vector<std::vector<int>> cells_;
};

}  // namespace

Grid dem_from_contours(const ContourSet& contours, const GridHeader& target,
                       const IdwParams& params) {
  std::vector<IdwVertex> vertices;
  const double spacing = params.densify_cells * target.cellsize;
  for (const auto& line : contours.lines) {
    for (std::size_t i = 0; i < line.points.size(); ++i) {
      const WorldPoint& p = line.points[i];
      vertices.push_back({p.x, p.y, line.level});
      if (i + 1 < line.points.size()) {
        const WorldPoint& q = line.points[i + 1];
        const double len = std::hypot(q.x - p.x, q.y - p.y);
        const int subdiv = static_cast<int>(std::ceil(len / spacing));
        for (int s = 1; s < subdiv; ++s) {
          const double t = double(s) / subdiv;
          vertices.push_back(
              {p.x + t * (q.x - p.x), p.y + t * (q.y - p.y), line.level});
        }
      }
    }
  }
  if (vertices.empty()) fail(Errc::EmptyContourSet, "no contour vertices");

  const double cutoff = params.cutoff_cells * target.cellsize;
  VertexIndex index(std::move(vertices), cutoff);

  Grid out(target, target.nodata);
  std::vector<std::pair<double, double>> heap;
  for (int r = 0; r < target.nrows; ++r) {
    const double y = target.y_of_row(r);
    for (int c = 0; c < target.ncols; ++c) {
      const double x = target.x_of_col(c);
      double min_d2 = 0.0;
      index.k_nearest(x, y, params.k_nearest, heap, min_d2);
      if (heap.empty() || min_d2 > cutoff * cutoff) continue;
      if (min_d2 < 1e-24) {
        for (const auto& [d2, level] : heap)
          if (d2 == min_d2) out(r, c) = level;
        continue;
      }
      // Anchored weighted mean: exact when all contributing levels agree.
      const double anchor = heap.front().second;
      double wsum = 0.0, dsum = 0.0;
      for (const auto& [d2, level] : heap) {
        const double w = 1.0 / d2;  // inverse distance power 2
        wsum += w;
        dsum += w * (level - anchor);
      }
      out(r, c) = anchor + dsum / wsum;
    }
  }
  return out;
}

AccuracyStats vertical_accuracy(
    const Grid& grid, std::span<const std::pair<GeoPoint, double>> reference) {
  std::vector<double> errors;
  errors.reserve(reference.size());
  std::int64_t skipped = 0;
  for (const auto& [point, z_ref] : reference) {
    std::optional<double> z;
    try {
      z = sample_elevation(grid, point, SampleMethod::Bilinear);
    } catch (const Error& e) {
      if (e.code() != Errc::OutOfExtent) throw;
    }
    if (!z) {
      ++skipped;
      continue;
    }
    errors.push_back(*z - z_ref);
  }
  if (errors.empty()) fail(Errc::NoUsablePoints, "no usable reference points");

  AccuracyStats s;
  s.n = static_cast<std::int64_t>(errors.size());
  s.skipped = skipped;
  double sum = 0.0, sq = 0.0;
  for (double e : errors) {
    sum += e;
    sq += e * e;
  }
  s.mean_error = sum / s.n;
  s.rmse = std::sqrt(sq / s.n);
  double ss = 0.0;
  for (double e : errors) ss += (e - s.mean_error) * (e - s.mean_error);
  s.std_dev = std::sqrt(ss / s.n);
  return s;
}

}  // namespace terracarta
