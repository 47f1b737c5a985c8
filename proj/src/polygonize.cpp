#include "terracarta/polygonize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace terracarta {

namespace {

bool eligible_cell(const Grid& grid, const MaskGrid* mask, int r, int c) {
  if (!grid.valid(r, c)) return false;
  return !mask || (*mask)(r, c) != 0;
}

}  // namespace

ComponentLabels connected_components(const Grid& grid, const MaskGrid* mask,
                                     Connectivity connectivity) {
  if (mask && (mask->rows() != grid.rows() || mask->cols() != grid.cols()))
    fail(Errc::DimensionMismatch, "mask dims differ from grid dims");

  const int nr = grid.rows(), nc = grid.cols();
  ComponentLabels out;
  out.labels.setConstant(nr, nc, -1);

  static const int dr8[8] = {0, 1, 1, 1, 0, -1, -1, -1};
  static const int dc8[8] = {1, 1, 0, -1, -1, -1, 0, 1};
  const int nnbr = connectivity == Connectivity::Four ? 4 : 8;
  static const int four_idx[4] = {0, 2, 4, 6};  // E, S, W, N

  std::vector<std::pair<int, int>> stack;
  for (int r = 0; r < nr; ++r) {
    for (int c = 0; c < nc; ++c) {
      if (out.labels(r, c) != -1 || !eligible_cell(grid, mask, r, c)) continue;
      const double value = grid(r, c);
      const std::int32_t label = out.count++;
      out.labels(r, c) = label;
      stack.emplace_back(r, c);
      while (!stack.empty()) {
        auto [cr, cc] = stack.back();
        stack.pop_back();
        for (int n = 0; n < nnbr; ++n) {
          const int k = connectivity == Connectivity::Four ? four_idx[n] : n;
          const int rr = cr + dr8[k], ncol = cc + dc8[k];
          if (rr < 0 || rr >= nr || ncol < 0 || ncol >= nc) continue;
          if (out.labels(rr, ncol) != -1) continue;
          if (!eligible_cell(grid, mask, rr, ncol)) continue;
          if (grid(rr, ncol) != value) continue;
          out.labels(rr, ncol) = label;
          stack.emplace_back(rr, ncol);
        }
      }
    }
  }
  return out;
}

namespace {

// Directed boundary edges in integer corner coordinates (corner (cr,cc) is
// the NW corner of cell (cr,cc)). Edges keep the region interior on the
// left, so outer rings come out counter-clockwise and holes clockwise.
enum Dir : int { East = 0, North = 1, West = 2, South = 3 };

struct Corner {
  int r, c;
  bool operator==(const Corner&) const = default;
  bool operator<(const Corner& o) const {
    return r != o.r ? r < o.r : c < o.c;
  }
};

Corner step(Corner p, int dir) {
  switch (dir) {
    case East: return {p.r, p.c + 1};
    case North: return {p.r - 1, p.c};
    case West: return {p.r, p.c - 1};
    default: return {p.r + 1, p.c};
  }
}

int left_of(int dir) { return (dir + 1) & 3; }
int right_of(int dir) { return (dir + 3) & 3; }

struct BoundaryEdge {
  Corner from;
  int dir;
  bool used = false;
};

std::int64_t corner_key(const Corner& p, int ncols) {
  return std::int64_t(p.r) * (ncols + 2) + p.c;
}

struct RegionTracer {
  int ncols;
  Connectivity connectivity;
  std::vector<BoundaryEdge> edges;
  std::unordered_map<std::int64_t, int> first_out;   // corner -> first edge
  std::unordered_map<std::int64_t, int> second_out;  // pinch corners

  void add(Corner from, int dir) {
    const int idx = static_cast<int>(edges.size());
    edges.push_back({from, dir});
    const std::int64_t key = corner_key(from, ncols);
    if (!first_out.emplace(key, idx).second) second_out.emplace(key, idx);
  }

  // Next outgoing edge at `at`, preferring the turn that matches the
  // connectivity rule at pinch corners: Four keeps diagonally-touching
  // cells apart (left turn), Eight joins them (right turn).
  int next_edge(Corner at, int incoming_dir) {
    const std::int64_t key = corner_key(at, ncols);
    const auto f = first_out.find(key);
    const auto s = second_out.find(key);
    int cand[2];
    int n = 0;
    if (f != first_out.end() && !edges[f->second].used) cand[n++] = f->second;
    if (s != second_out.end() && !edges[s->second].used) cand[n++] = s->second;
    if (n == 0) return -1;
    if (n == 1) return cand[0];
    const int want = connectivity == Connectivity::Four ? left_of(incoming_dir)
                                                        : right_of(incoming_dir);
    for (int i = 0; i < 2; ++i)
      if (edges[cand[i]].dir == want) return cand[i];
    return cand[0];
  }

  std::vector<std::vector<Corner>> rings() {
    std::vector<std::vector<Corner>> out;
    for (std::size_t start = 0; start < edges.size(); ++start) {
      if (edges[start].used) continue;
      std::vector<Corner> ring;
      int idx = static_cast<int>(start);
      while (idx >= 0 && !edges[idx].used) {
        edges[idx].used = true;
        ring.push_back(edges[idx].from);
        const Corner to = step(edges[idx].from, edges[idx].dir);
        idx = next_edge(to, edges[idx].dir);
      }
      out.push_back(std::move(ring));
    }
    return out;
  }
};

// Drop collinear interior vertices of a cyclic corner sequence, then rotate
// so the ring starts at its lexicographically smallest corner.
std::vector<Corner> simplify_ring(const std::vector<Corner>& raw) {
  const std::size_t n = raw.size();
  std::vector<Corner> kept;
  kept.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Corner& prev = raw[(i + n - 1) % n];
    const Corner& cur = raw[i];
    const Corner& next = raw[(i + 1) % n];
    const bool collinear = (prev.r == cur.r && cur.r == next.r) ||
                           (prev.c == cur.c && cur.c == next.c);
    if (!collinear) kept.push_back(cur);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < kept.size(); ++i)
    if (kept[i] < kept[best]) best = i;
  std::rotate(kept.begin(), kept.begin() + best, kept.end());
  return kept;
}

}  // namespace

double ring_signed_area(const Ring& ring) {
  if (ring.size() < 2) return 0.0;
  // Shoelace about the first vertex; the translation keeps products small
  // so large projected offsets do not wash out the area.
  const double x0 = ring[0].x, y0 = ring[0].y;
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
    const double ax = ring[i].x - x0, ay = ring[i].y - y0;
    const double bx = ring[i + 1].x - x0, by = ring[i + 1].y - y0;
    s += ax * by - bx * ay;
  }
  return s / 2.0;
}

std::vector<RegionPolygon> polygonize(const Grid& grid, const MaskGrid* mask,
                                      Connectivity connectivity) {
  const ComponentLabels comp = connected_components(grid, mask, connectivity);
  const int nr = grid.rows(), nc = grid.cols();
  const GridHeader& h = grid.header();

  struct Acc {
    double value = 0.0;
    std::int64_t cells = 0;
    double area_m2 = 0.0;
    int first_r = 0, first_c = 0;
    RegionTracer tracer;
  };
  std::vector<Acc> acc(static_cast<std::size_t>(comp.count));
  for (auto& a : acc) {
    a.tracer.ncols = nc;
    a.tracer.connectivity = connectivity;
  }

  auto label_at = [&](int r, int c) -> std::int32_t {
    if (r < 0 || r >= nr || c < 0 || c >= nc) return -1;
    return comp.labels(r, c);
  };

  for (int r = 0; r < nr; ++r) {
    for (int c = 0; c < nc; ++c) {
      const std::int32_t label = comp.labels(r, c);
      if (label < 0) continue;
      Acc& a = acc[label];
      if (a.cells == 0) {
        a.value = grid(r, c);
        a.first_r = r;
        a.first_c = c;
      }
      a.cells += 1;
      a.area_m2 += cell_area_m2(h, r);
      // Boundary sides, directed with the interior on the left.
      if (label_at(r - 1, c) != label) a.tracer.add({r, c + 1}, West);
      if (label_at(r + 1, c) != label) a.tracer.add({r + 1, c}, East);
      if (label_at(r, c + 1) != label) a.tracer.add({r + 1, c + 1}, North);
      if (label_at(r, c - 1) != label) a.tracer.add({r, c}, South);
    }
  }

  auto world = [&](const Corner& p) -> WorldPoint {
    return {h.xllcorner + p.c * h.cellsize,
            h.yllcorner + (h.nrows - p.r) * h.cellsize};
  };

  std::vector<RegionPolygon> out;
  out.reserve(acc.size());
  for (Acc& a : acc) {
    RegionPolygon poly;
    poly.pixel_value = a.value;
    poly.cell_count = a.cells;
    poly.area_ha = a.area_m2 / 10000.0;

    for (const auto& corners : a.tracer.rings()) {
      const auto simplified = simplify_ring(corners);
      Ring ring;
      ring.reserve(simplified.size() + 1);
      for (const Corner& p : simplified) ring.push_back(world(p));
      ring.push_back(ring.front());
      if (ring_signed_area(ring) >= 0.0)
        poly.outer = std::move(ring);
      else
        poly.holes.push_back(std::move(ring));
    }
    out.push_back(std::move(poly));
  }

  std::stable_sort(out.begin(), out.end(),
                   [&](const RegionPolygon& lhs, const RegionPolygon& rhs) {
                     return lhs.pixel_value < rhs.pixel_value;
                   });
  return out;
}

double polygon_area_ha(const RegionPolygon& poly) { return poly.area_ha; }

double geometry_area_ha(const RegionPolygon& poly, const Crs& crs) {
  auto project = [&](const Ring& ring, double lon0, double lat0) {
    Ring out;
    out.reserve(ring.size());
    const double kx = kMetersPerDegree * std::cos(lat0 * kDegToRad);
    for (const WorldPoint& p : ring)
      out.push_back({(p.x - lon0) * kx, (p.y - lat0) * kMetersPerDegree});
    return out;
  };

  double m2 = 0.0;
  if (crs.is_geographic()) {
    double lon0 = 0.0, lat0 = 0.0;
    for (const WorldPoint& p : poly.outer) {
      lon0 += p.x;
      lat0 += p.y;
    }
    lon0 /= poly.outer.size();
    lat0 /= poly.outer.size();
    m2 = ring_signed_area(project(poly.outer, lon0, lat0));
    for (const Ring& hole : poly.holes)
      m2 += ring_signed_area(project(hole, lon0, lat0));
  } else {
    m2 = ring_signed_area(poly.outer);
    for (const Ring& hole : poly.holes) m2 += ring_signed_area(hole);
  }
  return m2 / 10000.0;
}

}  // namespace terracarta
