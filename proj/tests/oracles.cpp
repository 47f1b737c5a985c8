#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace terracarta::oracle {

UtmPoint snyder_forward(const GeoPoint& p, int zone) {
  const double a = 6378137.0;
  const double f = 1.0 / 298.257223563;
  const double e2 = f * (2.0 - f);
  const double e4 = e2 * e2, e6 = e4 * e2;
  const double ep2 = e2 / (1.0 - e2);
  const double k0 = 0.9996;

  const double phi = p.lat * kDegToRad;
  const double lam0 = (-183.0 + 6.0 * zone) * kDegToRad;
  const double lam = p.lon * kDegToRad;

  const double sinp = std::sin(phi), cosp = std::cos(phi), tanp = std::tan(phi);
  const double N = a / std::sqrt(1.0 - e2 * sinp * sinp);
  const double T = tanp * tanp;
  const double C = ep2 * cosp * cosp;
  const double A = (lam - lam0) * cosp;
  const double A2 = A * A, A3 = A2 * A, A4 = A3 * A, A5 = A4 * A, A6 = A5 * A;

  const double M =
      a * ((1.0 - e2 / 4.0 - 3.0 * e4 / 64.0 - 5.0 * e6 / 256.0) * phi -
           (3.0 * e2 / 8.0 + 3.0 * e4 / 32.0 + 45.0 * e6 / 1024.0) *
               std::sin(2.0 * phi) +
           (15.0 * e4 / 256.0 + 45.0 * e6 / 1024.0) * std::sin(4.0 * phi) -
           (35.0 * e6 / 3072.0) * std::sin(6.0 * phi));

  UtmPoint out;
  out.zone = zone;
  out.hemisphere = p.lat < 0.0 ? Hemisphere::South : Hemisphere::North;
  out.easting =
      500000.0 +
      k0 * N *
          (A + (1.0 - T + C) * A3 / 6.0 +
           (5.0 - 18.0 * T + T * T + 72.0 * C - 58.0 * ep2) * A5 / 120.0);
  out.northing =
      k0 * (M + N * tanp *
                    (A2 / 2.0 + (5.0 - T + 9.0 * C + 4.0 * C * C) * A4 / 24.0 +
                     (61.0 - 58.0 * T + T * T + 600.0 * C - 330.0 * ep2) * A6 /
                         720.0));
  if (out.hemisphere == Hemisphere::South) out.northing += 10000000.0;
  return out;
}

double meridian_arc_quadrature(double lat_deg, int intervals) {
  const double a = 6378137.0;
  const double f = 1.0 / 298.257223563;
  const double e2 = f * (2.0 - f);
  const double phi = lat_deg * kDegToRad;

  auto integrand = [&](double t) {
    const double s = std::sin(t);
    return a * (1.0 - e2) * std::pow(1.0 - e2 * s * s, -1.5);
  };

  if (intervals % 2) ++intervals;
  const double h = phi / intervals;
  double sum = integrand(0.0) + integrand(phi);
  for (int i = 1; i < intervals; ++i)
    sum += integrand(i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

Grid brute_force_fill(const Grid& dem, double epsilon) {
  const int nr = dem.rows(), nc = dem.cols();
  static const int dr[8] = {0, 1, 1, 1, 0, -1, -1, -1};
  static const int dc[8] = {1, 1, 0, -1, -1, -1, 0, 1};

  auto is_outlet = [&](int r, int c) {
    if (r == 0 || r == nr - 1 || c == 0 || c == nc - 1) return true;
    for (int n = 0; n < 8; ++n)
      if (!dem.valid(r + dr[n], c + dc[n])) return true;
    return false;
  };

  Grid filled = dem;
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c)
      if (dem.valid(r, c) && !is_outlet(r, c))
        filled(r, c) = std::numeric_limits<double>::infinity();

  bool changed = true;
  while (changed) {
    changed = false;
    for (int r = 0; r < nr; ++r)
      for (int c = 0; c < nc; ++c) {
        if (!dem.valid(r, c) || is_outlet(r, c)) continue;
        double m = std::numeric_limits<double>::infinity();
        for (int n = 0; n < 8; ++n) {
          const int rr = r + dr[n], cc = c + dc[n];
          if (dem.valid(rr, cc)) m = std::min(m, filled(rr, cc));
        }
        const double next = dem(r, c) > m ? dem(r, c) : m + epsilon;
        if (next < filled(r, c)) {
          filled(r, c) = next;
          changed = true;
        }
      }
  }
  return filled;
}

Eigen::Array<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
brute_force_accumulation(const FlowGrid& flow) {
  const int nr = flow.direction.rows(), nc = flow.direction.cols();
  Eigen::Array<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
      acc(nr, nc);
  acc.setZero();

  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c) {
      if (flow.dir(r, c) == FlowDir::NoData) continue;
      int cr = r, cc = c;
      while (true) {
        acc(cr, cc) += 1;
        const FlowDir d = flow.dir(cr, cc);
        if (d == FlowDir::Sink) break;
        const int n = static_cast<int>(d);
        cr += kFlowDr[n];
        cc += kFlowDc[n];
      }
    }
  return acc;
}

Grid brute_force_distance(const MaskGrid& water) {
  const GridHeader& h = water.header();
  const int nr = h.nrows, nc = h.ncols;

  double dx = h.cellsize, dy = h.cellsize;
  if (h.crs.is_geographic()) {
    const double mean_lat = h.yllcorner + nr * h.cellsize / 2.0;
    dx = h.cellsize * kMetersPerDegree * std::cos(mean_lat * kDegToRad);
    dy = h.cellsize * kMetersPerDegree;
  }
  const double wx = dx * dx, wy = dy * dy;

  std::vector<std::pair<int, int>> sources;
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c)
      if (water(r, c)) sources.emplace_back(r, c);

  Grid out(h, 0.0);
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& [sr, sc] : sources) {
        const double a = double(r - sr), b = double(c - sc);
        const double d2 = wy * (a * a) + wx * (b * b);
        if (d2 < best) best = d2;
      }
      out(r, c) = std::sqrt(best);
    }
  return out;
}

namespace {

std::int64_t edge_key(int r, int c, bool vertical, int ncols) {
  return ((std::int64_t(r) * (ncols + 1) + c) << 1) | (vertical ? 1 : 0);
}

bool dual_cell_processed(const Grid& g, int r, int c) {
  if (r < 0 || c < 0 || r + 1 >= g.rows() || c + 1 >= g.cols()) return false;
  return g.valid(r, c) && g.valid(r, c + 1) && g.valid(r + 1, c) &&
         g.valid(r + 1, c + 1);
}

}  // namespace

EdgeCrossings expected_crossings(const Grid& grid, double level, double nudge) {
  const int nr = grid.rows(), nc = grid.cols();
  auto above = [&](int r, int c) {
    const double z = grid(r, c);
    return (z == level ? level + nudge : z) > level;
  };

  EdgeCrossings out;
  auto consider = [&](int r0, int c0, int r1, int c1, std::int64_t key,
                      int processed) {
    if (!grid.valid(r0, c0) || !grid.valid(r1, c1)) return;
    const bool change = above(r0, c0) != above(r1, c1);
    out.keys.push_back(key);
    out.expected_incidences.push_back(change ? processed : 0);
    out.expected_distinct.push_back(change && processed > 0 ? 1 : 0);
  };

  for (int r = 0; r < nr; ++r)
    for (int c = 0; c + 1 < nc; ++c) {
      const int processed = (dual_cell_processed(grid, r, c) ? 1 : 0) +
                            (dual_cell_processed(grid, r - 1, c) ? 1 : 0);
      consider(r, c, r, c + 1, edge_key(r, c, false, nc), processed);
    }
  for (int r = 0; r + 1 < nr; ++r)
    for (int c = 0; c < nc; ++c) {
      const int processed = (dual_cell_processed(grid, r, c) ? 1 : 0) +
                            (dual_cell_processed(grid, r, c - 1) ? 1 : 0);
      consider(r, c, r + 1, c, edge_key(r, c, true, nc), processed);
    }
  return out;
}

bool observed_crossings(const Grid& grid, const ContourSet& contours,
                        double level, std::vector<std::int64_t>& keys,
                        std::vector<int>& incidences,
                        std::vector<int>& distinct) {
  const GridHeader& h = grid.header();
  const int nc = grid.cols();

  std::map<std::int64_t, int> incid;
  std::map<std::int64_t, std::vector<WorldPoint>> points;

  auto classify = [&](const WorldPoint& p, std::int64_t& key) {
    // A crossing sits exactly on one lattice edge: horizontal edges share the
    // row-center y, vertical edges the column-center x (bit-exact by
    // construction of the interpolation).
    const double fr = (h.nrows - 0.5) - (p.y - h.yllcorner) / h.cellsize;
    const double fc = (p.x - h.xllcorner) / h.cellsize - 0.5;
    const int r_near = static_cast<int>(std::llround(fr));
    const int c_near = static_cast<int>(std::llround(fc));
    const bool on_row = r_near >= 0 && r_near < h.nrows && p.y == h.y_of_row(r_near);
    const bool on_col = c_near >= 0 && c_near < h.ncols && p.x == h.x_of_col(c_near);
    if (on_row == on_col) return false;  // ambiguous or off-lattice
    if (on_row) {
      const int c0 = static_cast<int>(std::floor(fc));
      if (c0 < 0 || c0 + 1 >= h.ncols) return false;
      key = edge_key(r_near, c0, false, nc);
    } else {
      const int r0 = static_cast<int>(std::floor(fr));
      if (r0 < 0 || r0 + 1 >= h.nrows) return false;
      key = edge_key(r0, c_near, true, nc);
    }
    return true;
  };

  for (const ContourLine& line : contours.lines) {
    if (line.level != level) continue;
    for (std::size_t i = 0; i + 1 < line.points.size(); ++i) {
      for (const WorldPoint& p : {line.points[i], line.points[i + 1]}) {
        std::int64_t key = 0;
        if (!classify(p, key)) return false;
        incid[key] += 1;
        auto& pts = points[key];
        if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
      }
    }
  }

  keys.clear();
  incidences.clear();
  distinct.clear();
  for (const auto& [key, count] : incid) {
    keys.push_back(key);
    incidences.push_back(count);
    distinct.push_back(static_cast<int>(points[key].size()));
  }
  return true;
}

}  // namespace terracarta::oracle
