#include "terracarta/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "terracarta/utm.hpp"

namespace terracarta {

WorldPoint to_grid_frame(const GridHeader& h, const GeoPoint& p) {
  if (h.crs.is_geographic()) return {p.lon, p.lat};
  UtmPoint u = geo_to_utm(p, h.crs.utm_zone);
  double northing = u.northing;
  if (u.hemisphere != h.crs.hemisphere) {
    // Express the northing in the grid's hemisphere convention.
    northing += u.hemisphere == Hemisphere::North ? 10000000.0 : -10000000.0;
  }
  return {u.easting, northing};
}

std::optional<double> sample_at_xy(const Grid& grid, double x, double y,
                                   SampleMethod method) {
  const GridHeader& h = grid.header();
  if (!h.contains(x, y)) fail(Errc::OutOfExtent, "sample point outside grid");

  if (method == SampleMethod::Nearest) {
    const int r = h.row_of_y(y);
    const int c = h.col_of_x(x);
    if (!grid.valid(r, c)) return std::nullopt;
    return grid(r, c);
  }

  // Fractional position in cell-center coordinates, clamped to the hull so
  // extent-edge points degenerate to edge-cell values.
  double fc = (x - h.xllcorner) / h.cellsize - 0.5;
  double fr = (h.y_max() - y) / h.cellsize - 0.5;
  fc = std::clamp(fc, 0.0, double(h.ncols - 1));
  fr = std::clamp(fr, 0.0, double(h.nrows - 1));

  int c0 = static_cast<int>(std::floor(fc));
  int r0 = static_cast<int>(std::floor(fr));
  double tx = fc - c0;
  double ty = fr - r0;
  if (c0 >= h.ncols - 1) { c0 = h.ncols - 1; tx = 0.0; }
  if (r0 >= h.nrows - 1) { r0 = h.nrows - 1; ty = 0.0; }
  const int c1 = std::min(c0 + 1, h.ncols - 1);
  const int r1 = std::min(r0 + 1, h.nrows - 1);

  // Positive-weight contributors must be valid; the anchored incremental
  // form keeps constants and cell-center hits exact.
  if (!grid.valid(r0, c0)) return std::nullopt;
  if (tx > 0.0 && !grid.valid(r0, c1)) return std::nullopt;
  if (ty > 0.0 && !grid.valid(r1, c0)) return std::nullopt;
  if (tx > 0.0 && ty > 0.0 && !grid.valid(r1, c1)) return std::nullopt;

  const double z00 = grid(r0, c0);
  double v = z00;
  if (tx > 0.0) v += tx * (grid(r0, c1) - z00);
  if (ty > 0.0) v += ty * (grid(r1, c0) - z00);
  if (tx > 0.0 && ty > 0.0)
    v += tx * ty * (grid(r1, c1) - grid(r0, c1) - grid(r1, c0) + z00);
  return v;
}

std::optional<double> sample_elevation(const Grid& grid, const GeoPoint& p,
                                       SampleMethod method) {
  const WorldPoint w = to_grid_frame(grid.header(), p);
  return sample_at_xy(grid, w.x, w.y, method);
}

std::vector<ProfileSample> terrain_profile(const Grid& grid, const GeoPoint& a,
                                           const GeoPoint& b, double step_m) {
  if (!(step_m > 0.0)) fail(Errc::BadInput, "profile step must be positive");

  auto sample_at = [&](const GeoPoint& p, double dist) {
    ProfileSample s;
    s.distance_m = dist;
    s.point = p;
    s.elevation = sample_elevation(grid, p, SampleMethod::Bilinear);
    return s;
  };

  std::vector<ProfileSample> out;
  const double total = geodesic_distance_m(a, b);
  if (total == 0.0) {
    out.push_back(sample_at(a, 0.0));
    return out;
  }

  for (std::int64_t k = 0; k * step_m < total; ++k) {
    const double d = k * step_m;
    const double t = d / total;
    GeoPoint p{a.lon + t * (b.lon - a.lon), a.lat + t * (b.lat - a.lat)};
    out.push_back(sample_at(p, d));
  }
  out.push_back(sample_at(b, total));
  return out;
}

}  // namespace terracarta
