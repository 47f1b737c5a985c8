#include "terracarta/scarcity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "terracarta/sampling.hpp"

namespace terracarta {

Grid distance_to_water(const MaskGrid& water) {
  const GridHeader& h = water.header();
  const int nr = h.nrows, nc = h.ncols;

  std::int64_t water_cells = 0;
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c)
      if (water(r, c)) ++water_cells;
  if (water_cells == 0) fail(Errc::NoWaterCells, "water mask is empty");

  double dx = h.cellsize, dy = h.cellsize;
  if (h.crs.is_geographic()) {
    const double mean_lat = h.yllcorner + nr * h.cellsize / 2.0;
    dx = h.cellsize * kMetersPerDegree * std::cos(mean_lat * kDegToRad);
    dy = h.cellsize * kMetersPerDegree;
  }
  const double wx = dx * dx, wy = dy * dy;

  // Pass 1: nearest water row offset per column, in integer cells.
  constexpr int kNone = std::numeric_limits<int>::max();
  Eigen::Array<std::int32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
      row_off(nr, nc);
  for (int c = 0; c < nc; ++c) {
    int last = kNone;
    for (int r = 0; r < nr; ++r) {
      if (water(r, c)) last = r;
      row_off(r, c) = last == kNone ? kNone : r - last;
    }
    last = kNone;
    for (int r = nr - 1; r >= 0; --r) {
      if (water(r, c)) last = r;
      if (last != kNone && (row_off(r, c) == kNone || last - r < row_off(r, c)))
        row_off(r, c) = last - r;
    }
  }

  // Pass 2: combine columns. An explicit scan keeps the result bit-identical
  // to the brute-force definition even on real-valued ties.
  Grid out(h, 0.0);
  std::vector<double> col_d2(nc);
  for (int r = 0; r < nr; ++r) {
    for (int c = 0; c < nc; ++c) {
      const std::int32_t off = row_off(r, c);
      col_d2[c] = off == kNone ? std::numeric_limits<double>::infinity()
                               : wy * (double(off) * off);
    }
    for (int c = 0; c < nc; ++c) {
      double best = std::numeric_limits<double>::infinity();
      for (int j = 0; j < nc; ++j) {
        if (col_d2[j] == std::numeric_limits<double>::infinity()) continue;
        const double dcol = double(c - j);
        const double d2 = col_d2[j] + wx * (dcol * dcol);
        if (d2 < best) best = d2;
      }
      out(r, c) = std::sqrt(best);
    }
  }
  return out;
}

double scarcity_score(double distance_m, double elevation_m, double dem_mean,
                      double dem_std, const ScarcityParams& params) {
  const double dist_term = params.w_dist * distance_m / params.d_ref_m;
  double elev_term = 0.0;
  if (dem_std > 0.0)
    elev_term = params.w_elev * std::max(0.0, (elevation_m - dem_mean) / dem_std);
  return dist_term + elev_term;
}

ScarcityClass classify_score(double score, const ScarcityParams& params) {
  if (score < params.t1) return ScarcityClass::Normal;
  if (score < params.t2) return ScarcityClass::Critical;
  return ScarcityClass::VeryCritical;
}

const char* scarcity_class_name(ScarcityClass c) {
  switch (c) {
    case ScarcityClass::Normal: return "normal";
    case ScarcityClass::Critical: return "critical";
    default: return "very_critical";
  }
}

const char* scarcity_class_color(ScarcityClass c) {
  switch (c) {
    case ScarcityClass::Normal: return "yellow";
    case ScarcityClass::Critical: return "orange";
    default: return "red";
  }
}

ScarcityReport classify_villages(std::span<const Village> villages,
                                 const Grid& distance, const Grid& dem,
                                 const ScarcityParams& params) {
  if (!(params.t1 < params.t2))
    fail(Errc::BadInput, "scarcity thresholds must satisfy t1 < t2");
  const ElevationStats stats = elevation_stats(dem);

  ScarcityReport report;
  report.rows.reserve(villages.size());
  for (const Village& v : villages) {
    ScarcityRow row;
    row.village = v;

    std::optional<double> dist, elev;
    try {
      dist = sample_elevation(distance, v.location, SampleMethod::Bilinear);
      elev = v.elevation_m ? v.elevation_m
                           : sample_elevation(dem, v.location, SampleMethod::Bilinear);
    } catch (const Error& e) {
      if (e.code() != Errc::OutOfExtent) throw;
    }
    if (dist && elev) {
      row.in_extent = true;
      row.distance_m = *dist;
      row.elevation_m = *elev;
      row.score = scarcity_score(row.distance_m, row.elevation_m, stats.mean,
                                 stats.std_dev, params);
      row.cls = classify_score(row.score, params);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::vector<RegionPolygon> scarcity_zones(const Grid& distance, const Grid& dem,
                                          const ScarcityParams& params) {
  if (distance.rows() != dem.rows() || distance.cols() != dem.cols())
    fail(Errc::DimensionMismatch, "distance dims differ from DEM dims");
  if (!(params.t1 < params.t2))
    fail(Errc::BadInput, "scarcity thresholds must satisfy t1 < t2");
  const ElevationStats stats = elevation_stats(dem);

  Grid classes(dem.header(), dem.header().nodata);
  MaskGrid eligible(dem.header(), 0);
  for (int r = 0; r < dem.rows(); ++r)
    for (int c = 0; c < dem.cols(); ++c) {
      if (!dem.valid(r, c)) continue;
      const double score = scarcity_score(distance(r, c), dem(r, c),
                                          stats.mean, stats.std_dev, params);
      classes(r, c) = static_cast<double>(classify_score(score, params));
      eligible(r, c) = 1;
    }
  return polygonize(classes, &eligible, Connectivity::Four);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  fields.push_back(cur);
  for (auto& f : fields) {
    const auto a = f.find_first_not_of(" \t");
    const auto b = f.find_last_not_of(" \t");
    f = a == std::string::npos ? std::string() : f.substr(a, b - a + 1);
  }
  return fields;
}

double parse_field(const std::string& s, const char* what) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    fail(Errc::BadInput, std::string("bad numeric field for ") + what + ": '" + s + "'");
  return v;
}

}  // namespace

std::vector<Village> parse_villages_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line))
    fail(Errc::BadInput, "village CSV is empty");

  const auto header = split_csv_line(line);
  if (header.size() < 3 || header[0] != "name" || header[1] != "lon" ||
      header[2] != "lat")
    fail(Errc::BadInput, "village CSV must start with header name,lon,lat[,elevation_m]");
  const bool has_elev = header.size() >= 4 && header[3] == "elevation_m";

  std::vector<Village> out;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() < 3)
      fail(Errc::BadInput, "village row needs at least name,lon,lat: '" + line + "'");
    Village v;
    v.name = fields[0];
    v.location.lon = parse_field(fields[1], "lon");
    v.location.lat = parse_field(fields[2], "lat");
    if (has_elev && fields.size() >= 4 && !fields[3].empty())
      v.elevation_m = parse_field(fields[3], "elevation_m");
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Village> read_villages_csv(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) fail(Errc::BadInput, "cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_villages_csv(buf.str());
}

}  // namespace terracarta
