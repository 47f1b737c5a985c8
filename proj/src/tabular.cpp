#include "terracarta/tabular.hpp"

#include <charconv>
#include <cmath>

namespace terracarta {

std::string format_double(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  auto [p, ec] =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
  return std::string(buf, p);
}

std::string bands_to_csv(const BandTable& table) {
  std::string out = "band_floor_m,area_ha,cell_count\n";
  auto row = [&](const BandRow& b, const std::string& floor) {
    out += floor + ',' + format_double(b.area_ha) + ',' +
           std::to_string(b.cell_count) + '\n';
  };
  if (table.underflow.cell_count > 0) row(table.underflow, "-inf");
  for (const BandRow& b : table.bands) row(b, format_double(b.band_floor));
  return out;
}

std::string inventory_to_csv(const WaterInventory& inv) {
  std::string out = "kind,name,area_ha,length_km\n";
  for (const WaterBody& b : inv.bodies)
    out += "reservoir_or_lake,," + format_fixed(b.polygon.area_ha, 2) + ",\n";
  for (const RiverSegment& r : inv.rivers)
    out += "river," + r.name + ",," + format_fixed(r.length_km, 3) + '\n';
  out += "TOTAL,," + format_fixed(inv.total_water_ha, 2) + ',' +
         format_fixed(inv.water_fraction_pct, 2) + '\n';
  return out;
}

std::string report_to_csv(const ScarcityReport& report) {
  std::string out = "name,lon,lat,elevation_m,distance_m,score,class\n";
  for (const ScarcityRow& row : report.rows) {
    out += row.village.name + ',' + format_double(row.village.location.lon) +
           ',' + format_double(row.village.location.lat) + ',';
    if (row.in_extent) {
      out += format_fixed(row.elevation_m, 2) + ',' +
             format_fixed(row.distance_m, 2) + ',' +
             format_fixed(row.score, 4) + ',' + scarcity_class_name(row.cls);
    } else {
      out += ",,,out_of_extent";
    }
    out += '\n';
  }
  return out;
}

std::string profile_to_csv(std::span<const ProfileSample> samples) {
  std::string out = "distance_m,elevation_m,lon,lat\n";
  for (const ProfileSample& s : samples) {
    out += format_fixed(s.distance_m, 2) + ',';
    if (s.elevation) out += format_fixed(*s.elevation, 3);
    out += ',' + format_double(s.point.lon) + ',' + format_double(s.point.lat) +
           '\n';
  }
  return out;
}

std::string stats_to_csv(const ElevationStats& stats) {
  std::string out = "mean_m,std_dev_m,min_m,max_m,cells\n";
  out += format_fixed(stats.mean, 4) + ',' + format_fixed(stats.std_dev, 4) +
         ',' + format_double(stats.min) + ',' + format_double(stats.max) + ',' +
         std::to_string(stats.count) + '\n';
  return out;
}

}  // namespace terracarta
