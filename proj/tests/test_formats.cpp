#include <doctest.h>

#include <json.hpp>

#include "terracarta/geojson.hpp"
#include "terracarta/svg.hpp"
#include "terracarta/tabular.hpp"
#include "testutil.hpp"

using namespace terracarta;
using json = nlohmann::json;

namespace {

RegionPolygon unit_square_poly(double x0, double y0, double side, double value) {
  RegionPolygon p;
  p.outer = {{x0, y0}, {x0 + side, y0}, {x0 + side, y0 + side},
             {x0, y0 + side}, {x0, y0}};
  p.pixel_value = value;
  p.cell_count = 1;
  p.area_ha = side * side / 10000.0;
  return p;
}

}  // namespace

TEST_CASE("geojson: contour feature collection") {
  ContourSet set;
  set.lines.push_back({425.0, {{76.5, 18.4}, {76.51, 18.41}}});
  const json doc = json::parse(contours_to_geojson(set));
  CHECK(doc["type"] == "FeatureCollection");
  REQUIRE(doc["features"].size() == 1);
  const auto& f = doc["features"][0];
  CHECK(f["geometry"]["type"] == "LineString");
  CHECK(f["properties"]["level"] == 425.0);
  CHECK(f["geometry"]["coordinates"][0][0] == 76.5);
}

TEST_CASE("geojson: polygon features carry value, count, area") {
  RegionPolygon p = unit_square_poly(0, 0, 100, 3.0);
  p.holes.push_back({{25, 25}, {75, 25}, {75, 75}, {25, 75}, {25, 25}});
  const json doc = json::parse(polygons_to_geojson(std::vector<RegionPolygon>{p}));
  const auto& f = doc["features"][0];
  CHECK(f["geometry"]["type"] == "Polygon");
  CHECK(f["geometry"]["coordinates"].size() == 2);  // outer + hole
  CHECK(f["properties"]["pixel_value"] == 3.0);
  CHECK(f["properties"]["cell_count"] == 1);
}

TEST_CASE("geojson: water bodies, rivers, zones") {
  WaterBody body{unit_square_poly(0, 0, 90, 1.0), 450.5};
  const json wb = json::parse(
      water_bodies_to_geojson(std::vector<WaterBody>{body}));
  CHECK(wb["features"][0]["properties"]["mean_elevation_m"] == 450.5);

  RiverSegment river{{{0, 0}, {90, 0}, {180, 90}}, 0.217, "Manjra"};
  const json rv =
      json::parse(rivers_to_geojson(std::vector<RiverSegment>{river}));
  CHECK(rv["features"][0]["properties"]["name"] == "Manjra");
  CHECK(rv["features"][0]["properties"]["length_km"] == 0.217);

  RegionPolygon zone = unit_square_poly(0, 0, 90, 2.0);  // class code 2
  const json zs = json::parse(zones_to_geojson(std::vector<RegionPolygon>{zone}));
  CHECK(zs["features"][0]["properties"]["class"] == "very_critical");
  CHECK(zs["features"][0]["properties"]["color"] == "red");
}

TEST_CASE("scarcity class names and colors follow the three-tier palette") {
  CHECK(std::string(scarcity_class_name(ScarcityClass::Normal)) == "normal");
  CHECK(std::string(scarcity_class_color(ScarcityClass::Normal)) == "yellow");
  CHECK(std::string(scarcity_class_color(ScarcityClass::Critical)) == "orange");
  CHECK(std::string(scarcity_class_color(ScarcityClass::VeryCritical)) == "red");
}

TEST_CASE("csv: band table with underflow first") {
  BandTable table;
  table.bands = {{415.0, 81.0, 100}, {425.0, 0.0, 0}};
  table.underflow = {-1, 1.62, 2};
  table.underflow.band_floor = -std::numeric_limits<double>::infinity();
  const std::string csv = bands_to_csv(table);
  CHECK(csv ==
        "band_floor_m,area_ha,cell_count\n"
        "-inf,1.62,2\n"
        "415,81,100\n"
        "425,0,0\n");
}

TEST_CASE("csv: inventory footer carries 2-decimal totals and percentage") {
  RegionPolygon poly;
  poly.area_ha = 6262.0;
  const WaterInventory inv =
      water_inventory({{poly, 500.0}}, {{{{0, 0}, {1, 1}}, 12.345, "Terna"}},
                      725097.0);
  const std::string csv = inventory_to_csv(inv);
  CHECK(csv.find("kind,name,area_ha,length_km\n") == 0);
  CHECK(csv.find("reservoir_or_lake,,6262.00,\n") != std::string::npos);
  CHECK(csv.find("river,Terna,,12.345\n") != std::string::npos);
  CHECK(csv.find("TOTAL,,6262.00,0.86\n") != std::string::npos);
}

TEST_CASE("csv: profile rows leave nodata elevations empty") {
  std::vector<ProfileSample> samples;
  samples.push_back({0.0, 500.25, {76.5, 18.4}});
  samples.push_back({90.0, std::nullopt, {76.501, 18.4}});
  const std::string csv = profile_to_csv(samples);
  CHECK(csv.find("0.00,500.250,76.5,18.4\n") != std::string::npos);
  CHECK(csv.find("90.00,,76.501,18.4\n") != std::string::npos);
}

TEST_CASE("svg: single square polygon renders one path with 5 pairs") {
  SvgLayer layer;
  layer.name = "test";
  layer.polygons.push_back(
      {{{0, 0}, {10, 0}, {10, 10}, {0, 10}, {0, 0}}, {}, {"yellow", "none", 1.0}});
  const std::string svg = render_svg(std::vector<SvgLayer>{layer});

  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("width=\"1024\"") != std::string::npos);
  std::size_t paths = 0, pos = 0;
  while ((pos = svg.find("<path", pos)) != std::string::npos) {
    ++paths;
    pos += 5;
  }
  CHECK(paths == 1);
  // 5 coordinate pairs: M + 4 L entries.
  std::size_t pairs = 0;
  pos = 0;
  while ((pos = svg.find(',', pos)) != std::string::npos) {
    ++pairs;
    pos += 1;
  }
  CHECK(pairs == 5);
  CHECK(svg.find("fill=\"yellow\"") != std::string::npos);
}

TEST_CASE("svg: identical input produces identical bytes") {
  SvgLayer layer;
  layer.name = "zones";
  layer.polygons.push_back(
      {{{0, 0}, {50, 0}, {50, 30}, {0, 30}, {0, 0}}, {}, {"orange", "none", 1.0}});
  layer.polylines.push_back({{{5, 5}, {20, 25}}, {"none", "#2d6cdf", 1.5}});
  const std::string a = render_svg(std::vector<SvgLayer>{layer});
  const std::string b = render_svg(std::vector<SvgLayer>{layer});
  CHECK(a == b);
}

TEST_CASE("svg: empty layer set is an error") {
  CHECK_THROWS_AS((void)render_svg(std::vector<SvgLayer>{}), Error);
  SvgLayer empty;
  empty.name = "empty";
  CHECK_THROWS_AS((void)render_svg(std::vector<SvgLayer>{empty}), Error);
}

TEST_CASE("format_double and format_fixed are locale-independent shortest forms") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-9999.0) == "-9999");
  CHECK(format_fixed(0.8636, 2) == "0.86");
  CHECK(format_fixed(1.005, 2) == "1.00");  // ties resolve by binary value
  CHECK(format_fixed(100.0, 3) == "100.000");
}
