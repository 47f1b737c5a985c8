#include "terracarta/geojson.hpp"

#include <json.hpp>

namespace terracarta {

namespace {

using json = nlohmann::ordered_json;

json coords(const std::vector<WorldPoint>& points) {
  json arr = json::array();
  for (const WorldPoint& p : points) arr.push_back({p.x, p.y});
  return arr;
}

json polygon_geometry(const RegionPolygon& poly) {
  json rings = json::array();
  rings.push_back(coords(poly.outer));
  for (const Ring& hole : poly.holes) rings.push_back(coords(hole));
  return {{"type", "Polygon"}, {"coordinates", rings}};
}

json line_geometry(const std::vector<WorldPoint>& points) {
  return {{"type", "LineString"}, {"coordinates", coords(points)}};
}

json feature(json geometry, json properties) {
  return {{"type", "Feature"},
          {"geometry", std::move(geometry)},
          {"properties", std::move(properties)}};
}

std::string collection(json features) {
  json fc = {{"type", "FeatureCollection"}, {"features", std::move(features)}};
  return fc.dump();
}

}  // namespace

std::string contours_to_geojson(const ContourSet& contours) {
  json features = json::array();
  for (const ContourLine& line : contours.lines)
    features.push_back(
        feature(line_geometry(line.points), {{"level", line.level}}));
  return collection(std::move(features));
}

std::string polygons_to_geojson(std::span<const RegionPolygon> polys) {
  json features = json::array();
  for (const RegionPolygon& poly : polys)
    features.push_back(feature(polygon_geometry(poly),
                               {{"pixel_value", poly.pixel_value},
                                {"cell_count", poly.cell_count},
                                {"area_ha", poly.area_ha}}));
  return collection(std::move(features));
}

std::string water_bodies_to_geojson(std::span<const WaterBody> bodies) {
  json features = json::array();
  for (const WaterBody& body : bodies)
    features.push_back(feature(polygon_geometry(body.polygon),
                               {{"area_ha", body.polygon.area_ha},
                                {"mean_elevation_m", body.mean_elevation}}));
  return collection(std::move(features));
}

std::string rivers_to_geojson(std::span<const RiverSegment> rivers) {
  json features = json::array();
  for (const RiverSegment& river : rivers) {
    json props = {{"length_km", river.length_km}};
    if (!river.name.empty()) props["name"] = river.name;
    features.push_back(feature(line_geometry(river.path), std::move(props)));
  }
  return collection(std::move(features));
}

std::string zones_to_geojson(std::span<const RegionPolygon> zones) {
  json features = json::array();
  for (const RegionPolygon& zone : zones) {
    const auto cls = static_cast<ScarcityClass>(
        static_cast<int>(zone.pixel_value));
    features.push_back(feature(polygon_geometry(zone),
                               {{"class", scarcity_class_name(cls)},
                                {"color", scarcity_class_color(cls)},
                                {"area_ha", zone.area_ha}}));
  }
  return collection(std::move(features));
}

}  // namespace terracarta
