// terracarta: DEM terrain analysis pipeline over ARC/INFO ASCII grids.
// Subcommands: contour, bands, slope, polygonize, water, rivers, scarcity,
// profile, stats, transform. Exit codes: 0 success, 1 input error,
// 2 internal invariant violation.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "terracarta/ascii_grid.hpp"
#include "terracarta/contour.hpp"
#include "terracarta/geojson.hpp"
#include "terracarta/hydrology.hpp"
#include "terracarta/polygonize.hpp"
#include "terracarta/sampling.hpp"
#include "terracarta/scarcity.hpp"
#include "terracarta/svg.hpp"
#include "terracarta/tabular.hpp"
#include "terracarta/utm.hpp"

namespace fs = std::filesystem;
using namespace terracarta;

namespace {

Crs parse_crs(const std::string& text) {
  if (text.empty() || text == "geo" || text == "geographic")
    return Crs::geographic();
  if (text.rfind("utm:", 0) == 0) {
    std::string rest = text.substr(4);
    Hemisphere hemi = Hemisphere::North;
    if (!rest.empty() && (rest.back() == 'N' || rest.back() == 'n' ||
                          rest.back() == 'S' || rest.back() == 's')) {
      hemi = (rest.back() == 'S' || rest.back() == 's') ? Hemisphere::South
                                                        : Hemisphere::North;
      rest.pop_back();
    }
    try {
      return Crs::utm(std::stoi(rest), hemi);
    } catch (const std::exception&) {
      fail(Errc::BadInput, "bad UTM zone in --crs: " + text);
    }
  }
  fail(Errc::BadInput, "unknown CRS '" + text + "' (use geo or utm:<zone><N|S>)");
}

GeoPoint parse_lonlat(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    fail(Errc::BadInput, "expected lon,lat but got '" + text + "'");
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    fail(Errc::BadInput, "bad lon,lat pair '" + text + "'");
  }
}

void write_file(const fs::path& dir, const std::string& name,
                const std::string& content) {
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::BadInput, "cannot write " + path.string());
  out << content;
  std::cout << "wrote " << path.string() << "\n";
}

SvgStyle zone_style(ScarcityClass c) {
  return {scarcity_class_color(c), "none", 0.0};
}

SvgLayer zones_layer(const std::vector<RegionPolygon>& zones) {
  SvgLayer layer{"scarcity_zones", {}, {}};
  for (const RegionPolygon& zone : zones) {
    const auto cls = static_cast<ScarcityClass>(static_cast<int>(zone.pixel_value));
    layer.polygons.push_back({zone.outer, zone.holes, zone_style(cls)});
  }
  return layer;
}

struct Options {
  std::string config_path;
  std::string dem_path;
  std::string out_dir = "out";
  std::string format = "geojson";
  std::string crs_text = "geo";

  double base = 0.0;
  double interval = 25.0;
  std::vector<double> breaks;

  std::string connectivity = "four";
  std::string mask_path;

  double max_slope_deg = 1.0;
  double min_area_ha = 5.0;
  std::int64_t accum_threshold = 0;
  double accum_km2 = 0.0;
  double district_area_ha = 0.0;
  std::string river_names_path;

  std::string villages_path;
  bool reservoirs_only = false;
  ScarcityParams scarcity;

  std::string from_text, to_text;
  double step_m = 90.0;

  std::string point_text;
  int zone = 0;
  std::string inverse_text;
};

Grid load_dem(const Options& opt) {
  if (opt.dem_path.empty()) fail(Errc::BadInput, "--dem is required");
  return read_ascii_grid(opt.dem_path, parse_crs(opt.crs_text));
}

// Flat `key = value` config; command-line flags take precedence. Keys mirror
// the long flag names without the leading dashes. Keys that belong to other
// subcommands are ignored; unknown keys are rejected.
void apply_config(const std::string& path, CLI::App* cmd, Options& opt) {
  std::ifstream in(path);
  if (!in) fail(Errc::BadInput, "cannot open config " + path);

  const auto as_double = [](const std::string& v) { return std::stod(v); };
  const auto as_int = [](const std::string& v) { return std::stoll(v); };

  std::map<std::string, std::function<void(const std::string&)>> setters;
  setters["dem"] = [&](const std::string& v) { opt.dem_path = v; };
  setters["out"] = [&](const std::string& v) { opt.out_dir = v; };
  setters["format"] = [&](const std::string& v) { opt.format = v; };
  setters["crs"] = [&](const std::string& v) { opt.crs_text = v; };
  setters["base"] = [&](const std::string& v) { opt.base = as_double(v); };
  setters["interval"] = [&](const std::string& v) { opt.interval = as_double(v); };
  setters["breaks"] = [&](const std::string& v) {
    opt.breaks.clear();
    std::string cur;
    for (char ch : v + ",")
      if (ch == ',') {
        if (!cur.empty()) opt.breaks.push_back(as_double(cur));
        cur.clear();
      } else {
        cur += ch;
      }
  };
  setters["connectivity"] = [&](const std::string& v) { opt.connectivity = v; };
  setters["mask"] = [&](const std::string& v) { opt.mask_path = v; };
  setters["max-slope-deg"] = [&](const std::string& v) { opt.max_slope_deg = as_double(v); };
  setters["min-area-ha"] = [&](const std::string& v) { opt.min_area_ha = as_double(v); };
  setters["accum-threshold"] = [&](const std::string& v) { opt.accum_threshold = as_int(v); };
  setters["accum-km2"] = [&](const std::string& v) { opt.accum_km2 = as_double(v); };
  setters["district-area-ha"] = [&](const std::string& v) { opt.district_area_ha = as_double(v); };
  setters["river-names"] = [&](const std::string& v) { opt.river_names_path = v; };
  setters["villages"] = [&](const std::string& v) { opt.villages_path = v; };
  setters["reservoirs-only"] = [&](const std::string& v) {
    opt.reservoirs_only = v == "1" || v == "true" || v == "yes";
  };
  setters["w-dist"] = [&](const std::string& v) { opt.scarcity.w_dist = as_double(v); };
  setters["w-elev"] = [&](const std::string& v) { opt.scarcity.w_elev = as_double(v); };
  setters["d-ref"] = [&](const std::string& v) { opt.scarcity.d_ref_m = as_double(v); };
  setters["t1"] = [&](const std::string& v) { opt.scarcity.t1 = as_double(v); };
  setters["t2"] = [&](const std::string& v) { opt.scarcity.t2 = as_double(v); };
  setters["from"] = [&](const std::string& v) { opt.from_text = v; };
  setters["to"] = [&](const std::string& v) { opt.to_text = v; };
  setters["step-m"] = [&](const std::string& v) { opt.step_m = as_double(v); };
  setters["point"] = [&](const std::string& v) { opt.point_text = v; };
  setters["zone"] = [&](const std::string& v) { opt.zone = static_cast<int>(as_int(v)); };
  setters["inverse"] = [&](const std::string& v) { opt.inverse_text = v; };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(Errc::BadInput, "config line " + std::to_string(lineno) + " is not key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end())
      fail(Errc::BadInput, "unknown config key '" + key + "'");
    // Only apply when the active command defines the flag and it was not
    // given on the command line.
    const CLI::Option* flag = cmd->get_option_no_throw("--" + key);
    if (!flag || flag->count() > 0) continue;
    try {
      it->second(value);
    } catch (const std::exception&) {
      fail(Errc::BadInput, "bad config value for '" + key + "': " + value);
    }
  }
}

double default_district_area_ha(const Grid& dem) {
  double ha = 0.0;
  for (int r = 0; r < dem.rows(); ++r) {
    const double cell_ha = cell_area_m2(dem.header(), r) / 10000.0;
    for (int c = 0; c < dem.cols(); ++c)
      if (dem.valid(r, c)) ha += cell_ha;
  }
  return ha;
}

std::int64_t resolve_accum_threshold(const Options& opt, const Grid& dem) {
  if (opt.accum_threshold > 0) return opt.accum_threshold;
  if (opt.accum_km2 > 0.0) {
    // Convert a catchment area to a cell count via the mean cell area.
    double mean_m2 = 0.0;
    for (int r = 0; r < dem.rows(); ++r) mean_m2 += cell_area_m2(dem.header(), r);
    mean_m2 /= dem.rows();
    return static_cast<std::int64_t>(opt.accum_km2 * 1e6 / mean_m2);
  }
  return 0;
}

int cmd_contour(const Options& opt) {
  const Grid dem = load_dem(opt);
  const ContourSet contours = extract_contours(dem, {opt.base, opt.interval});
  if (opt.format == "svg") {
    SvgLayer layer{"contours", {}, {}};
    for (const ContourLine& line : contours.lines)
      layer.polylines.push_back({line.points, {"none", "#8b5a2b", 1.0}});
    write_file(opt.out_dir, "contours.svg", render_svg({{layer}}));
  } else {
    write_file(opt.out_dir, "contours.geojson", contours_to_geojson(contours));
  }
  return 0;
}

int cmd_bands(const Options& opt) {
  const Grid dem = load_dem(opt);
  if (opt.breaks.empty()) fail(Errc::BadInput, "--breaks is required");
  const BandTable table = band_areas(dem, opt.breaks);
  write_file(opt.out_dir, "bands.csv", bands_to_csv(table));
  return 0;
}

int cmd_slope(const Options& opt) {
  const Grid dem = load_dem(opt);
  write_file(opt.out_dir, "slope.asc", write_ascii_grid(slope_map(dem)));
  return 0;
}

int cmd_polygonize(const Options& opt) {
  const Grid grid = load_dem(opt);
  const Connectivity conn = opt.connectivity == "eight" ? Connectivity::Eight
                                                        : Connectivity::Four;
  std::vector<RegionPolygon> polys;
  if (!opt.mask_path.empty()) {
    const Grid mask_grid = read_ascii_grid(opt.mask_path, parse_crs(opt.crs_text));
    if (mask_grid.rows() != grid.rows() || mask_grid.cols() != grid.cols())
      fail(Errc::DimensionMismatch, "mask dims differ from raster dims");
    MaskGrid mask(mask_grid.header(), 0);
    for (int r = 0; r < mask_grid.rows(); ++r)
      for (int c = 0; c < mask_grid.cols(); ++c)
        mask(r, c) = mask_grid.valid(r, c) && mask_grid(r, c) != 0.0 ? 1 : 0;
    polys = polygonize(grid, &mask, conn);
  } else {
    polys = polygonize(grid, nullptr, conn);
  }
  if (opt.format == "svg") {
    SvgLayer layer{"polygons", {}, {}};
    for (const RegionPolygon& p : polys)
      layer.polygons.push_back({p.outer, p.holes, {"#a8c8e8", "#333333", 0.5}});
    write_file(opt.out_dir, "polygons.svg", render_svg({{layer}}));
  } else {
    write_file(opt.out_dir, "polygons.geojson", polygons_to_geojson(polys));
  }
  return 0;
}

int cmd_water(const Options& opt) {
  const Grid dem = load_dem(opt);
  const Grid slope = slope_map(dem);
  auto bodies = extract_water_bodies(dem, slope, opt.max_slope_deg, opt.min_area_ha);

  std::vector<RiverSegment> rivers;
  const std::int64_t threshold = resolve_accum_threshold(opt, dem);
  if (threshold > 0) {
    const FlowGrid flow = flow_accumulation(flow_directions(fill_sinks(dem)));
    rivers = extract_rivers(flow, threshold);
    write_file(opt.out_dir, "rivers.geojson", rivers_to_geojson(rivers));
  }

  const double district =
      opt.district_area_ha > 0.0 ? opt.district_area_ha : default_district_area_ha(dem);
  write_file(opt.out_dir, "water_bodies.geojson", water_bodies_to_geojson(bodies));
  const WaterInventory inv =
      water_inventory(std::move(bodies), std::move(rivers), district);
  write_file(opt.out_dir, "inventory.csv", inventory_to_csv(inv));
  return 0;
}

int cmd_rivers(const Options& opt) {
  const Grid dem = load_dem(opt);
  const std::int64_t threshold = resolve_accum_threshold(opt, dem);
  if (threshold <= 0)
    fail(Errc::BadInput, "--accum-threshold (cells) or --accum-km2 is required");

  const FlowGrid flow = flow_accumulation(flow_directions(fill_sinks(dem)));
  auto rivers = extract_rivers(flow, threshold);
  if (rivers.empty())
    std::cerr << "warning: accumulation threshold " << threshold
              << " yields an empty river network\n";
  if (!opt.river_names_path.empty()) {
    std::vector<RiverSeed> seeds;
    for (const Village& v : read_villages_csv(opt.river_names_path))
      seeds.push_back({v.name, v.location});
    assign_river_names(rivers, seeds, dem.header());
  }

  if (opt.format == "svg") {
    SvgLayer layer{"rivers", {}, {}};
    for (const RiverSegment& river : rivers)
      layer.polylines.push_back({river.path, {"none", "#2d6cdf", 1.5}});
    write_file(opt.out_dir, "rivers.svg", render_svg({{layer}}));
  } else {
    write_file(opt.out_dir, "rivers.geojson", rivers_to_geojson(rivers));
  }
  return 0;
}

int cmd_scarcity(const Options& opt) {
  const Grid dem = load_dem(opt);
  if (opt.villages_path.empty()) fail(Errc::BadInput, "--villages is required");
  const auto villages = read_villages_csv(opt.villages_path);

  const Grid slope = slope_map(dem);
  const std::int64_t threshold = resolve_accum_threshold(opt, dem);

  std::optional<FlowGrid> flow;
  if (!opt.reservoirs_only && threshold > 0)
    flow = flow_accumulation(flow_directions(fill_sinks(dem)));

  const MaskGrid water =
      water_source_mask(dem, slope, opt.max_slope_deg, opt.min_area_ha,
                        flow ? &*flow : nullptr, threshold);
  const Grid distance = distance_to_water(water);

  const ScarcityReport report =
      classify_villages(villages, distance, dem, opt.scarcity);
  const auto zones = scarcity_zones(distance, dem, opt.scarcity);

  write_file(opt.out_dir, "report.csv", report_to_csv(report));
  write_file(opt.out_dir, "zones.geojson", zones_to_geojson(zones));

  std::vector<SvgLayer> layers;
  layers.push_back(zones_layer(zones));
  const auto bodies =
      extract_water_bodies(dem, slope, opt.max_slope_deg, opt.min_area_ha);
  SvgLayer water_layer{"water_bodies", {}, {}};
  for (const WaterBody& body : bodies)
    water_layer.polygons.push_back(
        {body.polygon.outer, body.polygon.holes, {"#3b82c4", "none", 0.0}});
  layers.push_back(std::move(water_layer));
  if (flow) {
    SvgLayer river_layer{"rivers", {}, {}};
    for (const RiverSegment& river : extract_rivers(*flow, threshold))
      river_layer.polylines.push_back({river.path, {"none", "#2d6cdf", 1.5}});
    layers.push_back(std::move(river_layer));
  }
  write_file(opt.out_dir, "scarcity_map.svg", render_svg(layers));
  return 0;
}

int cmd_profile(const Options& opt) {
  const Grid dem = load_dem(opt);
  if (opt.from_text.empty() || opt.to_text.empty())
    fail(Errc::BadInput, "--from and --to are required");
  const auto samples = terrain_profile(dem, parse_lonlat(opt.from_text),
                                       parse_lonlat(opt.to_text), opt.step_m);
  write_file(opt.out_dir, "profile.csv", profile_to_csv(samples));
  return 0;
}

int cmd_stats(const Options& opt) {
  const Grid dem = load_dem(opt);
  const std::string csv = stats_to_csv(elevation_stats(dem));
  std::cout << csv;
  write_file(opt.out_dir, "stats.csv", csv);
  return 0;
}

int cmd_transform(const Options& opt) {
  if (!opt.inverse_text.empty()) {
    // easting,northing,zone,N|S
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : opt.inverse_text) {
      if (ch == ',') { parts.push_back(cur); cur.clear(); }
      else cur += ch;
    }
    parts.push_back(cur);
    if (parts.size() != 4)
      fail(Errc::BadInput, "--inverse expects easting,northing,zone,N|S");
    UtmPoint u;
    try {
      u.easting = std::stod(parts[0]);
      u.northing = std::stod(parts[1]);
      u.zone = std::stoi(parts[2]);
    } catch (const std::exception&) {
      fail(Errc::BadInput, "bad --inverse value '" + opt.inverse_text + "'");
    }
    u.hemisphere = (parts[3] == "S" || parts[3] == "s") ? Hemisphere::South
                                                        : Hemisphere::North;
    const GeoPoint p = utm_to_geo(u);
    std::cout << "lon " << format_fixed(p.lon, 8) << " lat "
              << format_fixed(p.lat, 8) << "\n";
    return 0;
  }
  if (opt.point_text.empty() || opt.zone == 0)
    fail(Errc::BadInput, "--point lon,lat and --zone are required");
  const UtmPoint u = geo_to_utm(parse_lonlat(opt.point_text), opt.zone);
  std::cout << "easting " << format_fixed(u.easting, 3) << " northing "
            << format_fixed(u.northing, 3) << " zone " << u.zone
            << " hemisphere "
            << (u.hemisphere == Hemisphere::South ? "S" : "N") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"terracarta: DEM terrain analysis and water-scarcity zoning"};
  app.require_subcommand(1);

  Options opt;

  auto add_common = [&](CLI::App* cmd, bool needs_dem = true) {
    if (needs_dem) cmd->add_option("--dem", opt.dem_path, "Input DEM (ASCII grid)");
    cmd->add_option("--out", opt.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--crs", opt.crs_text,
                    "Grid CRS: geo or utm:<zone><N|S>")->capture_default_str();
    cmd->add_option("--config", opt.config_path,
                    "Flat key=value config file; flags override");
    return cmd;
  };

  auto* contour = add_common(app.add_subcommand("contour", "Extract contour lines"));
  contour->add_option("--base", opt.base, "Base contour level (m)")->capture_default_str();
  contour->add_option("--interval", opt.interval, "Contour interval (m)")->capture_default_str();
  contour->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"geojson", "svg"}))->capture_default_str();

  auto* bands = add_common(app.add_subcommand("bands", "Elevation-band area table"));
  bands->add_option("--breaks", opt.breaks, "Ascending band floors (m)")->delimiter(',');

  add_common(app.add_subcommand("slope", "Horn slope map (degrees)"));

  auto* poly = add_common(app.add_subcommand("polygonize", "Raster regions to polygons"));
  poly->add_option("--connectivity", opt.connectivity, "Region adjacency")
      ->check(CLI::IsMember({"four", "eight"}))
      ->capture_default_str();
  poly->add_option("--mask", opt.mask_path, "Eligibility mask grid (nonzero = eligible)");
  poly->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"geojson", "svg"}))->capture_default_str();

  auto* water = add_common(app.add_subcommand("water", "Extract water bodies and inventory"));
  water->add_option("--max-slope-deg", opt.max_slope_deg, "Water slope ceiling")->capture_default_str();
  water->add_option("--min-area-ha", opt.min_area_ha, "Minimum body area")->capture_default_str();
  water->add_option("--accum-threshold", opt.accum_threshold, "River channel threshold (cells)");
  water->add_option("--accum-km2", opt.accum_km2, "River channel threshold (km^2)");
  water->add_option("--district-area-ha", opt.district_area_ha,
                    "District area override (default: grid valid area)");

  auto* rivers = add_common(app.add_subcommand("rivers", "Extract river network"));
  rivers->add_option("--accum-threshold", opt.accum_threshold, "Channel threshold (cells)");
  rivers->add_option("--accum-km2", opt.accum_km2, "Channel threshold (km^2)");
  rivers->add_option("--river-names", opt.river_names_path,
                     "Seed CSV name,lon,lat for naming segments");
  rivers->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"geojson", "svg"}))->capture_default_str();

  auto* scarcity = add_common(app.add_subcommand("scarcity", "Water-scarcity report and zones"));
  scarcity->add_option("--villages", opt.villages_path, "Village CSV name,lon,lat[,elevation_m]");
  scarcity->add_option("--max-slope-deg", opt.max_slope_deg, "Water slope ceiling")->capture_default_str();
  scarcity->add_option("--min-area-ha", opt.min_area_ha, "Minimum body area")->capture_default_str();
  scarcity->add_option("--accum-threshold", opt.accum_threshold,
                       "River channel threshold (cells); 0 disables rivers");
  scarcity->add_option("--accum-km2", opt.accum_km2, "Channel threshold (km^2)");
  scarcity->add_flag("--reservoirs-only", opt.reservoirs_only,
                     "Exclude rivers from the water-source mask");
  scarcity->add_option("--w-dist", opt.scarcity.w_dist, "Distance weight")->capture_default_str();
  scarcity->add_option("--w-elev", opt.scarcity.w_elev, "Elevation weight")->capture_default_str();
  scarcity->add_option("--d-ref", opt.scarcity.d_ref_m, "Distance normalizer (m)")->capture_default_str();
  scarcity->add_option("--t1", opt.scarcity.t1, "Normal/Critical threshold")->capture_default_str();
  scarcity->add_option("--t2", opt.scarcity.t2, "Critical/VeryCritical threshold")->capture_default_str();

  auto* profile = add_common(app.add_subcommand("profile", "Terrain profile between two points"));
  profile->add_option("--from", opt.from_text, "Start lon,lat");
  profile->add_option("--to", opt.to_text, "End lon,lat");
  profile->add_option("--step-m", opt.step_m, "Sample spacing (m)")->capture_default_str();

  add_common(app.add_subcommand("stats", "Elevation statistics"));

  auto* transform = add_common(app.add_subcommand("transform", "Lon/lat <-> UTM"), false);
  transform->add_option("--point", opt.point_text, "lon,lat to project");
  transform->add_option("--zone", opt.zone, "UTM zone 1..60");
  transform->add_option("--inverse", opt.inverse_text, "easting,northing,zone,N|S to invert");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (!opt.config_path.empty())
      apply_config(opt.config_path, app.get_subcommands().front(), opt);

    if (app.got_subcommand(contour)) return cmd_contour(opt);
    if (app.got_subcommand(bands)) return cmd_bands(opt);
    if (app.got_subcommand("slope")) return cmd_slope(opt);
    if (app.got_subcommand(poly)) return cmd_polygonize(opt);
    if (app.got_subcommand(water)) return cmd_water(opt);
    if (app.got_subcommand(rivers)) return cmd_rivers(opt);
    if (app.got_subcommand(scarcity)) return cmd_scarcity(opt);
    if (app.got_subcommand(profile)) return cmd_profile(opt);
    if (app.got_subcommand("stats")) return cmd_stats(opt);
    if (app.got_subcommand(transform)) return cmd_transform(opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
