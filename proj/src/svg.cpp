#include "terracarta/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace terracarta {

namespace {

constexpr double kCanvasWidth = 1024.0;

void append_px(std::string& out, double v) {
  char buf[48];
  auto [p, ec] =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  out.append(buf, p);
}

struct Transform {
  double x0, y1, scale, height;

  void emit(std::string& out, const WorldPoint& p) const {
    append_px(out, (p.x - x0) * scale);
    out += ',';
    append_px(out, (y1 - p.y) * scale);
  }
};

void path_from_rings(std::string& out, const Ring& outer,
                     const std::vector<Ring>& holes, const SvgStyle& style,
                     const Transform& t) {
  out += "<path d=\"";
  auto subpath = [&](const Ring& ring) {
    for (std::size_t i = 0; i < ring.size(); ++i) {
      out += i == 0 ? "M" : " L";
      t.emit(out, ring[i]);
    }
    out += " Z";
  };
  subpath(outer);
  for (const Ring& hole : holes) {
    out += ' ';
    subpath(hole);
  }
  out += "\" fill=\"" + style.fill + "\" stroke=\"" + style.stroke +
         "\" stroke-width=\"";
  append_px(out, style.stroke_width);
  out += "\" fill-rule=\"evenodd\"/>\n";
}

void path_from_line(std::string& out, const std::vector<WorldPoint>& points,
                    const SvgStyle& style, const Transform& t) {
  out += "<path d=\"";
  for (std::size_t i = 0; i < points.size(); ++i) {
    out += i == 0 ? "M" : " L";
    t.emit(out, points[i]);
  }
  out += "\" fill=\"none\" stroke=\"" + style.stroke + "\" stroke-width=\"";
  append_px(out, style.stroke_width);
  out += "\"/>\n";
}

}  // namespace

std::string render_svg(std::span<const SvgLayer> layers) {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin, ymin = xmin, ymax = -xmin;
  auto grow = [&](const WorldPoint& p) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  };
  for (const SvgLayer& layer : layers) {
    for (const SvgPolygon& poly : layer.polygons) {
      for (const WorldPoint& p : poly.outer) grow(p);
      for (const Ring& hole : poly.holes)
        for (const WorldPoint& p : hole) grow(p);
    }
    for (const SvgPolyline& line : layer.polylines)
      for (const WorldPoint& p : line.points) grow(p);
  }
  if (!(xmax > xmin) && !(ymax > ymin))
    fail(Errc::EmptyLayerSet, "no drawable geometry in any layer");

  const double wx = std::max(xmax - xmin, 1e-12);
  const double wy = std::max(ymax - ymin, 1e-12);
  const double scale = kCanvasWidth / wx;
  const double height = std::ceil(wy * scale);

  Transform t{xmin, ymax, scale, height};

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1024\" height=\"";
  append_px(out, height);
  out += "\" viewBox=\"0 0 1024 ";
  append_px(out, height);
  out += "\">\n";

  for (const SvgLayer& layer : layers) {
    out += "<g id=\"" + layer.name + "\">\n";
    for (const SvgPolygon& poly : layer.polygons)
      path_from_rings(out, poly.outer, poly.holes, poly.style, t);
    for (const SvgPolyline& line : layer.polylines)
      path_from_line(out, line.points, line.style, t);
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace terracarta
