#pragma once

#include <span>
#include <string>
#include <vector>

#include "terracarta/polygonize.hpp"

namespace terracarta {

struct SvgStyle {
  std::string fill = "none";
  std::string stroke = "none";
  double stroke_width = 1.0;
};

struct SvgPolygon {
  Ring outer;
  std::vector<Ring> holes;
  SvgStyle style;
};

struct SvgPolyline {
  std::vector<WorldPoint> points;
  SvgStyle style;
};

struct SvgLayer {
  std::string name;
  std::vector<SvgPolygon> polygons;
  std::vector<SvgPolyline> polylines;
};

/// Renders layers into one SVG document: fixed 1024 px canvas width,
/// aspect-preserving transform, one <g> per layer, byte-deterministic
/// output. Throws EmptyLayerSet when no layer carries geometry.
std::string render_svg(std::span<const SvgLayer> layers);

}  // namespace terracarta
