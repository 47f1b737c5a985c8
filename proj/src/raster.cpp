#include "terracarta/raster.hpp"

namespace terracarta {

const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::MalformedHeader: return "MalformedHeader";
    case Errc::CellCountMismatch: return "CellCountMismatch";
    case Errc::NonNumericCell: return "NonNumericCell";
    case Errc::OutOfExtent: return "OutOfExtent";
    case Errc::LatitudeOutOfRange: return "LatitudeOutOfRange";
    case Errc::GridTooSmall: return "GridTooSmall";
    case Errc::UnsortedBreaks: return "UnsortedBreaks";
    case Errc::AllNoData: return "AllNoData";
    case Errc::EmptyContourSet: return "EmptyContourSet";
    case Errc::NoUsablePoints: return "NoUsablePoints";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotSinkFilled: return "NotSinkFilled";
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::NoWaterCells: return "NoWaterCells";
    case Errc::EmptyLayerSet: return "EmptyLayerSet";
    case Errc::BadInput: return "BadInput";
  }
  return "UnknownError";
}

double geodesic_distance_m(const GeoPoint& a, const GeoPoint& b) {
  const double ph1 = a.lat * kDegToRad;
  const double ph2 = b.lat * kDegToRad;
  const double dl = (b.lon - a.lon) * kDegToRad;
  double c = std::sin(ph1) * std::sin(ph2) +
             std::cos(ph1) * std::cos(ph2) * std::cos(dl);
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  return kEarthRadiusM * std::acos(c);
}

void validate_header(const GridHeader& h) {
  if (h.ncols < 1 || h.nrows < 1)
    fail(Errc::BadInput, "grid dims must be at least 1x1");
  if (!(h.cellsize > 0.0)) fail(Errc::BadInput, "cellsize must be positive");
  if (h.crs.is_geographic()) {
    if (h.x_min() < -180.0 || h.x_max() > 180.0 || h.y_min() < -90.0 ||
        h.y_max() > 90.0)
      fail(Errc::BadInput, "geographic extent outside [-180,180]x[-90,90]");
  } else if (h.crs.utm_zone < 1 || h.crs.utm_zone > 60) {
    fail(Errc::BadInput, "UTM header requires zone in 1..60");
  }
}

double cell_width_m(const GridHeader& h, int row) {
  if (!h.crs.is_geographic()) return h.cellsize;
  const double lat = h.y_of_row(row);
  return h.cellsize * kMetersPerDegree * std::cos(lat * kDegToRad);
}

double cell_height_m(const GridHeader& h) {
  return h.crs.is_geographic() ? h.cellsize * kMetersPerDegree : h.cellsize;
}

double cell_area_m2(const GridHeader& h, int row) {
  if (!h.crs.is_geographic()) return h.cellsize * h.cellsize;
  const double side = h.cellsize * kMetersPerDegree;
  return side * side * std::cos(h.y_of_row(row) * kDegToRad);
}

}  // namespace terracarta
