#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <utility>

#include "terracarta/errors.hpp"
#include "terracarta/geo.hpp"

namespace terracarta {

/// Coordinate reference system of a grid. Geographic grids carry degrees,
/// UTM grids carry meters.
struct Crs {
  enum class Kind { GeographicWGS84, Utm };

  Kind kind = Kind::GeographicWGS84;
  int utm_zone = 0;  // 1..60, meaningful for Utm only
  Hemisphere hemisphere = Hemisphere::North;

  static Crs geographic() { return {}; }

  static Crs utm(int zone, Hemisphere hemi = Hemisphere::North) {
    if (zone < 1 || zone > 60) fail(Errc::BadInput, "UTM zone must be in 1..60");
    return {Kind::Utm, zone, hemi};
  }

  bool is_geographic() const { return kind == Kind::GeographicWGS84; }

  friend bool operator==(const Crs&, const Crs&) = default;
};

/// ARC/INFO-style raster header. Row 0 of the companion value array is the
/// northernmost row; xllcorner/yllcorner name the outer corner of the
/// southwest cell.
struct GridHeader {
  int ncols = 0;
  int nrows = 0;
  double xllcorner = 0.0;
  double yllcorner = 0.0;
  double cellsize = 1.0;
  double nodata = -9999.0;
  Crs crs = Crs::geographic();

  double x_min() const { return xllcorner; }
  double x_max() const { return xllcorner + ncols * cellsize; }
  double y_min() const { return yllcorner; }
  double y_max() const { return yllcorner + nrows * cellsize; }

  bool contains(double x, double y) const {
    return x >= x_min() && x <= x_max() && y >= y_min() && y <= y_max();
  }

  // Cell-center coordinates.
  double x_of_col(int col) const { return xllcorner + (col + 0.5) * cellsize; }
  double y_of_row(int row) const {
    return yllcorner + (nrows - row - 0.5) * cellsize;
  }

  // Containing cell of a world point, clamped so extent-boundary points map
  // to the nearest edge cell.
  int col_of_x(double x) const {
    int c = static_cast<int>(std::floor((x - xllcorner) / cellsize));
    return c < 0 ? 0 : (c >= ncols ? ncols - 1 : c);
  }
  int row_of_y(double y) const {
    int r = static_cast<int>(std::floor((y_max() - y) / cellsize));
    return r < 0 ? 0 : (r >= nrows ? nrows - 1 : r);
  }

  friend bool operator==(const GridHeader&, const GridHeader&) = default;
};

/// Throws BadInput when dims, cellsize, or geographic extents are invalid.
void validate_header(const GridHeader& h);

/// Dense single-band raster: header plus row-major Eigen array storage.
/// Immutable by convention after construction; all library operations take
/// rasters by const reference and return fresh ones.
template <typename Scalar>
class Raster {
 public:
  using Storage =
      Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  Raster() = default;

  Raster(GridHeader header, Scalar fill) : header_(std::move(header)) {
    validate_header(header_);
    values_ = Storage::Constant(header_.nrows, header_.ncols, fill);
  }

  Raster(GridHeader header, Storage values)
      : header_(std::move(header)), values_(std::move(values)) {
    validate_header(header_);
    if (values_.rows() != header_.nrows || values_.cols() != header_.ncols)
      fail(Errc::DimensionMismatch, "value array does not match header dims");
  }

  const GridHeader& header() const { return header_; }
  int rows() const { return header_.nrows; }
  int cols() const { return header_.ncols; }
  std::int64_t size() const {
    return std::int64_t(header_.nrows) * header_.ncols;
  }

  Scalar operator()(int row, int col) const { return values_(row, col); }
  Scalar& operator()(int row, int col) { return values_(row, col); }

  const Storage& values() const { return values_; }
  Storage& values() { return values_; }

  bool in_grid(int row, int col) const {
    return row >= 0 && row < header_.nrows && col >= 0 && col < header_.ncols;
  }

  bool is_nodata(Scalar v) const {
    return v == static_cast<Scalar>(header_.nodata);
  }
  bool valid(int row, int col) const { return !is_nodata(values_(row, col)); }

 private:
  GridHeader header_;
  Storage values_;
};

/// The DEM and every derived scalar raster.
using Grid = Raster<double>;

/// Per-cell eligibility raster; nonzero = eligible.
using MaskGrid = Raster<std::uint8_t>;

/// Ground width of a cell in meters. Constant for UTM grids; shrinks with
/// |latitude| for geographic grids.
double cell_width_m(const GridHeader& h, int row);

/// Ground height of a cell in meters (latitude-independent).
double cell_height_m(const GridHeader& h);

/// Ground area of one cell in the given row, in square meters. Geographic
/// grids use the spherical cos(latitude) formula (error < 0.7% vs the
/// ellipsoidal authalic area).
double cell_area_m2(const GridHeader& h, int row);

inline double cell_area_m2(const Grid& g, int row) {
  return cell_area_m2(g.header(), row);
}

}  // namespace terracarta
