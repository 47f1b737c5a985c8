#pragma once

#include <cmath>

namespace terracarta {

/// Spherical earth radius used for geodesic distances and cell metrics.
inline constexpr double kEarthRadiusM = 6'371'000.0;

inline constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

/// Ground meters spanned by one degree of arc on the sphere.
inline constexpr double kMetersPerDegree = kDegToRad * kEarthRadiusM;

enum class Hemisphere { North, South };

/// Longitude/latitude in degrees on WGS84.
struct GeoPoint {
  double lon = 0.0;  // degrees east
  double lat = 0.0;  // degrees north

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

/// Projected UTM coordinates in meters.
struct UtmPoint {
  double easting = 0.0;
  double northing = 0.0;
  int zone = 0;  // 1..60
  Hemisphere hemisphere = Hemisphere::North;
};

/// A point in a grid's planar coordinate frame: (lon,lat) degrees for
/// geographic grids, (easting,northing) meters for UTM grids.
struct WorldPoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const WorldPoint&, const WorldPoint&) = default;
};

/// Great-circle distance in meters, spherical law of cosines, R = 6371 km.
double geodesic_distance_m(const GeoPoint& a, const GeoPoint& b);

}  // namespace terracarta
