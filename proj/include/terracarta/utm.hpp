#pragma once

#include "terracarta/geo.hpp"

namespace terracarta {

/// Central meridian of a UTM zone, degrees east.
inline double utm_central_meridian_deg(int zone) { return -183.0 + 6.0 * zone; }

/// Forward UTM projection on the WGS84 ellipsoid (transverse Mercator,
/// scale 0.9996, false easting 500 km, false northing 10,000 km south).
/// The hemisphere is taken from the sign of the latitude. Accuracy is
/// nanometer-level within the +-6 degree band around the central meridian
/// (6th-order Krueger series). Throws LatitudeOutOfRange for |lat| > 84.
UtmPoint geo_to_utm(const GeoPoint& p, int zone);

/// Inverse of geo_to_utm; round-trip error is far below 1e-8 degrees.
GeoPoint utm_to_geo(const UtmPoint& u);

}  // namespace terracarta
