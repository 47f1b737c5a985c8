#pragma once

#include <span>
#include <string>

#include "terracarta/contour.hpp"
#include "terracarta/hydrology.hpp"
#include "terracarta/sampling.hpp"
#include "terracarta/scarcity.hpp"

namespace terracarta {

/// Shortest decimal that round-trips to the same double. Locale-independent.
std::string format_double(double v);

/// Fixed-point decimal with the given number of fraction digits.
std::string format_fixed(double v, int decimals);

/// CSV `band_floor_m,area_ha,cell_count`; the underflow band, when occupied,
/// is emitted first with floor `-inf`.
std::string bands_to_csv(const BandTable& table);

/// CSV `kind,name,area_ha,length_km` plus footer `TOTAL,,<ha>,<pct>`;
/// the percentage is reported to 2 decimals.
std::string inventory_to_csv(const WaterInventory& inv);

/// CSV `name,lon,lat,elevation_m,distance_m,score,class`. Villages outside
/// the grid get empty numeric fields and class `out_of_extent`.
std::string report_to_csv(const ScarcityReport& report);

/// CSV `distance_m,elevation_m,lon,lat`; nodata elevations are empty.
std::string profile_to_csv(std::span<const ProfileSample> samples);

/// CSV `mean_m,std_dev_m,min_m,max_m,cells`.
std::string stats_to_csv(const ElevationStats& stats);

}  // namespace terracarta
