#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "terracarta/raster.hpp"

namespace terracarta::testutil {

// Deterministic random helpers. mt19937_64 output is fully specified by the
// standard; distributions are hand-rolled so sequences are portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    const double u = (engine_() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  }

  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(engine_() %
                                          std::uint64_t(hi - lo + 1));
  }

  bool chance(double p) { return uniform(0.0, 1.0) < p; }

 private:
  std::mt19937_64 engine_;
};

struct RandomGridOptions {
  int max_rows = 16;
  int max_cols = 16;
  int min_rows = 2;
  int min_cols = 2;
  double z_lo = 0.0;
  double z_hi = 1000.0;
  double nodata_fraction = 0.0;
  bool sometimes_utm = true;
};

Grid random_grid(Rng& rng, const RandomGridOptions& opts = {});

/// The bundled 64x64 end-to-end fixture: geographic grid near 18.4N 76.5E
/// with two crater lakes (flat floors inside closed depressions), one
/// north-south ridge, and a west-draining valley.
Grid make_mini_district();

/// Villages used with the fixture; Sukhagaon sits in the far southeast.
std::string mini_villages_csv();

}  // namespace terracarta::testutil
