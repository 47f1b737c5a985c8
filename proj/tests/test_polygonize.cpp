#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "terracarta/polygonize.hpp"
#include "testutil.hpp"

using namespace terracarta;
using testutil::Rng;

namespace {

Grid utm_grid(int nrows, int ncols, double fill, double cellsize = 90.0) {
  GridHeader h;
  h.nrows = nrows;
  h.ncols = ncols;
  h.cellsize = cellsize;
  h.xllcorner = 400000.0;
  h.yllcorner = 2000000.0;
  h.crs = Crs::utm(43, Hemisphere::North);
  return Grid(h, fill);
}

// Rings as canonical vertex-edge sets so orientation/start differences
// don't matter.
std::set<std::pair<std::pair<double, double>, std::pair<double, double>>>
ring_edges(const Ring& ring) {
  std::set<std::pair<std::pair<double, double>, std::pair<double, double>>> out;
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
    std::pair<double, double> a{ring[i].x, ring[i].y};
    std::pair<double, double> b{ring[i + 1].x, ring[i + 1].y};
    if (b < a) std::swap(a, b);
    out.insert({a, b});
  }
  return out;
}

}  // namespace

TEST_CASE("polygonize: uniform 2x2 grid gives one square polygon") {
  const Grid g = utm_grid(2, 2, 7.0);
  const auto polys = polygonize(g, nullptr, Connectivity::Four);
  REQUIRE(polys.size() == 1);
  const RegionPolygon& p = polys[0];
  CHECK(p.cell_count == 4);
  CHECK(p.pixel_value == 7.0);
  CHECK(p.holes.empty());
  REQUIRE(p.outer.size() == 5);  // square, closed
  CHECK(p.outer.front() == p.outer.back());
  CHECK(ring_signed_area(p.outer) > 0.0);  // counter-clockwise
  CHECK(p.area_ha == doctest::Approx(4 * 0.81).epsilon(1e-12));
}

TEST_CASE("polygonize: checkerboard under Four and Eight connectivity") {
  Grid g = utm_grid(2, 2, 0.0);
  g(0, 1) = 1.0;
  g(1, 0) = 1.0;
  CHECK(polygonize(g, nullptr, Connectivity::Four).size() == 4);
  CHECK(polygonize(g, nullptr, Connectivity::Eight).size() == 2);
}

TEST_CASE("polygonize: all-false mask yields nothing") {
  const Grid g = utm_grid(3, 3, 1.0);
  const MaskGrid mask(g.header(), 0);
  CHECK(polygonize(g, &mask, Connectivity::Four).empty());
}

TEST_CASE("polygonize: mask dimension mismatch is an error") {
  const Grid g = utm_grid(3, 3, 1.0);
  const MaskGrid mask(utm_grid(2, 3, 0.0).header(), 1);
  CHECK_THROWS_AS((void)polygonize(g, &mask, Connectivity::Four), Error);
}

TEST_CASE("polygonize: single-cell and block areas") {
  const auto one = polygonize(utm_grid(1, 1, 3.0), nullptr, Connectivity::Four);
  REQUIRE(one.size() == 1);
  CHECK(polygon_area_ha(one[0]) == doctest::Approx(0.81).epsilon(1e-12));

  const auto block = polygonize(utm_grid(2, 2, 3.0), nullptr, Connectivity::Four);
  REQUIRE(block.size() == 1);
  CHECK(polygon_area_ha(block[0]) == doctest::Approx(3.24).epsilon(1e-12));
}

TEST_CASE("polygonize: shoelace agrees with raster-sum on an L-shape") {
  Grid g = utm_grid(2, 2, 0.0);
  g(0, 0) = 5.0;
  g(1, 0) = 5.0;
  g(1, 1) = 5.0;  // L of three 5-valued cells, one 0 cell
  const auto polys = polygonize(g, nullptr, Connectivity::Four);
  REQUIRE(polys.size() == 2);
  const auto l_poly = std::find_if(polys.begin(), polys.end(),
                                   [](const auto& p) { return p.pixel_value == 5.0; });
  REQUIRE(l_poly != polys.end());
  CHECK(l_poly->cell_count == 3);
  CHECK(geometry_area_ha(*l_poly, g.header().crs) ==
        doctest::Approx(3 * 0.81).epsilon(1e-9));
  CHECK(l_poly->area_ha == doctest::Approx(3 * 0.81).epsilon(1e-12));
}

TEST_CASE("polygonize: partition and area conservation on random grids") {
  Rng rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    testutil::RandomGridOptions opts;
    opts.max_rows = 20;
    opts.max_cols = 20;
    opts.nodata_fraction = trial % 2 ? 0.15 : 0.0;
    Grid g = testutil::random_grid(rng, opts);
    // Quantize to few classes so components form.
    for (int r = 0; r < g.rows(); ++r)
      for (int c = 0; c < g.cols(); ++c)
        if (g.valid(r, c)) g(r, c) = std::floor(g(r, c) / 250.0);

    const auto conn = trial % 3 ? Connectivity::Four : Connectivity::Eight;
    const auto polys = polygonize(g, nullptr, conn);

    std::int64_t cells = 0;
    double area = 0.0;
    for (const auto& p : polys) {
      cells += p.cell_count;
      area += p.area_ha;
      // Exactly one outer ring, counter-clockwise; holes clockwise.
      REQUIRE(ring_signed_area(p.outer) > 0.0);
      for (const Ring& hole : p.holes) REQUIRE(ring_signed_area(hole) < 0.0);
      // UTM grids: shoelace area equals the raster-sum area.
      if (!g.header().crs.is_geographic())
        REQUIRE(geometry_area_ha(p, g.header().crs) ==
                doctest::Approx(p.area_ha).epsilon(1e-9));
    }
    std::int64_t expect_cells = 0;
    double expect_area = 0.0;
    for (int r = 0; r < g.rows(); ++r)
      for (int c = 0; c < g.cols(); ++c)
        if (g.valid(r, c)) {
          ++expect_cells;
          expect_area += cell_area_m2(g.header(), r) / 10000.0;
        }
    REQUIRE(cells == expect_cells);
    REQUIRE(area == doctest::Approx(expect_area).epsilon(1e-9));
  }
}

TEST_CASE("polygonize: geometry is invariant under injective relabeling") {
  Rng rng(31);
  testutil::RandomGridOptions opts;
  opts.max_rows = 12;
  opts.max_cols = 12;
  Grid g = testutil::random_grid(rng, opts);
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c) g(r, c) = std::floor(g(r, c) / 300.0);

  Grid relabeled = g;
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c) relabeled(r, c) = 7.0 * g(r, c) + 3.0;

  const auto a = polygonize(g, nullptr, Connectivity::Four);
  const auto b = polygonize(relabeled, nullptr, Connectivity::Four);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(b[i].pixel_value == 7.0 * a[i].pixel_value + 3.0);
    CHECK(b[i].cell_count == a[i].cell_count);
    CHECK(ring_edges(b[i].outer) == ring_edges(a[i].outer));
    REQUIRE(b[i].holes.size() == a[i].holes.size());
  }
}

TEST_CASE("polygonize: ring around a core produces a hole matching the core") {
  Grid g = utm_grid(3, 3, 1.0);
  g(1, 1) = 2.0;
  const auto polys = polygonize(g, nullptr, Connectivity::Four);
  REQUIRE(polys.size() == 2);
  const RegionPolygon& ring = polys[0];   // value 1
  const RegionPolygon& core = polys[1];   // value 2
  CHECK(ring.pixel_value == 1.0);
  CHECK(core.pixel_value == 2.0);
  REQUIRE(ring.holes.size() == 1);
  CHECK(core.holes.empty());
  CHECK(ring_edges(ring.holes[0]) == ring_edges(core.outer));
  CHECK(ring.cell_count == 8);
  CHECK(core.cell_count == 1);
}

TEST_CASE("polygonize: diagonal pinch keeps Four apart and joins Eight") {
  // Two same-valued cells touching only at a corner.
  Grid g = utm_grid(2, 2, 0.0);
  g(0, 0) = 9.0;
  g(1, 1) = 9.0;

  const auto four = polygonize(g, nullptr, Connectivity::Four);
  int nines = 0;
  for (const auto& p : four)
    if (p.pixel_value == 9.0) ++nines;
  CHECK(nines == 2);

  const auto eight = polygonize(g, nullptr, Connectivity::Eight);
  const auto joined = std::find_if(eight.begin(), eight.end(), [](const auto& p) {
    return p.pixel_value == 9.0;
  });
  REQUIRE(joined != eight.end());
  CHECK(joined->cell_count == 2);
  // One self-touching outer ring whose shoelace equals both cell areas.
  CHECK(geometry_area_ha(*joined, g.header().crs) ==
        doctest::Approx(2 * 0.81).epsilon(1e-9));
}

TEST_CASE("polygonize: pinch duality between foreground and background") {
  // A C-shaped region whose enclosed cell touches the outside only through
  // a diagonal gap. Under Four the background connects through the pinch
  // (no hole, one self-touching outer ring); under Eight the foreground
  // connects instead, so the enclosed cell becomes a hole.
  Grid g = utm_grid(3, 3, 0.0);
  for (auto [r, c] : {std::pair{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 2},
                      {2, 1}, {2, 2}})
    g(r, c) = 7.0;
  // g(1,1) and g(2,0) stay 0: diagonal neighbors across the pinch corner.

  const auto four = polygonize(g, nullptr, Connectivity::Four);
  const auto c_four = std::find_if(four.begin(), four.end(), [](const auto& p) {
    return p.pixel_value == 7.0;
  });
  REQUIRE(c_four != four.end());
  CHECK(c_four->cell_count == 7);
  CHECK(c_four->holes.empty());
  CHECK(geometry_area_ha(*c_four, g.header().crs) ==
        doctest::Approx(7 * 0.81).epsilon(1e-9));
  // The two background cells stay one 8-connected outside region: two
  // separate value-0 polygons is wrong, there must be exactly 2 under Four
  // (they are not 4-adjacent) -- but the C itself must not split.
  int zero_polys = 0;
  for (const auto& p : four)
    if (p.pixel_value == 0.0) ++zero_polys;
  CHECK(zero_polys == 2);

  const auto eight = polygonize(g, nullptr, Connectivity::Eight);
  const auto c_eight =
      std::find_if(eight.begin(), eight.end(), [](const auto& p) {
        return p.pixel_value == 7.0;
      });
  REQUIRE(c_eight != eight.end());
  CHECK(c_eight->cell_count == 7);
  REQUIRE(c_eight->holes.size() == 1);
  CHECK(ring_signed_area(c_eight->holes[0]) < 0.0);
  CHECK(geometry_area_ha(*c_eight, g.header().crs) ==
        doctest::Approx(7 * 0.81).epsilon(1e-9));
}

TEST_CASE("polygonize: output ordering is by value then scan position") {
  Grid g = utm_grid(2, 3, 0.0);
  g(0, 2) = 1.0;
  g(1, 0) = 1.0;  // two separate value-1 components
  const auto polys = polygonize(g, nullptr, Connectivity::Four);
  REQUIRE(polys.size() == 3);
  CHECK(polys[0].pixel_value == 0.0);
  CHECK(polys[1].pixel_value == 1.0);
  CHECK(polys[2].pixel_value == 1.0);
  // First value-1 polygon is the northern one (row 0).
  const double y_first = polys[1].outer.front().y;
  const double y_second = polys[2].outer.front().y;
  CHECK(y_first > y_second);
}
