#include "terracarta/utm.hpp"

#include <cmath>

#include "terracarta/errors.hpp"

namespace terracarta {

namespace {

// WGS84 constants and the Krueger series coefficients in the third
// flattening n, evaluated once.
struct TmConstants {
  double e;         // first eccentricity
  double e2m;       // 1 - e^2
  double scale_a;   // k0 * rectifying radius
  double alpha[6];  // forward series
  double beta[6];   // inverse series

  TmConstants() {
    const double a = 6378137.0;
    const double f = 1.0 / 298.257223563;
    const double n = f / (2.0 - f);
    const double n2 = n * n, n3 = n2 * n, n4 = n3 * n, n5 = n4 * n,
                 n6 = n5 * n;

    e = std::sqrt(f * (2.0 - f));
    e2m = 1.0 - e * e;

    const double rect_radius =
        a / (1.0 + n) * (1.0 + n2 / 4.0 + n4 / 64.0 + n6 / 256.0);
    scale_a = 0.9996 * rect_radius;

    alpha[0] = n / 2.0 - 2.0 / 3.0 * n2 + 5.0 / 16.0 * n3 +
               41.0 / 180.0 * n4 - 127.0 / 288.0 * n5 +
               7891.0 / 37800.0 * n6;
    alpha[1] = 13.0 / 48.0 * n2 - 3.0 / 5.0 * n3 + 557.0 / 1440.0 * n4 +
               281.0 / 630.0 * n5 - 1983433.0 / 1935360.0 * n6;
    alpha[2] = 61.0 / 240.0 * n3 - 103.0 / 140.0 * n4 +
               15061.0 / 26880.0 * n5 + 167603.0 / 181440.0 * n6;
    alpha[3] = 49561.0 / 161280.0 * n4 - 179.0 / 168.0 * n5 +
               6601661.0 / 7257600.0 * n6;
    alpha[4] = 34729.0 / 80640.0 * n5 - 3418889.0 / 1995840.0 * n6;
    alpha[5] = 212378941.0 / 319334400.0 * n6;

    beta[0] = n / 2.0 - 2.0 / 3.0 * n2 + 37.0 / 96.0 * n3 -
              1.0 / 360.0 * n4 - 81.0 / 512.0 * n5 + 96199.0 / 604800.0 * n6;
    beta[1] = 1.0 / 48.0 * n2 + 1.0 / 15.0 * n3 - 437.0 / 1440.0 * n4 +
              46.0 / 105.0 * n5 - 1118711.0 / 3870720.0 * n6;
    beta[2] = 17.0 / 480.0 * n3 - 37.0 / 840.0 * n4 - 209.0 / 4480.0 * n5 +
              5569.0 / 90720.0 * n6;
    beta[3] = 4397.0 / 161280.0 * n4 - 11.0 / 504.0 * n5 -
              830251.0 / 7257600.0 * n6;
    beta[4] = 4583.0 / 161280.0 * n5 - 108847.0 / 3991680.0 * n6;
    beta[5] = 20648693.0 / 638668800.0 * n6;
  }
};

const TmConstants& tm() {
  static const TmConstants k;
  return k;
}

constexpr double kFalseEasting = 500000.0;
constexpr double kFalseNorthingSouth = 10000000.0;

double hyp(double x) { return std::sqrt(1.0 + x * x); }

// Conformal tangent tau' as a function of the geodetic tangent tau.
double taupf(double tau, double e) {
  const double tau1 = hyp(tau);
  const double sig = std::sinh(e * std::atanh(e * tau / tau1));
  return hyp(sig) * tau - sig * tau1;
}

// Inverse of taupf by Newton iteration.
double tauf(double taup, double e, double e2m) {
  double tau = taup / e2m;
  const double stol =
      std::sqrt(2.220446049250313e-16) / 10.0 * std::max(1.0, std::abs(taup));
  for (int i = 0; i < 6; ++i) {
    const double taupa = taupf(tau, e);
    const double dtau =
        (taup - taupa) * (1.0 + e2m * tau * tau) / (e2m * hyp(tau) * hyp(taupa));
    tau += dtau;
    if (std::abs(dtau) < stol) break;
  }
  return tau;
}

}  // namespace

UtmPoint geo_to_utm(const GeoPoint& p, int zone) {
  if (zone < 1 || zone > 60) fail(Errc::BadInput, "UTM zone must be in 1..60");
  if (std::abs(p.lat) > 84.0)
    fail(Errc::LatitudeOutOfRange, "transverse Mercator limited to |lat| <= 84");

  const TmConstants& k = tm();
  const double phi = p.lat * kDegToRad;
  double dlon = p.lon - utm_central_meridian_deg(zone);
  while (dlon > 180.0) dlon -= 360.0;
  while (dlon < -180.0) dlon += 360.0;
  const double lam = dlon * kDegToRad;

  const double tau = std::tan(phi);
  const double taup = taupf(tau, k.e);

  const double xi_p = std::atan2(taup, std::cos(lam));
  const double eta_p =
      std::asinh(std::sin(lam) / std::hypot(taup, std::cos(lam)));

  double xi = xi_p, eta = eta_p;
  for (int j = 0; j < 6; ++j) {
    const double arg = 2.0 * (j + 1);
    xi += k.alpha[j] * std::sin(arg * xi_p) * std::cosh(arg * eta_p);
    eta += k.alpha[j] * std::cos(arg * xi_p) * std::sinh(arg * eta_p);
  }

  UtmPoint out;
  out.zone = zone;
  out.hemisphere = p.lat < 0.0 ? Hemisphere::South : Hemisphere::North;
  out.easting = kFalseEasting + k.scale_a * eta;
  out.northing = k.scale_a * xi;
  if (out.hemisphere == Hemisphere::South) out.northing += kFalseNorthingSouth;
  return out;
}

GeoPoint utm_to_geo(const UtmPoint& u) {
  if (u.zone < 1 || u.zone > 60) fail(Errc::BadInput, "UTM zone must be in 1..60");

  const TmConstants& k = tm();
  double y = u.northing;
  if (u.hemisphere == Hemisphere::South) y -= kFalseNorthingSouth;
  const double xi = y / k.scale_a;
  const double eta = (u.easting - kFalseEasting) / k.scale_a;

  double xi_p = xi, eta_p = eta;
  for (int j = 0; j < 6; ++j) {
    const double arg = 2.0 * (j + 1);
    xi_p -= k.beta[j] * std::sin(arg * xi) * std::cosh(arg * eta);
    eta_p -= k.beta[j] * std::cos(arg * xi) * std::sinh(arg * eta);
  }

  const double sh = std::sinh(eta_p);
  const double taup = std::sin(xi_p) / std::hypot(sh, std::cos(xi_p));
  const double tau = tauf(taup, k.e, k.e2m);

  GeoPoint out;
  out.lat = std::atan(tau) / kDegToRad;
  out.lon = utm_central_meridian_deg(u.zone) +
            std::atan2(sh, std::cos(xi_p)) / kDegToRad;
  return out;
}

}  // namespace terracarta
