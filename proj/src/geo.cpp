// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#include "shiptraj/geo.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "shiptraj/error.hpp"

namespace shiptraj::geo {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kE2 = kWgs84F * (2.0 - kWgs84F);
constexpr int kMaxIterations = 200;
constexpr double kLambdaTolerance = 1e-12;

double wrap_pi(double x) {
  x = std::remainder(x, 2.0 * std::numbers::pi);
  return x;
}

}  // namespace

double vincenty_distance(const GeoPoint& a, const GeoPoint& b) {
  if (a == b) return 0.0;

  const double f = kWgs84F;
  const double L = wrap_pi((b.lon - a.lon) * kDeg);
  const double U1 = std::atan((1.0 - f) * std::tan(a.lat * kDeg));
  const double U2 = std::atan((1.0 - f) * std::tan(b.lat * kDeg));
  const double sinU1 = std::sin(U1), cosU1 = std::cos(U1);
  const double sinU2 = std::sin(U2), cosU2 = std::cos(U2);

  double lambda = L;
  double sin_sigma = 0.0, cos_sigma = 0.0, sigma = 0.0;
  double sin_alpha = 0.0, cos2_alpha = 0.0, cos_2sigma_m = 0.0;
  auto update_sigma = [&] {
    const double sin_lambda = std::sin(lambda), cos_lambda = std::cos(lambda);
    const double t1 = cosU2 * sin_lambda;
    const double t2 = cosU1 * sinU2 - sinU1 * cosU2 * cos_lambda;
    sin_sigma = std::sqrt(t1 * t1 + t2 * t2);
    cos_sigma = sinU1 * sinU2 + cosU1 * cosU2 * cos_lambda;
    sigma = std::atan2(sin_sigma, cos_sigma);
    if (sin_sigma == 0.0) return;
    sin_alpha = cosU1 * cosU2 * sin_lambda / sin_sigma;
    cos2_alpha = 1.0 - sin_alpha * sin_alpha;
    // Equatorial lines have cos2_alpha == 0.
    cos_2sigma_m = cos2_alpha != 0.0 ? cos_sigma - 2.0 * sinU1 * sinU2 / cos2_alpha : 0.0;
  };
  bool converged = false;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    update_sigma();
    if (sin_sigma == 0.0) return 0.0;
    const double C = f / 16.0 * cos2_alpha * (4.0 + f * (4.0 - 3.0 * cos2_alpha));
    const double prev = lambda;
    lambda = L + (1.0 - C) * f * sin_alpha *
                     (sigma + C * sin_sigma *
                                  (cos_2sigma_m + C * cos_sigma *
                                                      (-1.0 + 2.0 * cos_2sigma_m * cos_2sigma_m)));
    if (std::fabs(lambda - prev) < kLambdaTolerance) {
      converged = true;
      break;
    }
  }
  if (!converged || !std::isfinite(lambda)) {
    throw Error(Errc::kNonConvergence,
                "Vincenty iteration did not converge for (" + std::to_string(a.lon) + ", " +
                    std::to_string(a.lat) + ") -> (" + std::to_string(b.lon) + ", " +
                    std::to_string(b.lat) + ")");
  }
  // Sigma terms from the converged lambda, not the one before it.
  update_sigma();
  if (sin_sigma == 0.0) return 0.0;

  const double a2 = kWgs84A * kWgs84A, b2 = kWgs84B * kWgs84B;
  const double u2 = cos2_alpha * (a2 - b2) / b2;
  const double A = 1.0 + u2 / 16384.0 * (4096.0 + u2 * (-768.0 + u2 * (320.0 - 175.0 * u2)));
  const double B = u2 / 1024.0 * (256.0 + u2 * (-128.0 + u2 * (74.0 - 47.0 * u2)));
  const double c2m = cos_2sigma_m * cos_2sigma_m;
  const double delta_sigma =
      B * sin_sigma *
      (cos_2sigma_m + B / 4.0 *
                          (cos_sigma * (-1.0 + 2.0 * c2m) -
                           B / 6.0 * cos_2sigma_m * (-3.0 + 4.0 * sin_sigma * sin_sigma) *
                               (-3.0 + 4.0 * c2m)));
  return kWgs84B * A * (sigma - delta_sigma);
}

bool contains(const BoundingBox& box, const GeoPoint& p) noexcept {
  return p.lon >= box.lon_min && p.lon <= box.lon_max && p.lat >= box.lat_min &&
         p.lat <= box.lat_max;
}

double meters_per_deg_lon(double lat_deg) noexcept {
  const double s = std::sin(lat_deg * kDeg);
  const double prime_vertical = kWgs84A / std::sqrt(1.0 - kE2 * s * s);
  return prime_vertical * std::cos(lat_deg * kDeg) * kDeg;
}

double meters_per_deg_lat(double lat_deg) noexcept {
  const double s = std::sin(lat_deg * kDeg);
  const double w = 1.0 - kE2 * s * s;
  const double meridional = kWgs84A * (1.0 - kE2) / (w * std::sqrt(w));
  return meridional * kDeg;
}

LocalXY to_local_xy(const GeoPoint& origin, double heading_deg, const GeoPoint& p) {
  const double east = wrap_pi((p.lon - origin.lon) * kDeg) / kDeg * meters_per_deg_lon(origin.lat);
  const double north = (p.lat - origin.lat) * meters_per_deg_lat(origin.lat);
  if (std::hypot(east, north) > kLocalProjectionRangeM) {
    throw Error(Errc::kRangeExceeded, "separation exceeds local projection range");
  }
  const double h = heading_deg * kDeg;
  const double ch = std::cos(h), sh = std::sin(h);
  return {north * ch + east * sh, east * ch - north * sh};
}

GeoPoint from_local_xy(const GeoPoint& origin, double heading_deg, const LocalXY& xy) {
  const double h = heading_deg * kDeg;
  const double ch = std::cos(h), sh = std::sin(h);
  const double north = xy.x * ch - xy.y * sh;
  const double east = xy.x * sh + xy.y * ch;
  double lon = origin.lon + east / meters_per_deg_lon(origin.lat);
  if (lon > 180.0) lon -= 360.0;
  if (lon < -180.0) lon += 360.0;
  return {lon, origin.lat + north / meters_per_deg_lat(origin.lat)};
}

double local_bearing_deg(const GeoPoint& a, const GeoPoint& b) noexcept {
  const double east = wrap_pi((b.lon - a.lon) * kDeg) / kDeg * meters_per_deg_lon(a.lat);
  const double north = (b.lat - a.lat) * meters_per_deg_lat(a.lat);
  if (east == 0.0 && north == 0.0) return 0.0;
  double deg = std::atan2(east, north) / kDeg;
  if (deg < 0.0) deg += 360.0;
  if (deg >= 360.0) deg -= 360.0;
  return deg;
}

}  // namespace shiptraj::geo
