// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#pragma once

#include <cmath>

namespace shiptraj::geo {

inline constexpr double kWgs84A = 6378137.0;
inline constexpr double kWgs84F = 1.0 / 298.257223563;
inline constexpr double kWgs84B = kWgs84A * (1.0 - kWgs84F);

/// Decimal-degree position. Longitude first, matching the (lon, lat) order
/// used in every serialized trajectory.
struct GeoPoint {
  double lon = 0.0;
  double lat = 0.0;

  bool valid() const noexcept {
    return std::isfinite(lon) && std::isfinite(lat) && lon >= -180.0 && lon <= 180.0 &&
           lat >= -90.0 && lat <= 90.0;
  }
  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

struct BoundingBox {
  double lon_min = -180.0;
  double lon_max = 180.0;
  double lat_min = -90.0;
  double lat_max = 90.0;

  bool valid() const noexcept { return lon_min < lon_max && lat_min < lat_max; }
  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Ship-centred planar offset: x ahead along the reference heading, y to starboard.
struct LocalXY {
  double x = 0.0;
  double y = 0.0;
};

/// WGS84 inverse geodesic distance in meters (Vincenty). Throws
/// Error(kNonConvergence) when the lambda iteration does not settle within
/// 200 rounds, which happens for nearly antipodal pairs.
double vincenty_distance(const GeoPoint& a, const GeoPoint& b);

/// Inclusive bounds test.
bool contains(const BoundingBox& box, const GeoPoint& p) noexcept;

/// Smallest box holding all points, grown by `margin_deg` on every side.
template <typename Range>
BoundingBox extent(const Range& points, double margin_deg) {
  BoundingBox box{180.0, -180.0, 90.0, -90.0};
  for (const GeoPoint& p : points) {
    box.lon_min = std::fmin(box.lon_min, p.lon);
    box.lon_max = std::fmax(box.lon_max, p.lon);
    box.lat_min = std::fmin(box.lat_min, p.lat);
    box.lat_max = std::fmax(box.lat_max, p.lat);
  }
  box.lon_min -= margin_deg;
  box.lon_max += margin_deg;
  box.lat_min -= margin_deg;
  box.lat_max += margin_deg;
  return box;
}

/// Meters per degree of longitude / latitude at the given latitude on WGS84.
double meters_per_deg_lon(double lat_deg) noexcept;
double meters_per_deg_lat(double lat_deg) noexcept;

/// Maximum origin-to-point separation accepted by the tangent-plane projection.
inline constexpr double kLocalProjectionRangeM = 50'000.0;

/// Equirectangular projection about `origin`, rotated so +x points along
/// `heading_deg` (clockwise from true north). Throws kRangeExceeded beyond 50 km.
LocalXY to_local_xy(const GeoPoint& origin, double heading_deg, const GeoPoint& p);

/// Analytic inverse of to_local_xy.
GeoPoint from_local_xy(const GeoPoint& origin, double heading_deg, const LocalXY& xy);

/// Initial bearing from a to b in degrees [0, 360), measured on the local
/// tangent plane at a. Returns 0 for coincident points.
double local_bearing_deg(const GeoPoint& a, const GeoPoint& b) noexcept;

}  // namespace shiptraj::geo
