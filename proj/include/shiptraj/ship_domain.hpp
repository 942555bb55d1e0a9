// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#pragma once

#include <cstdint>
#include <vector>

#include "shiptraj/geo.hpp"
#include "shiptraj/trajectory.hpp"

namespace shiptraj::domain {

/// Quaternion ship domain: four safety radii plus the shape exponent k
/// (1 gives a combined quadrilateral, 2 a combined ellipse). Some sources
/// call the fore/aft radii bow/stern; they are the same quantities.
struct QsdParams {
  double r_fore = 0.0;
  double r_aft = 0.0;
  double r_starb = 0.0;
  double r_port = 0.0;
  int k = 2;

  bool valid() const noexcept;
  QsdParams scaled(double factor) const noexcept;
};

/// Speed-dependent radii from the Kijima advance and tactical-diameter gains.
/// Speed is clamped to at least 1 kn. Throws kInvalidShip for length <= 0.
QsdParams qsd_radii(double length_m, double speed_kn, int k = 2);

struct DomainTest {
  bool inside = false;
  double f = 0.0;
};

/// Evaluates the domain function f_k at a ship-frame offset; inside iff f <= 1.
DomainTest qsd_contains(const QsdParams& params, const geo::LocalXY& rel) noexcept;

struct ConflictReport {
  std::int64_t target_mmsi = 0;
  std::int64_t neighbor_mmsi = 0;
  std::vector<std::size_t> intruded_steps;
  double min_f = 0.0;
};

/// Target ship state per step of the window. Empty `headings` selects the
/// bearing of motion between consecutive points.
struct TargetShip {
  double length_m = 100.0;
  std::vector<double> speeds_kn;
  std::vector<double> headings_deg;
};

struct Neighbor {
  std::int64_t mmsi = 0;
  const Trajectory* track = nullptr;
};

struct ConflictConfig {
  int k = 2;
  double scale = 1.0;
  double default_length_m = 100.0;
  double default_speed_kn = 10.0;
};

/// Per-step heading of a trajectory: recorded headings when present, else the
/// bearing towards the next point, with the final step reusing the previous one.
std::vector<double> step_headings(const Trajectory& track);

/// Per-step speed in knots: recorded speeds when present, else the geodesic
/// displacement rate, falling back to `default_speed_kn` for single points.
std::vector<double> step_speeds(const Trajectory& track, double default_speed_kn);

/// Target ship description derived from a trajectory and configuration defaults.
TargetShip target_ship_for(const Trajectory& track, const ConflictConfig& cfg);

/// Reports every neighbour that enters the target's domain (radii times
/// `scale`) on at least one step, sorted by min_f ascending. All tracks must
/// share t0, interval and length; otherwise throws kMisalignedWindows.
std::vector<ConflictReport> detect_conflicts(const Trajectory& target, const TargetShip& ship,
                                             const std::vector<Neighbor>& neighbors, int k,
                                             double scale);

}  // namespace shiptraj::domain
