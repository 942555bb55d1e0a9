// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "shiptraj/geo.hpp"

namespace shiptraj {

/// Uniformly sampled track. Point i sits at t0 + i * interval_s.
struct Trajectory {
  std::int64_t mmsi = 0;
  double t0 = 0.0;
  double interval_s = 5.0;
  std::vector<geo::GeoPoint> points;
  std::vector<double> speeds;    // knots per point, empty when unknown
  std::vector<double> headings;  // degrees per point, empty when unknown
  std::optional<double> length_m;
  std::optional<double> beam_m;

  std::size_t size() const noexcept { return points.size(); }
  double time_at(std::size_t i) const noexcept { return t0 + static_cast<double>(i) * interval_s; }
  Trajectory slice(std::size_t begin, std::size_t count) const;
};

}  // namespace shiptraj
