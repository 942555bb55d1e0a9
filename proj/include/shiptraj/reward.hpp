// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "shiptraj/ais_ingest.hpp"
#include "shiptraj/geo.hpp"
#include "shiptraj/textio.hpp"

namespace shiptraj::reward {

using geo::GeoPoint;

struct RewardConfig {
  double center_threshold_m = 120.0;
  double point_threshold_m = 90.0;
  geo::BoundingBox bounds;
  bool cot_required = true;
  // Use each sample's own region bounds instead of `bounds` in total_reward.
  bool use_sample_bounds = true;
};

struct RewardBreakdown {
  double format = 0.0;
  double center = 0.0;
  double points = 0.0;
  double total = 0.0;
  std::optional<textio::ParseCause> parse_cause;
  bool out_of_bounds = false;
};

struct FormatResult {
  double reward = 0.0;
  std::optional<textio::ParsedOutput> parsed;
  std::optional<textio::ParseCause> cause;
  bool out_of_bounds = false;
};

/// 1 when the text parses and every predicted point lies inside cfg.bounds.
FormatResult format_reward(std::string_view text, std::size_t t_pred, const RewardConfig& cfg);

/// 1 when the geodesic distance between the mean positions of the two
/// trajectories is strictly below the center threshold.
double center_reward(std::span<const GeoPoint> pred, std::span<const GeoPoint> truth,
                     const RewardConfig& cfg);

/// Adds 1/T for every step whose geodesic error is strictly below the point threshold.
double pointwise_reward(std::span<const GeoPoint> pred, std::span<const GeoPoint> truth,
                        const RewardConfig& cfg);

/// format + center + points, with the accuracy terms gated on format == 1.
RewardBreakdown total_reward(std::string_view text, const ais::PredictionSample& sample,
                             const RewardConfig& cfg);

/// Arithmetic mean of longitudes and latitudes.
GeoPoint trajectory_center(std::span<const GeoPoint> points);

}  // namespace shiptraj::reward
