// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shiptraj/ais_ingest.hpp"
#include "shiptraj/trajectory.hpp"

// Synthetic constant-velocity fleets for demos and end-to-end checks.
namespace shiptraj::synth {

struct FleetConfig {
  std::size_t vessels = 200;
  std::size_t points = 12;
  double interval_s = 5.0;
  double min_speed_kn = 2.0;
  double max_speed_kn = 20.0;
  geo::BoundingBox area{122.0, 122.6, 37.0, 37.6};
  double t_start = 1'600'000'000.0;
  std::int64_t first_mmsi = 413'000'000;
  std::uint64_t seed = 7;
};

/// Vessels on straight lines with uniformly drawn headings and speeds, sampled
/// exactly on the interval grid. Displacement per step is constant in degrees.
std::vector<Trajectory> constant_velocity_fleet(const FleetConfig& cfg);

/// The same fleet as raw AIS records with `jitter_s` of uniform timestamp
/// noise (first and last fixes of each vessel stay on the grid).
std::vector<ais::AisRecord> constant_velocity_records(const FleetConfig& cfg, double jitter_s = 0.0);

/// CSV text using the default column names.
std::string records_to_csv(const std::vector<ais::AisRecord>& records);

}  // namespace shiptraj::synth
