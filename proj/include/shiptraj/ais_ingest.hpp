// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "shiptraj/geo.hpp"
#include "shiptraj/ship_domain.hpp"
#include "shiptraj/trajectory.hpp"

namespace shiptraj::ais {

using geo::BoundingBox;
using geo::GeoPoint;

struct AisRecord {
  std::int64_t mmsi = 0;
  double timestamp = 0.0;  // seconds since epoch
  GeoPoint pos;
  std::optional<double> sog;  // knots
  std::optional<double> cog;  // degrees
  std::optional<double> heading;
  std::optional<double> length;  // meters
  std::optional<double> beam;

  bool valid() const noexcept;
};

/// Column names used to locate each field in the CSV header.
struct CsvSchema {
  std::string mmsi = "mmsi";
  std::string timestamp = "ts";
  std::string lon = "lon";
  std::string lat = "lat";
  std::string sog = "sog";
  std::string cog = "cog";
  std::string heading = "heading";
  std::string length = "length";
  std::string beam = "beam";
};

struct CsvParseResult {
  std::vector<AisRecord> records;
  std::size_t skipped = 0;
};

/// Reads a comma-separated AIS file with a header row. Rows that do not parse
/// or violate AisRecord invariants are skipped and counted. Throws kIoError
/// when the file cannot be read and kSchemaError when mmsi, timestamp, lon or
/// lat columns are absent.
CsvParseResult parse_ais_csv(const std::filesystem::path& path, const CsvSchema& schema = {});
CsvParseResult parse_ais_csv_text(const std::string& text, const CsvSchema& schema = {});

/// Time-ordered records of one vessel with no gap above the segmentation limit.
struct RawTrack {
  std::int64_t mmsi = 0;
  std::vector<AisRecord> records;
};

inline constexpr double kDefaultMaxGapS = 120.0;
inline constexpr std::size_t kMinTrackPoints = 4;

std::vector<RawTrack> segment_tracks(std::vector<AisRecord> records,
                                     double max_gap_s = kDefaultMaxGapS);

using shiptraj::Trajectory;

inline constexpr double kDefaultIntervalS = 5.0;

/// Natural cubic spline resampling of lon(t) and lat(t) onto the global grid
/// of multiples of `interval_s` that falls inside the track's time span.
/// Speeds are interpolated linearly and headings along the shorter arc when
/// every record carries them. Throws kTooShort (< 4 records) or
/// kDegenerateTime (timestamps not strictly increasing).
Trajectory spline_resample(const RawTrack& track, double interval_s = kDefaultIntervalS);

/// Natural cubic spline through (xs[i], ys[i]) evaluated at `at`. xs must be
/// strictly increasing and every query inside [xs.front(), xs.back()].
std::vector<double> natural_spline(const std::vector<double>& xs, const std::vector<double>& ys,
                                   const std::vector<double>& at);

struct ConflictTrack {
  std::int64_t mmsi = 0;
  std::vector<GeoPoint> points;  // time-aligned with the observed window
  double min_f = 0.0;            // smallest domain function value seen
  std::vector<std::size_t> intruded_steps;
};

/// One prediction task: observed window, ground-truth continuation, and the
/// neighbours flagged by the ship domain check, most severe first.
struct PredictionSample {
  std::string id;  // "<mmsi>-<segment>-<window>"
  std::string region;
  std::int64_t mmsi = 0;
  double t0 = 0.0;
  double interval_s = kDefaultIntervalS;
  std::vector<GeoPoint> observed;
  std::vector<GeoPoint> future;
  std::vector<ConflictTrack> conflicts;
  BoundingBox bounds;

  /// Identifier of the trajectory the window was cut from (id minus window index).
  std::string source_id() const;
  /// Throws kInvalidArgument when length or alignment invariants fail.
  void validate() const;
};

struct SampleConfig {
  std::size_t t_obs = 8;
  std::size_t t_pred = 4;
  std::size_t stride = 0;  // 0 selects t_obs + t_pred
  std::string region = "default";
  BoundingBox bounds;
  domain::ConflictConfig domain;
};

/// Slides a t_obs + t_pred window over every trajectory, attaching every other
/// vessel whose position intrudes on the target's ship domain during the
/// observation window. Windows with any point outside `bounds` are skipped.
std::vector<PredictionSample> build_samples(const std::vector<Trajectory>& trajectories,
                                            const SampleConfig& cfg);

struct DatasetSplit {
  std::vector<PredictionSample> train;
  std::vector<PredictionSample> val;
  std::vector<PredictionSample> test;
  std::vector<std::string> train_sources;
  std::vector<std::string> val_sources;
  std::vector<std::string> test_sources;
};

/// 90/5/5 split by source trajectory; deterministic for a given seed. With at
/// least 20 trajectories every split is nonempty.
DatasetSplit split_dataset(const std::vector<PredictionSample>& samples, std::uint64_t seed);

}  // namespace shiptraj::ais
