// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "shiptraj/ais_ingest.hpp"
#include "shiptraj/geo.hpp"

namespace shiptraj::metrics {

using geo::GeoPoint;
using TrajectoryList = std::vector<std::vector<GeoPoint>>;

/// Mean final-step L2 error in raw degrees.
double fde(const TrajectoryList& preds, const TrajectoryList& truths);
/// Mean all-step L2 error in raw degrees.
double ade(const TrajectoryList& preds, const TrajectoryList& truths);
/// Geodesic (meters) variants of the above.
double fde_m(const TrajectoryList& preds, const TrajectoryList& truths);
double ade_m(const TrajectoryList& preds, const TrajectoryList& truths);

enum class UnparsableStrategy { kExclude, kSubstituteLastObserved };

struct EvalReport {
  double fde_deg = 0.0;
  double ade_deg = 0.0;
  double fde_m = 0.0;
  double ade_m = 0.0;
  std::size_t n_trajectories = 0;
  std::size_t n_points = 0;
  std::size_t n_unparsable = 0;
};

struct PointError {
  std::string sample_id;
  std::size_t step = 0;
  double err_deg = 0.0;
  double err_m = 0.0;
};

struct ModelOutput {
  std::string sample_id;
  std::string text;
};

struct EvalResult {
  EvalReport report;
  std::vector<PointError> errors;
};

/// Parses every output against its sample and aggregates FDE/ADE. Throws
/// kUnknownSampleId when an output names a sample absent from `samples`.
EvalResult evaluate_completions(const std::vector<ModelOutput>& outputs,
                                const std::vector<ais::PredictionSample>& samples, bool cot,
                                UnparsableStrategy strategy = UnparsableStrategy::kExclude);

void write_errors_csv(std::ostream& out, const std::vector<PointError>& errors);

}  // namespace shiptraj::metrics
