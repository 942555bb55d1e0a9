// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "shiptraj/ais_ingest.hpp"
#include "shiptraj/grpo.hpp"
#include "shiptraj/llm_client.hpp"
#include "shiptraj/policy.hpp"
#include "shiptraj/reward.hpp"
#include "shiptraj/ship_domain.hpp"

namespace shiptraj::cli {

/// Everything a run needs. Built from defaults, then a JSON config file, then
/// command-line flags; the merged result is written next to the outputs.
struct RunConfig {
  std::string region = "default";
  std::size_t t_obs = 8;
  std::size_t t_pred = 4;
  std::size_t stride = 0;
  double interval_s = ais::kDefaultIntervalS;
  double max_gap_s = ais::kDefaultMaxGapS;
  std::optional<geo::BoundingBox> bounds;
  double bounds_margin_deg = 0.05;
  ais::CsvSchema columns;
  std::uint64_t seed = 0;

  domain::ConflictConfig qsd;
  reward::RewardConfig reward;
  std::size_t max_conflicts = 8;
  policy::ActionVocab vocab;
  grpo::GrpoConfig grpo;
  llm::EndpointConfig endpoint;
};

nlohmann::ordered_json to_json(const RunConfig& cfg);
/// Overlays the keys present in `doc` onto `cfg`. Throws Error(kSchemaError).
void merge_json(RunConfig& cfg, const nlohmann::json& doc);
void merge_file(RunConfig& cfg, const std::filesystem::path& path);
void write_effective(const RunConfig& cfg, const std::filesystem::path& dir);

}  // namespace shiptraj::cli
