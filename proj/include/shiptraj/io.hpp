// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "shiptraj/ais_ingest.hpp"
#include "shiptraj/grpo.hpp"
#include "shiptraj/llm_client.hpp"
#include "shiptraj/metrics.hpp"
#include "shiptraj/reward.hpp"
#include "shiptraj/textio.hpp"

// JSON-lines formats exchanged between pipeline stages.
namespace shiptraj::io {

/// {"id","region","t0","interval_s","obs","future","conflicts","bounds"} with
/// coordinates at six decimals.
std::string sample_to_json(const ais::PredictionSample& sample);
/// Throws kSchemaError on malformed lines.
ais::PredictionSample sample_from_json(const std::string& line);

void write_samples(const std::filesystem::path& path,
                   const std::vector<ais::PredictionSample>& samples);
std::vector<ais::PredictionSample> read_samples(const std::filesystem::path& path);

/// {"sample_id","system","user","T_pred"}
std::string prompt_to_json(const std::string& sample_id, const textio::PromptText& prompt,
                           std::size_t t_pred);
struct PromptRecord {
  std::string sample_id;
  textio::PromptText prompt;
  std::size_t t_pred = 0;
};
std::vector<PromptRecord> read_prompts(const std::filesystem::path& path);

/// {"sample_id","text","latency_ms","status"} plus "error" on failures.
std::string completion_to_json(const llm::CompletionRecord& record);
std::vector<llm::CompletionRecord> read_completions(const std::filesystem::path& path);
void write_completions(const std::filesystem::path& path,
                       const std::vector<llm::CompletionRecord>& records);

/// {"sample_id","completion_index","format","center","points","total","parse_cause"}
std::string score_to_json(const std::string& sample_id, std::size_t completion_index,
                          const reward::RewardBreakdown& breakdown);

/// {"step","mean_reward","mean_kl","clip_fraction","objective"}
std::string step_log_to_json(const grpo::StepLog& log);

std::string eval_report_to_json(const metrics::EvalReport& report);

/// Reads every non-empty line. Throws kIoError.
std::vector<std::string> read_lines(const std::filesystem::path& path);
/// Throws kIoError.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace shiptraj::io
