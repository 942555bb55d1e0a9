// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "shiptraj/textio.hpp"

namespace shiptraj::llm {

struct EndpointConfig {
  std::string base_url = "http://127.0.0.1:8000/v1";
  std::string model_name = "default";
  double temperature = 0.7;
  std::size_t max_tokens = 1024;
  double timeout_s = 60.0;
  std::size_t max_retries = 3;
  std::size_t max_concurrency = 4;
  std::string auth_token_env;   // empty: no bearer auth
  double backoff_base_s = 0.5;  // first retry delay, doubled on each retry

  void validate() const;
};

/// Request body in the chat-completions wire format.
std::string make_request_body(const EndpointConfig& cfg, const textio::PromptText& prompt);

/// Sends one chat-completions request and returns choices[0].message.content.
/// Retries 5xx, 429, timeouts and transport failures with exponential
/// backoff. Throws HttpError, Error(kTimeout) or Error(kAuthMissing).
std::string complete(const EndpointConfig& cfg, const textio::PromptText& prompt);

struct CompletionRecord {
  std::string sample_id;
  std::string text;
  double latency_ms = 0.0;
  std::string status;  // "ok" or the error category
  std::string error;
};

using PromptBatch = std::vector<std::pair<std::string, textio::PromptText>>;

/// Runs every prompt with at most max_concurrency requests in flight. The
/// result has one record per prompt, in input order.
std::vector<CompletionRecord> batch_infer(const EndpointConfig& cfg, const PromptBatch& prompts);

/// batch_infer followed by a JSON-lines write. Throws kIoError.
std::vector<CompletionRecord> batch_infer_to_file(const EndpointConfig& cfg,
                                                  const PromptBatch& prompts,
                                                  const std::filesystem::path& out);

}  // namespace shiptraj::llm
