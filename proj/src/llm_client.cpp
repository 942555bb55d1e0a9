// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#include "shiptraj/llm_client.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "shiptraj/error.hpp"
#include "shiptraj/io.hpp"

namespace shiptraj::llm {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct ParsedUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // prefix without trailing slash
};

ParsedUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(Errc::kInvalidArgument, "base_url needs a scheme: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  ParsedUrl out;
  out.origin = url.substr(0, path_start);
  out.path = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!out.path.empty() && out.path.back() == '/') out.path.pop_back();
  return out;
}

std::string excerpt(const std::string& body) {
  constexpr std::size_t kMax = 200;
  return body.size() <= kMax ? body : body.substr(0, kMax) + "...";
}

bool retryable_status(int status) { return status >= 500 || status == 429; }

}  // namespace

void EndpointConfig::validate() const {
  if (max_concurrency < 1) throw Error(Errc::kInvalidArgument, "max_concurrency must be >= 1");
  if (!(timeout_s > 0.0)) throw Error(Errc::kInvalidArgument, "timeout_s must be > 0");
  if (!(temperature >= 0.0)) throw Error(Errc::kInvalidArgument, "temperature must be >= 0");
  if (!(backoff_base_s >= 0.0)) throw Error(Errc::kInvalidArgument, "backoff_base_s must be >= 0");
}

std::string make_request_body(const EndpointConfig& cfg, const textio::PromptText& prompt) {
  json body = {
      {"model", cfg.model_name},
      {"messages",
       json::array({{{"role", "system"}, {"content", prompt.system}},
                    {{"role", "user"}, {"content", prompt.user}}})},
      {"temperature", cfg.temperature},
      {"max_tokens", cfg.max_tokens},
      {"stream", false},
  };
  return body.dump();
}

std::string complete(const EndpointConfig& cfg, const textio::PromptText& prompt) {
  cfg.validate();
  httplib::Headers headers;
  if (!cfg.auth_token_env.empty()) {
    const char* token = std::getenv(cfg.auth_token_env.c_str());
    if (token == nullptr || *token == '\0') {
      throw Error(Errc::kAuthMissing, "environment variable " + cfg.auth_token_env + " is not set");
    }
    headers.emplace("Authorization", std::string("Bearer ") + token);
  }

  const ParsedUrl url = split_url(cfg.base_url);
  const std::string path = url.path + "/chat/completions";
  const std::string body = make_request_body(cfg, prompt);
  const auto timeout = std::chrono::duration<double>(cfg.timeout_s);
  const auto timeout_us = std::chrono::duration_cast<std::chrono::microseconds>(timeout);

  httplib::Client client(url.origin);
  client.set_connection_timeout(timeout_us);
  client.set_read_timeout(timeout_us);
  client.set_write_timeout(timeout_us);

  enum class Failure { kNone, kTimeout, kTransport, kStatus };
  Failure last = Failure::kNone;
  int last_status = 0;
  std::string last_detail;

  for (std::size_t attempt = 0; attempt <= cfg.max_retries; ++attempt) {
    if (attempt > 0) {
      const double delay = cfg.backoff_base_s * std::ldexp(1.0, static_cast<int>(attempt) - 1);
      std::this_thread::sleep_for(std::chrono::duration<double>(delay));
    }
    const auto start = Clock::now();
    auto res = client.Post(path, headers, body, "application/json");
    if (!res) {
      const auto err = res.error();
      const bool timed_out = err == httplib::Error::ConnectionTimeout ||
                             (err == httplib::Error::Read && Clock::now() - start >= timeout * 0.9);
      last = timed_out ? Failure::kTimeout : Failure::kTransport;
      last_status = 0;
      last_detail = httplib::to_string(err);
      continue;
    }
    if (res->status == 200) {
      const json doc = json::parse(res->body, nullptr, false);
      if (doc.is_discarded() || !doc.contains("choices") || !doc["choices"].is_array() ||
          doc["choices"].empty()) {
        throw HttpError(res->status, "malformed completion response: " + excerpt(res->body));
      }
      const auto& choice = doc["choices"][0];
      if (choice.contains("message") && choice["message"].contains("content") &&
          choice["message"]["content"].is_string()) {
        return choice["message"]["content"].get<std::string>();
      }
      if (choice.contains("text") && choice["text"].is_string()) {
        return choice["text"].get<std::string>();
      }
      throw HttpError(res->status, "completion response has no text: " + excerpt(res->body));
    }
    last = Failure::kStatus;
    last_status = res->status;
    last_detail = excerpt(res->body);
    if (!retryable_status(res->status)) break;
  }

  if (last == Failure::kTimeout) {
    throw Error(Errc::kTimeout, "no response within " + std::to_string(cfg.timeout_s) + " s after " +
                                    std::to_string(cfg.max_retries + 1) + " attempts");
  }
  throw HttpError(last_status, last_detail);
}

std::vector<CompletionRecord> batch_infer(const EndpointConfig& cfg, const PromptBatch& prompts) {
  cfg.validate();
  std::vector<CompletionRecord> records(prompts.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < prompts.size(); i = next++) {
      CompletionRecord& rec = records[i];
      rec.sample_id = prompts[i].first;
      const auto start = Clock::now();
      try {
        rec.text = complete(cfg, prompts[i].second);
        rec.status = "ok";
      } catch (const Error& e) {
        rec.status = std::string(errc_name(e.code()));
        rec.error = e.what();
      } catch (const std::exception& e) {
        rec.status = "Error";
        rec.error = e.what();
      }
      rec.latency_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    }
  };

  const std::size_t n_workers = std::min(cfg.max_concurrency, std::max<std::size_t>(prompts.size(), 1));
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return records;
}

std::vector<CompletionRecord> batch_infer_to_file(const EndpointConfig& cfg,
                                                  const PromptBatch& prompts,
                                                  const std::filesystem::path& out) {
  auto records = batch_infer(cfg, prompts);
  io::write_completions(out, records);
  return records;
}

}  // namespace shiptraj::llm
