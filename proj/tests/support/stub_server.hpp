// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors
//
// In-process chat-completions server for client tests. Replies
// "echo:<user message>", counts calls and tracks peak in-flight requests.

#pragma once

#include <atomic>
#include <chrono>
#include <mutex>
#include <string>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace shiptraj::testing {

class StubServer {
 public:
  StubServer() {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      const int now = ++in_flight_;
      const int n = ++calls_;
      {
        std::lock_guard lock(mu_);
        peak_ = std::max(peak_, now);
        last_body_ = req.body;
        last_auth_ = req.get_header_value("Authorization");
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms_.load()));
      --in_flight_;
      const auto body = nlohmann::json::parse(req.body, nullptr, false);
      const std::string user = body.is_discarded() ? "" : body["messages"][1]["content"].get<std::string>();
      if (n <= fail_first_ || user.find("FAIL") != std::string::npos) {
        res.status = fail_status_;
        res.set_content("stub failure", "text/plain");
        return;
      }
      if (empty_choices_) {
        res.set_content("{\"choices\": []}", "application/json");
        return;
      }
      const nlohmann::json reply = {{"choices", {{{"message", {{"role", "assistant"}, {"content", "echo:" + user}}}}}}};
      res.set_content(reply.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }
  StubServer(const StubServer&) = delete;
  StubServer& operator=(const StubServer&) = delete;

  // Fail the first `fail_first` calls with `status`; delay every call.
  void reset(int fail_first = 0, int delay_ms = 0, int status = 500) {
    calls_ = 0;
    fail_first_ = fail_first;
    delay_ms_ = delay_ms;
    fail_status_ = status;
    empty_choices_ = false;
    std::lock_guard lock(mu_);
    peak_ = 0;
  }
  void reply_without_choices() { empty_choices_ = true; }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }
  int calls() const { return calls_; }
  int peak() {
    std::lock_guard lock(mu_);
    return peak_;
  }
  std::string last_body() {
    std::lock_guard lock(mu_);
    return last_body_;
  }
  std::string last_auth() {
    std::lock_guard lock(mu_);
    return last_auth_;
  }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> in_flight_{0}, calls_{0}, fail_first_{0}, delay_ms_{0}, fail_status_{500};
  std::atomic<bool> empty_choices_{false};
  std::mutex mu_;
  int peak_ = 0;
  std::string last_body_, last_auth_;
};

}  // namespace shiptraj::testing
