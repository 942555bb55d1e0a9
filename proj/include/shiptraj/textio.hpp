// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shiptraj/ais_ingest.hpp"
#include "shiptraj/geo.hpp"

namespace shiptraj::textio {

using geo::GeoPoint;

inline constexpr std::string_view kPromptTemplateVersion = "shiptraj-prompt/1";
inline constexpr std::string_view kNoConflictSentence = "No conflicting ships detected.";
inline constexpr std::size_t kDefaultMaxConflicts = 8;

struct PromptText {
  std::string system;
  std::string user;
};

struct PromptOptions {
  bool cot = true;
  std::size_t max_conflicts = kDefaultMaxConflicts;
};

/// Renders a sample into a chat prompt. Output is a pure function of the
/// sample, t_pred, options and kPromptTemplateVersion.
PromptText build_prompt(const ais::PredictionSample& sample, std::size_t t_pred,
                        const PromptOptions& opts = {});

enum class ParseCause { kMissingTags, kDuplicateTags, kBadObject, kWrongLength, kNonNumeric };

std::string_view parse_cause_name(ParseCause cause);

struct ParsedOutput {
  std::string think;
  std::vector<GeoPoint> trajectory;
  std::string raw;
};

struct ParseFailure {
  ParseCause cause;
  std::string detail;
};

/// Either a parsed output or a categorized failure. Never throws.
class ParseOutcome {
 public:
  ParseOutcome(ParsedOutput out) : output_(std::move(out)) {}
  ParseOutcome(ParseFailure failure) : failure_(std::move(failure)) {}

  bool ok() const noexcept { return output_.has_value(); }
  explicit operator bool() const noexcept { return ok(); }
  const ParsedOutput& value() const { return output_.value(); }
  ParsedOutput& value() { return output_.value(); }
  const ParseFailure& failure() const { return failure_.value(); }

 private:
  std::optional<ParsedOutput> output_;
  std::optional<ParseFailure> failure_;
};

/// Strict parser for "<think>...</think><answer>{...}</answer>" outputs.
/// With cot=false the think block is optional. Only whitespace may appear
/// outside the blocks. Coordinates are not bounds-checked here.
ParseOutcome parse_output(std::string_view text, std::size_t t_pred, bool cot);

/// Emits text in exactly the structure parse_output accepts, coordinates at
/// six decimals.
std::string render_answer(std::span<const GeoPoint> trajectory, std::string_view think, bool cot);

/// Formats a coordinate value the way prompts and answers carry it.
std::string format_coord(double value);

}  // namespace shiptraj::textio
