// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shiptraj {

enum class Errc {
  kNonConvergence,
  kRangeExceeded,
  kInvalidArgument,
  kIoError,
  kSchemaError,
  kTooShort,
  kDegenerateTime,
  kInvalidShip,
  kMisalignedWindows,
  kLengthMismatch,
  kDimensionMismatch,
  kIndexOutOfRange,
  kStaleGroup,
  kEmptyDataset,
  kUnknownSampleId,
  kHttpError,
  kTimeout,
  kAuthMissing,
};

std::string_view errc_name(Errc code);

/// Every failure raised by the library carries one of the Errc categories.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// HTTP failure from the inference client. status() is 0 for transport errors.
class HttpError : public Error {
 public:
  HttpError(int status, const std::string& body_excerpt)
      : Error(Errc::kHttpError, "status " + std::to_string(status) + ": " + body_excerpt),
        status_(status) {}

  int status() const noexcept { return status_; }

 private:
  int status_;
};

}  // namespace shiptraj
