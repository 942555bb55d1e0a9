// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The shiptraj Authors

#include "shiptraj/error.hpp"

namespace shiptraj {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kNonConvergence: return "NonConvergence";
    case Errc::kRangeExceeded: return "RangeExceeded";
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kIoError: return "IoError";
    case Errc::kSchemaError: return "SchemaError";
    case Errc::kTooShort: return "TooShort";
    case Errc::kDegenerateTime: return "DegenerateTime";
    case Errc::kInvalidShip: return "InvalidShip";
    case Errc::kMisalignedWindows: return "MisalignedWindows";
    case Errc::kLengthMismatch: return "LengthMismatch";
    case Errc::kDimensionMismatch: return "DimensionMismatch";
    case Errc::kIndexOutOfRange: return "IndexOutOfRange";
    case Errc::kStaleGroup: return "StaleGroup";
    case Errc::kEmptyDataset: return "EmptyDataset";
    case Errc::kUnknownSampleId: return "UnknownSampleId";
    case Errc::kHttpError: return "HttpError";
    case Errc::kTimeout: return "Timeout";
    case Errc::kAuthMissing: return "AuthMissing";
  }
  return "Unknown";
}

}  // namespace shiptraj
