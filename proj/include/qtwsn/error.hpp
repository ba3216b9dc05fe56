// Copyright 2026 The qtwsn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qtwsn {

enum class ErrorCode {
  NotNormalized,
  WireOutOfRange,
  DuplicateWire,
  ArityMismatch,
  NotUnitary,
  ZeroProbabilityBranch,
  DimensionMismatch,
  UnknownGate,
  BadWiring,
  NotClassical,
  UnknownNode,
  DuplicateLink,
  NoSuchLink,
  PairsExhausted,
  BadConfig,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::WireOutOfRange: return "WireOutOfRange";
    case ErrorCode::DuplicateWire: return "DuplicateWire";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::ZeroProbabilityBranch: return "ZeroProbabilityBranch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnknownGate: return "UnknownGate";
    case ErrorCode::BadWiring: return "BadWiring";
    case ErrorCode::NotClassical: return "NotClassical";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::DuplicateLink: return "DuplicateLink";
    case ErrorCode::NoSuchLink: return "NoSuchLink";
    case ErrorCode::PairsExhausted: return "PairsExhausted";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// message text is the code name followed by detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qtwsn
