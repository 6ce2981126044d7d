// Copyright 2026 The ttcomplete Authors
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

#include "ttc/error.hpp"

namespace ttc {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kUnsupportedShape: return "unsupported-shape";
    case ErrorCode::kMalformedInput: return "malformed-input";
    case ErrorCode::kDegenerateWeights: return "degenerate-weights";
    case ErrorCode::kNonFinite: return "non-finite";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

int error_exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return 2;
    case ErrorCode::kUnsupportedShape: return 3;
    case ErrorCode::kMalformedInput: return 4;
    case ErrorCode::kDegenerateWeights: return 5;
    case ErrorCode::kNonFinite: return 6;
    case ErrorCode::kIo: return 7;
  }
  return 1;
}

}  // namespace ttc
