// Copyright 2026 The InlineScope Authors.
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

#include "inlinescope/error.h"

namespace inlinescope {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kMalformedElf: return "MalformedElf";
    case ErrorCode::kMissingDebugInfo: return "MissingDebugInfo";
    case ErrorCode::kMalformedDwarf: return "MalformedDwarf";
    case ErrorCode::kEmptyFunctionUniverse: return "EmptyFunctionUniverse";
    case ErrorCode::kNegativeCount: return "NegativeCountError";
    case ErrorCode::kListingSyntax: return "ListingSyntaxError";
    case ErrorCode::kUnknownRegistryVersion: return "UnknownRegistryVersion";
    case ErrorCode::kGridTooLarge: return "GridTooLarge";
    case ErrorCode::kBuildFailed: return "BuildFailed";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kArtifactMissing: return "ArtifactMissing";
    case ErrorCode::kNoSuccessfulBuild: return "NoSuccessfulBuild";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kTooFewSamples: return "TooFewSamples";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kRegistryMismatch: return "RegistryMismatch";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace inlinescope
