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

#ifndef INLINESCOPE_ERROR_H_
#define INLINESCOPE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace inlinescope {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kConfig,
  // ground_truth
  kMalformedElf,
  kMissingDebugInfo,
  kMalformedDwarf,
  kEmptyFunctionUniverse,
  // cost_model
  kNegativeCount,
  // features
  kListingSyntax,
  kUnknownRegistryVersion,
  // sweep
  kGridTooLarge,
  kBuildFailed,
  kTimeout,
  kArtifactMissing,
  kNoSuccessfulBuild,
  // analysis
  kEmptyInput,
  kTooFewSamples,
  kOutOfRange,
  kRegistryMismatch,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported as an Error carrying a machine-checkable
// code. The message is for humans and is prefixed with the code name.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace inlinescope

#endif  // INLINESCOPE_ERROR_H_
