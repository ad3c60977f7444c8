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
//
// Compiler flag sweeps. A SweepConfig names projects and flag axes; every
// point of the axis grid is built in a private work directory, measured with
// the ground-truth extractor, and written out as one CSV row. SearchExtreme
// walks the grid greedily toward a higher inlining ratio.

#ifndef INLINESCOPE_SWEEP_H_
#define INLINESCOPE_SWEEP_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "inlinescope/error.h"
#include "inlinescope/remarks.h"

namespace inlinescope {

enum class AxisKind : uint8_t { kIntegerSequence, kBooleanFlip };
enum class PassVia : uint8_t { kFrontend, kMiddleEnd };

struct FlagAxis {
  std::string name;  // e.g. "-inline-threshold"
  AxisKind kind = AxisKind::kIntegerSequence;
  int64_t start = 0;
  int64_t step = 1;
  int64_t count = 1;
  bool default_value = true;  // BooleanFlip only
  PassVia pass_via = PassVia::kMiddleEnd;

  // Rendered values in axis order: start, start + step, ... or
  // {default, !default} as "true"/"false".
  std::vector<std::string> Values() const;
};

// Throws kConfig when count < 1 or step == 0.
void ValidateAxis(const FlagAxis& axis);

// Command-line tokens for one axis value. MiddleEnd: "-mllvm name=value", or
// "-Wl,-mllvm,name=value" in addition when `lto` is set so the link-time
// inliner sees it too. Frontend integers: "name=value"; frontend booleans
// pass "name" for true and nothing for false.
std::vector<std::string> RenderAxisFlag(const FlagAxis& axis,
                                        std::string_view value, bool lto);

struct Toolchain {
  std::string compiler_path = "clang";
  std::map<std::string, std::string> extra_env;
};

struct ProjectSpec {
  std::string name;
  std::string source_dir;
  std::string build_command_template;  // "{FLAGS}" exactly once; "{CC}" optional
  std::string artifact_glob;           // relative to the build directory
};

enum class Weighting : uint8_t { kFunctionCount, kPlain };

struct SweepConfig {
  Toolchain toolchain;
  std::vector<ProjectSpec> projects;
  std::vector<FlagAxis> axes;
  std::vector<std::string> base_flags;
  double per_build_timeout = 900;  // seconds
  int parallelism = 1;
  std::optional<std::string> preset;
  // Beyond the core fields.
  uint64_t max_variants = 10000;
  bool force_debug_info = true;
  Weighting weighting = Weighting::kFunctionCount;
  std::string work_root;  // empty: a fresh directory under the system temp dir
  bool keep_work_dirs = false;
};

// Parses YAML whose keys are the field names above. Relative source_dir
// values resolve against `base_dir`. INLINESCOPE_CC, when set, replaces
// toolchain.compiler_path. Throws kConfig.
SweepConfig ParseSweepConfig(std::string_view yaml_text,
                             const std::string& base_dir = ".");
SweepConfig LoadSweepConfig(const std::string& path);
void ValidateConfig(const SweepConfig& config);

struct Preset {
  std::string_view name;
  std::string_view recipe;  // as written in the recipe table
};
std::span<const Preset> Presets();
// Throws kConfig for unknown names.
const Preset& FindPreset(std::string_view name);
// Recipe tokens as compiler arguments: inliner options become -mllvm flags,
// and a full-LTO recipe also forwards them to the linker and selects lld.
std::vector<std::string> ExpandRecipe(std::string_view recipe);

// One value index per axis; nullopt leaves that axis at the compiler default.
struct FlagAssignment {
  std::vector<std::optional<size_t>> choice;
  friend bool operator==(const FlagAssignment&, const FlagAssignment&) = default;
  friend auto operator<=>(const FlagAssignment&, const FlagAssignment&) = default;
};

// Cartesian product in lexicographic order of value indices, first axis
// most significant. No axes yields the single empty assignment. Throws
// kGridTooLarge past config.max_variants.
std::vector<FlagAssignment> EnumerateVariants(const SweepConfig& config);

// base_flags, then the preset recipe, then each set axis.
std::vector<std::string> VariantFlags(const SweepConfig& config,
                                      const FlagAssignment& assignment);

enum class BuildStatus : uint8_t { kOk, kBuildFailed, kTimeout };
std::string_view BuildStatusName(BuildStatus status);

inline constexpr std::string_view kRemarkFlags[] = {
    "-Rpass=inline", "-Rpass-missed=inline", "-Rpass-analysis=inline"};

struct BuildArtifacts {
  std::string project;
  std::string work_dir;
  std::string command;
  BuildStatus status = BuildStatus::kOk;
  std::optional<ErrorCode> failure;  // kBuildFailed, kTimeout, kArtifactMissing
  int exit_code = 0;
  std::string cause;     // failure summary with the stderr tail
  std::string stderr_text;
  std::vector<std::string> binaries;  // sorted absolute paths
  double wall_seconds = 0;
};

// Copies the project into a fresh subdirectory of `work_root` and runs the
// build command through /bin/sh in its own process group; the group is
// killed on timeout. Failures are reported in the result, not thrown.
BuildArtifacts BuildVariant(const ProjectSpec& project,
                            const std::vector<std::string>& flags,
                            const Toolchain& toolchain, double timeout_seconds,
                            const std::string& work_root,
                            bool force_debug_info = true);

struct Measurement {
  uint64_t total_functions = 0;
  uint64_t inlined = 0;
  uint64_t remaining = 0;
  uint64_t eliminated = 0;
  double ratio = 0;
  double compile_seconds = 0;
  uint64_t binary_bytes = 0;
};

struct VariantResult {
  size_t variant_index = 0;
  std::vector<std::string> flags;
  BuildStatus status = BuildStatus::kOk;
  std::optional<Measurement> measurement;  // present iff status == kOk
  std::optional<RemarkSummary> remarks;
  std::string cause;
  std::vector<std::string> work_dirs;
};

// Reports every produced binary; the variant ratio is the function-count
// weighted mean of the per-binary ratios (or their plain mean). Extraction
// errors turn into status kBuildFailed with the cause.
VariantResult EvaluateVariant(std::span<const BuildArtifacts> artifacts,
                              Weighting weighting = Weighting::kFunctionCount);

// Weighted or plain mean of (ratio, total_functions) pairs.
double CombineRatios(std::span<const std::pair<double, uint64_t>> ratios,
                     Weighting weighting);

using VariantEvaluator = std::function<VariantResult(
    const FlagAssignment& assignment, const std::vector<std::string>& flags)>;

// Builds every project for one variant and evaluates it.
VariantEvaluator BuildingEvaluator(const SweepConfig& config,
                                   const std::string& work_root);

// Evaluates every enumerated variant, up to config.parallelism at a time.
// Results come back in enumeration order.
std::vector<VariantResult> RunSweep(const SweepConfig& config);
std::vector<VariantResult> RunSweep(const SweepConfig& config,
                                    const VariantEvaluator& evaluate);

struct SearchStep {
  FlagAssignment assignment;
  VariantResult result;
  bool accepted = false;
};

struct SearchResult {
  FlagAssignment best;
  VariantResult best_result;
  std::vector<SearchStep> trajectory;
};

// Greedy coordinate ascent from the base flags. Each pass moves every axis
// one value further along its direction (-inline-threshold ascending,
// -inline-call-penalty descending, the rest in axis order) and keeps the move
// iff the ratio strictly improves. `budget` caps evaluations, the base
// included. Throws kInvalidArgument when budget < axes + 1 and
// kNoSuccessfulBuild when nothing built.
SearchResult SearchExtreme(const SweepConfig& config, int budget,
                           const VariantEvaluator& evaluate);
SearchResult SearchExtreme(const SweepConfig& config, int budget);

struct ReportOptions {
  // Wall time is not reproducible; leaving it out makes reruns comparable.
  bool include_compile_seconds = true;
};

// "variant_index,flags,status,total_functions,inlined,remaining,eliminated,
// ratio,compile_seconds,binary_bytes". Failed rows leave measurements empty.
std::string EmitReport(std::span<const VariantResult> results,
                       const ReportOptions& options = {});

// Ratios of the Ok rows of a report, for the CDF plots.
std::vector<double> RatiosFromReport(std::string_view csv_text);

}  // namespace inlinescope

#endif  // INLINESCOPE_SWEEP_H_
