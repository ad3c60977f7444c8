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
// A one-call-site simulator of LLVM's inline decision: never-inline vetoes,
// attribute resolution, threshold selection and adjustment, cost
// accumulation, and the final cost < threshold comparison. Every adjustment
// is recorded in a trace so a decision can be replayed.

#ifndef INLINESCOPE_COST_MODEL_H_
#define INLINESCOPE_COST_MODEL_H_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace inlinescope {

enum class FnAttr : uint8_t {
  kAlwaysInline,
  kInlineHint,
  kNoInline,
  kOptNone,
  kNaked,
  kMinSize,
  kOptSize,
  kNoDuplicate,
  kFlatten,
};
using AttrSet = std::set<FnAttr>;

enum class Linkage : uint8_t { kExternal, kInternal, kPrivate, kInterposable };
enum class Hotness : uint8_t { kCold, kNeutral, kLocallyHot, kHot };
enum class OptLevel : uint8_t { kO0, kO1, kO2, kO3, kOs, kOz };

enum class NeverReason : uint8_t {
  kMisusedBlockAddress,
  kCallerOptNone,
  kCallerNoDuplicate,
  kConflictingAttributes,
  kIncompatibleNullPointer,
  kCalleeNoInline,
  kInterposableCallee,
  kUnsplitCoroutine,
  kCallSiteNoInline,
  kByvalBadAddressSpace,
  kIndirectCall,
  kDynamicAlloca,
  kReturnsTwice,
  kVariadic,
  kIndirectBranch,
  kComplexIntrinsic,
  kRecursive,
};

enum class Verdict : uint8_t { kNever, kAlways, kInline, kDecline };

std::string_view FnAttrName(FnAttr attr);
std::string_view LinkageName(Linkage linkage);
std::string_view HotnessName(Hotness hotness);
std::string_view OptLevelName(OptLevel level);
std::string_view NeverReasonName(NeverReason reason);
std::string_view VerdictName(Verdict verdict);
std::optional<FnAttr> ParseFnAttr(std::string_view name);
// Accepts "O2", "-O2", "2", "s", "z" and so on.
std::optional<OptLevel> ParseOptLevel(std::string_view name);

struct InlineParams {
  int64_t inline_threshold = 225;
  int64_t inlinehint_threshold = 335;
  int64_t cold_callsite_threshold = 45;
  int64_t hot_callsite_threshold = 3000;
  int64_t locally_hot_callsite_threshold = 525;
  int64_t cold_callsite_rel_freq = 2;
  int64_t hot_callsite_rel_freq = 60;
  int64_t inline_call_penalty = 25;
  int64_t inline_savings_multiplier = 8;
  int64_t inline_size_allowance = 100;
  bool cost_benefit_analysis = false;
  bool caller_superset_nobuiltin = true;
  int64_t instruction_cost = 5;
  int64_t last_call_to_static_bonus = -15000;
  // Level thresholds for -Os and -Oz, also used as caps for optsize and
  // minsize callers.
  int64_t optsize_threshold = 50;
  int64_t minsize_threshold = 5;
  int64_t o3_threshold = 250;

  friend bool operator==(const InlineParams&, const InlineParams&) = default;
};

struct BodySummary {
  int64_t instruction_count = 0;
  int64_t simplified_away_count = 0;
  int64_t internal_call_count = 0;
  int64_t intrinsic_count = 0;
  int64_t vector_instruction_count = 0;
  bool has_complex_branching = false;
  int64_t indirect_to_direct_conversions = 0;
  int64_t byval_value_args = 0;

  friend bool operator==(const BodySummary&, const BodySummary&) = default;
};

struct CallSiteDescription {
  AttrSet callee_attrs;
  AttrSet caller_attrs;
  // Attributes on the call instruction itself (only NoInline is consulted).
  AttrSet call_site_attrs;
  Linkage callee_linkage = Linkage::kExternal;
  bool callee_is_recursive = false;
  bool callee_is_variadic = false;
  bool callee_returns_twice = false;
  bool callee_has_indirect_branch = false;
  bool callee_is_unsplit_coroutine = false;
  bool callee_has_dynamic_alloca = false;
  bool callee_has_complex_intrinsic = false;
  bool call_is_indirect = false;
  bool byval_bad_addrspace = false;
  bool incompatible_null_pointer = false;
  bool misused_blockaddress = false;
  bool is_last_call_to_static = false;
  Hotness hotness = Hotness::kNeutral;
  BodySummary body_summary;

  friend bool operator==(const CallSiteDescription&,
                         const CallSiteDescription&) = default;
};

enum class TraceQuantity : uint8_t { kCost, kThreshold, kNote };

// One adjustment. For kCost and kThreshold the deltas of a quantity sum to
// its final value (the first step of each is its initial value).
struct TraceStep {
  TraceQuantity quantity = TraceQuantity::kNote;
  std::string rule;
  int64_t delta = 0;
  int64_t value = 0;  // running value after this step
};

struct InlineDecision {
  Verdict verdict = Verdict::kDecline;
  std::optional<NeverReason> never_reason;
  std::optional<int64_t> cost;
  std::optional<int64_t> threshold;
  std::vector<TraceStep> trace;
  // Set only when params.cost_benefit_analysis is true. Informational.
  std::optional<std::string> cost_benefit_note;
};

// Highest-priority member in the order OptNone, NoInline, MinSize, OptSize,
// InlineHint, AlwaysInline. Other attributes never win.
std::optional<FnAttr> ResolveAttributes(const AttrSet& attrs);

std::optional<NeverReason> CheckNeverInline(const CallSiteDescription& site);

int64_t InitThreshold(OptLevel level, const InlineParams& params);

// Caller attributes the optimization level implies (-Os: OptSize, -Oz:
// MinSize and OptSize) merged into the site's own.
AttrSet EffectiveCallerAttrs(const CallSiteDescription& site, OptLevel level);

// Rule order: optsize/minsize caller cap (skipped when inline_threshold is
// overridden), then unless the caller is minsize: inline hint, hot, locally
// hot, cold; then the complex-branching and vector halvings. Appends one
// kThreshold step per applied rule to `trace` when non-null.
int64_t AdjustThreshold(int64_t base, const CallSiteDescription& site,
                        const InlineParams& params,
                        std::vector<TraceStep>* trace = nullptr);

int64_t InitCost(const CallSiteDescription& site, const InlineParams& params);

// Throws Error(kNegativeCount) for negative counts or more simplified-away
// instructions than instructions.
int64_t ComputeCost(const CallSiteDescription& site, const InlineParams& params,
                    std::vector<TraceStep>* trace = nullptr);

InlineDecision Decide(const CallSiteDescription& site, OptLevel level,
                      const InlineParams& params);

// JSON in lower_snake_case field names. Missing fields take their defaults;
// unknown fields and bad enum names throw Error(kInvalidArgument).
CallSiteDescription SiteFromJson(std::string_view text);
InlineParams ParamsFromJson(std::string_view text);
std::string SiteToJson(const CallSiteDescription& site);
std::string ParamsToJson(const InlineParams& params);
std::string DecisionToJson(const InlineDecision& decision, OptLevel level,
                           const InlineParams& params);

}  // namespace inlinescope

#endif  // INLINESCOPE_COST_MODEL_H_
