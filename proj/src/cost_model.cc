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

#include "inlinescope/cost_model.h"

#include <algorithm>
#include <array>
#include <utility>

#include "inlinescope/error.h"
#include "json.hpp"

namespace inlinescope {
namespace {

using Json = nlohmann::json;

constexpr int64_t kDefaultInlineThreshold = 225;

constexpr std::array<FnAttr, 6> kPrecedence = {
    FnAttr::kOptNone,  FnAttr::kNoInline,   FnAttr::kMinSize,
    FnAttr::kOptSize,  FnAttr::kInlineHint, FnAttr::kAlwaysInline,
};

constexpr std::array<FnAttr, 9> kAllAttrs = {
    FnAttr::kAlwaysInline, FnAttr::kInlineHint, FnAttr::kNoInline,
    FnAttr::kOptNone,      FnAttr::kNaked,      FnAttr::kMinSize,
    FnAttr::kOptSize,      FnAttr::kNoDuplicate, FnAttr::kFlatten,
};

class Tracer {
 public:
  explicit Tracer(std::vector<TraceStep>* trace) : trace_(trace) {}

  void Step(TraceQuantity quantity, std::string rule, int64_t before,
            int64_t after) {
    if (trace_ != nullptr) {
      trace_->push_back({quantity, std::move(rule), after - before, after});
    }
  }
  void Note(std::string rule) {
    if (trace_ != nullptr) trace_->push_back({TraceQuantity::kNote, std::move(rule), 0, 0});
  }

 private:
  std::vector<TraceStep>* trace_;
};

void RequireNonNegative(int64_t value, std::string_view field) {
  if (value < 0) {
    throw Error(ErrorCode::kNegativeCount,
                std::string(field) + " is negative (" + std::to_string(value) + ")");
  }
}

std::string_view QuantityName(TraceQuantity quantity) {
  switch (quantity) {
    case TraceQuantity::kCost:
      return "cost";
    case TraceQuantity::kThreshold:
      return "threshold";
    case TraceQuantity::kNote:
      return "note";
  }
  return "note";
}

template <typename Enum, size_t N>
std::optional<Enum> ParseByName(std::string_view name,
                                const std::array<Enum, N>& values,
                                std::string_view (*namer)(Enum)) {
  for (Enum value : values) {
    if (namer(value) == name) return value;
  }
  return std::nullopt;
}

[[noreturn]] void BadInput(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, what);
}

AttrSet AttrsFromJson(const Json& json, std::string_view field) {
  if (!json.is_array()) BadInput(std::string(field) + " must be an array");
  AttrSet attrs;
  for (const Json& item : json) {
    if (!item.is_string()) BadInput(std::string(field) + " entries must be strings");
    auto attr = ParseFnAttr(item.get<std::string>());
    if (!attr) BadInput("unknown attribute '" + item.get<std::string>() + "'");
    attrs.insert(*attr);
  }
  return attrs;
}

Json AttrsToJson(const AttrSet& attrs) {
  Json array = Json::array();
  for (FnAttr attr : attrs) array.push_back(FnAttrName(attr));
  return array;
}

int64_t GetInt(const Json& value, std::string_view field) {
  if (!value.is_number_integer()) BadInput(std::string(field) + " must be an integer");
  return value.get<int64_t>();
}

bool GetBool(const Json& value, std::string_view field) {
  if (!value.is_boolean()) BadInput(std::string(field) + " must be a boolean");
  return value.get<bool>();
}

Json ParseObject(std::string_view text, std::string_view what) {
  Json json;
  try {
    json = Json::parse(text);
  } catch (const Json::parse_error& e) {
    BadInput(std::string(what) + ": " + e.what());
  }
  if (!json.is_object()) BadInput(std::string(what) + " must be a JSON object");
  return json;
}

std::string Dump(const Json& json) { return json.dump(2) + "\n"; }

}  // namespace

std::string_view FnAttrName(FnAttr attr) {
  switch (attr) {
    case FnAttr::kAlwaysInline:
      return "AlwaysInline";
    case FnAttr::kInlineHint:
      return "InlineHint";
    case FnAttr::kNoInline:
      return "NoInline";
    case FnAttr::kOptNone:
      return "OptNone";
    case FnAttr::kNaked:
      return "Naked";
    case FnAttr::kMinSize:
      return "MinSize";
    case FnAttr::kOptSize:
      return "OptSize";
    case FnAttr::kNoDuplicate:
      return "NoDuplicate";
    case FnAttr::kFlatten:
      return "Flatten";
  }
  return "";
}

std::string_view LinkageName(Linkage linkage) {
  switch (linkage) {
    case Linkage::kExternal:
      return "External";
    case Linkage::kInternal:
      return "Internal";
    case Linkage::kPrivate:
      return "Private";
    case Linkage::kInterposable:
      return "Interposable";
  }
  return "";
}

std::string_view HotnessName(Hotness hotness) {
  switch (hotness) {
    case Hotness::kCold:
      return "Cold";
    case Hotness::kNeutral:
      return "Neutral";
    case Hotness::kLocallyHot:
      return "LocallyHot";
    case Hotness::kHot:
      return "Hot";
  }
  return "";
}

std::string_view OptLevelName(OptLevel level) {
  switch (level) {
    case OptLevel::kO0:
      return "O0";
    case OptLevel::kO1:
      return "O1";
    case OptLevel::kO2:
      return "O2";
    case OptLevel::kO3:
      return "O3";
    case OptLevel::kOs:
      return "Os";
    case OptLevel::kOz:
      return "Oz";
  }
  return "";
}

std::string_view NeverReasonName(NeverReason reason) {
  switch (reason) {
    case NeverReason::kMisusedBlockAddress:
      return "MisusedBlockAddress";
    case NeverReason::kCallerOptNone:
      return "CallerOptNone";
    case NeverReason::kCallerNoDuplicate:
      return "CallerNoDuplicate";
    case NeverReason::kConflictingAttributes:
      return "ConflictingAttributes";
    case NeverReason::kIncompatibleNullPointer:
      return "IncompatibleNullPointer";
    case NeverReason::kCalleeNoInline:
      return "CalleeNoInline";
    case NeverReason::kInterposableCallee:
      return "InterposableCallee";
    case NeverReason::kUnsplitCoroutine:
      return "UnsplitCoroutine";
    case NeverReason::kCallSiteNoInline:
      return "CallSiteNoInline";
    case NeverReason::kByvalBadAddressSpace:
      return "ByvalBadAddressSpace";
    case NeverReason::kIndirectCall:
      return "IndirectCall";
    case NeverReason::kDynamicAlloca:
      return "DynamicAlloca";
    case NeverReason::kReturnsTwice:
      return "ReturnsTwice";
    case NeverReason::kVariadic:
      return "Variadic";
    case NeverReason::kIndirectBranch:
      return "IndirectBranch";
    case NeverReason::kComplexIntrinsic:
      return "ComplexIntrinsic";
    case NeverReason::kRecursive:
      return "Recursive";
  }
  return "";
}

std::string_view VerdictName(Verdict verdict) {
  switch (verdict) {
    case Verdict::kNever:
      return "Never";
    case Verdict::kAlways:
      return "Always";
    case Verdict::kInline:
      return "Inline";
    case Verdict::kDecline:
      return "Decline";
  }
  return "";
}

std::optional<FnAttr> ParseFnAttr(std::string_view name) {
  return ParseByName(name, kAllAttrs, FnAttrName);
}

std::optional<OptLevel> ParseOptLevel(std::string_view name) {
  if (name.starts_with("-")) name.remove_prefix(1);
  if (name.starts_with("O")) name.remove_prefix(1);
  if (name == "0") return OptLevel::kO0;
  if (name == "1") return OptLevel::kO1;
  if (name == "2") return OptLevel::kO2;
  if (name == "3") return OptLevel::kO3;
  if (name == "s") return OptLevel::kOs;
  if (name == "z") return OptLevel::kOz;
  return std::nullopt;
}

std::optional<FnAttr> ResolveAttributes(const AttrSet& attrs) {
  for (FnAttr attr : kPrecedence) {
    if (attrs.contains(attr)) return attr;
  }
  return std::nullopt;
}

std::optional<NeverReason> CheckNeverInline(const CallSiteDescription& site) {
  std::optional<FnAttr> callee = ResolveAttributes(site.callee_attrs);
  bool callee_blocked = callee == FnAttr::kNoInline ||
                        callee == FnAttr::kOptNone ||
                        site.callee_attrs.contains(FnAttr::kNaked);
  const std::pair<bool, NeverReason> checks[] = {
      {site.misused_blockaddress, NeverReason::kMisusedBlockAddress},
      {site.caller_attrs.contains(FnAttr::kOptNone), NeverReason::kCallerOptNone},
      {site.caller_attrs.contains(FnAttr::kNoDuplicate),
       NeverReason::kCallerNoDuplicate},
      {site.callee_attrs.contains(FnAttr::kAlwaysInline) && callee_blocked &&
           !site.callee_attrs.contains(FnAttr::kNaked),
       NeverReason::kConflictingAttributes},
      {site.incompatible_null_pointer, NeverReason::kIncompatibleNullPointer},
      {callee_blocked, NeverReason::kCalleeNoInline},
      {site.callee_linkage == Linkage::kInterposable,
       NeverReason::kInterposableCallee},
      {site.callee_is_unsplit_coroutine, NeverReason::kUnsplitCoroutine},
      {site.call_site_attrs.contains(FnAttr::kNoInline),
       NeverReason::kCallSiteNoInline},
      {site.byval_bad_addrspace, NeverReason::kByvalBadAddressSpace},
      {site.call_is_indirect, NeverReason::kIndirectCall},
      {site.callee_has_dynamic_alloca, NeverReason::kDynamicAlloca},
      {site.callee_returns_twice, NeverReason::kReturnsTwice},
      {site.callee_is_variadic, NeverReason::kVariadic},
      {site.callee_has_indirect_branch, NeverReason::kIndirectBranch},
      {site.callee_has_complex_intrinsic, NeverReason::kComplexIntrinsic},
      {site.callee_is_recursive, NeverReason::kRecursive},
  };
  for (const auto& [hit, reason] : checks) {
    if (hit) return reason;
  }
  return std::nullopt;
}

int64_t InitThreshold(OptLevel level, const InlineParams& params) {
  if (level == OptLevel::kO0) return 0;
  // -inline-threshold applies to every level once set.
  if (params.inline_threshold != kDefaultInlineThreshold) {
    return params.inline_threshold;
  }
  switch (level) {
    case OptLevel::kO3:
      return params.o3_threshold;
    case OptLevel::kOs:
      return params.optsize_threshold;
    case OptLevel::kOz:
      return params.minsize_threshold;
    default:
      return params.inline_threshold;
  }
}

AttrSet EffectiveCallerAttrs(const CallSiteDescription& site, OptLevel level) {
  AttrSet attrs = site.caller_attrs;
  if (level == OptLevel::kOs || level == OptLevel::kOz) {
    attrs.insert(FnAttr::kOptSize);
  }
  if (level == OptLevel::kOz) attrs.insert(FnAttr::kMinSize);
  return attrs;
}

int64_t AdjustThreshold(int64_t base, const CallSiteDescription& site,
                        const InlineParams& params,
                        std::vector<TraceStep>* trace) {
  Tracer tracer(trace);
  int64_t threshold = base;
  auto apply = [&](std::string rule, int64_t next) {
    if (next != threshold) {
      tracer.Step(TraceQuantity::kThreshold, std::move(rule), threshold, next);
      threshold = next;
    }
  };

  bool caller_min_size = site.caller_attrs.contains(FnAttr::kMinSize);
  bool overridden = params.inline_threshold != kDefaultInlineThreshold;
  if (!overridden) {
    if (caller_min_size) {
      apply("caller minsize cap", std::min(threshold, params.minsize_threshold));
    } else if (site.caller_attrs.contains(FnAttr::kOptSize)) {
      apply("caller optsize cap", std::min(threshold, params.optsize_threshold));
    }
  }
  if (!caller_min_size) {
    if (ResolveAttributes(site.callee_attrs) == FnAttr::kInlineHint) {
      apply("inline hint", std::max(threshold, params.inlinehint_threshold));
    }
    switch (site.hotness) {
      case Hotness::kHot:
        apply("hot call site", std::max(threshold, params.hot_callsite_threshold));
        break;
      case Hotness::kLocallyHot:
        apply("locally hot call site",
              std::max(threshold, params.locally_hot_callsite_threshold));
        break;
      case Hotness::kCold:
        apply("cold call site",
              std::min(threshold, params.cold_callsite_threshold));
        break;
      case Hotness::kNeutral:
        break;
    }
  }
  if (site.body_summary.has_complex_branching) {
    apply("complex branching halves threshold", threshold / 2);
  }
  if (site.body_summary.vector_instruction_count > 0) {
    apply("vector instructions halve threshold", threshold / 2);
  }
  return threshold;
}

int64_t InitCost(const CallSiteDescription& site, const InlineParams& params) {
  if (site.is_last_call_to_static && site.callee_linkage == Linkage::kInternal) {
    return params.last_call_to_static_bonus;
  }
  return 0;
}

int64_t ComputeCost(const CallSiteDescription& site, const InlineParams& params,
                    std::vector<TraceStep>* trace) {
  const BodySummary& body = site.body_summary;
  RequireNonNegative(body.instruction_count, "instruction_count");
  RequireNonNegative(body.simplified_away_count, "simplified_away_count");
  RequireNonNegative(body.internal_call_count, "internal_call_count");
  RequireNonNegative(body.intrinsic_count, "intrinsic_count");
  RequireNonNegative(body.vector_instruction_count, "vector_instruction_count");
  RequireNonNegative(body.indirect_to_direct_conversions,
                     "indirect_to_direct_conversions");
  RequireNonNegative(body.byval_value_args, "byval_value_args");
  RequireNonNegative(body.instruction_count - body.simplified_away_count,
                     "instruction_count - simplified_away_count");

  Tracer tracer(trace);
  int64_t cost = 0;
  auto add = [&](std::string rule, int64_t delta) {
    tracer.Step(TraceQuantity::kCost, std::move(rule), cost, cost + delta);
    cost += delta;
  };
  int64_t initial = InitCost(site, params);
  add(initial != 0 ? "init: last call to static" : "init", initial);
  add("instructions", params.instruction_cost *
                          (body.instruction_count - body.simplified_away_count));
  add("call penalty", params.inline_call_penalty * body.internal_call_count);
  add("intrinsics", params.instruction_cost * body.intrinsic_count);
  add("indirect to direct", -params.instruction_cost *
                                body.indirect_to_direct_conversions);
  add("byval arguments", -params.instruction_cost * body.byval_value_args);
  return cost;
}

InlineDecision Decide(const CallSiteDescription& site, OptLevel level,
                      const InlineParams& params) {
  InlineDecision decision;
  Tracer tracer(&decision.trace);

  if (auto reason = CheckNeverInline(site)) {
    decision.verdict = Verdict::kNever;
    decision.never_reason = reason;
    tracer.Note("never inline: " + std::string(NeverReasonName(*reason)));
    return decision;
  }
  if (ResolveAttributes(site.callee_attrs) == FnAttr::kAlwaysInline) {
    decision.verdict = Verdict::kAlways;
    tracer.Note("callee always_inline");
    return decision;
  }
  if (site.caller_attrs.contains(FnAttr::kFlatten)) {
    decision.verdict = Verdict::kAlways;
    tracer.Note("caller flatten");
    return decision;
  }
  if (level == OptLevel::kO0) {
    decision.verdict = Verdict::kDecline;
    tracer.Note("O0: only always_inline call sites are inlined");
    tracer.Step(TraceQuantity::kThreshold, "init O0", 0, 0);
    tracer.Step(TraceQuantity::kCost, "init", 0, 0);
    decision.cost = 0;
    decision.threshold = 0;
    return decision;
  }

  CallSiteDescription effective = site;
  effective.caller_attrs = EffectiveCallerAttrs(site, level);
  int64_t base = InitThreshold(level, params);
  tracer.Step(TraceQuantity::kThreshold,
              "init " + std::string(OptLevelName(level)), 0, base);
  int64_t threshold = AdjustThreshold(base, effective, params, &decision.trace);
  int64_t cost = ComputeCost(effective, params, &decision.trace);

  decision.cost = cost;
  decision.threshold = threshold;
  decision.verdict = cost < threshold ? Verdict::kInline : Verdict::kDecline;
  if (params.cost_benefit_analysis) {
    decision.cost_benefit_note =
        "cost-benefit analysis requested (savings multiplier " +
        std::to_string(params.inline_savings_multiplier) + ", size allowance " +
        std::to_string(params.inline_size_allowance) +
        "); not modeled, verdict unchanged";
  }
  return decision;
}

CallSiteDescription SiteFromJson(std::string_view text) {
  Json json = ParseObject(text, "call site");
  CallSiteDescription site;
  bool* flags[] = {
      &site.callee_is_recursive,        &site.callee_is_variadic,
      &site.callee_returns_twice,       &site.callee_has_indirect_branch,
      &site.callee_is_unsplit_coroutine, &site.callee_has_dynamic_alloca,
      &site.callee_has_complex_intrinsic, &site.call_is_indirect,
      &site.byval_bad_addrspace,        &site.incompatible_null_pointer,
      &site.misused_blockaddress,       &site.is_last_call_to_static,
  };
  const char* flag_names[] = {
      "callee_is_recursive",         "callee_is_variadic",
      "callee_returns_twice",        "callee_has_indirect_branch",
      "callee_is_unsplit_coroutine", "callee_has_dynamic_alloca",
      "callee_has_complex_intrinsic", "call_is_indirect",
      "byval_bad_addrspace",         "incompatible_null_pointer",
      "misused_blockaddress",        "is_last_call_to_static",
  };
  for (const auto& [key, value] : json.items()) {
    if (key == "callee_attrs") {
      site.callee_attrs = AttrsFromJson(value, key);
    } else if (key == "caller_attrs") {
      site.caller_attrs = AttrsFromJson(value, key);
    } else if (key == "call_site_attrs") {
      site.call_site_attrs = AttrsFromJson(value, key);
    } else if (key == "callee_linkage") {
      if (!value.is_string()) BadInput("callee_linkage must be a string");
      std::string name = value.get<std::string>();
      if (name == "External") {
        site.callee_linkage = Linkage::kExternal;
      } else if (name == "Internal") {
        site.callee_linkage = Linkage::kInternal;
      } else if (name == "Private") {
        site.callee_linkage = Linkage::kPrivate;
      } else if (name == "Interposable" || name == "Weak" ||
                 name == "Weak/Interposable") {
        site.callee_linkage = Linkage::kInterposable;
      } else {
        BadInput("unknown callee_linkage '" + name + "'");
      }
    } else if (key == "hotness") {
      if (!value.is_string()) BadInput("hotness must be a string");
      auto hotness = ParseByName(
          value.get<std::string>(),
          std::array{Hotness::kCold, Hotness::kNeutral, Hotness::kLocallyHot,
                     Hotness::kHot},
          HotnessName);
      if (!hotness) BadInput("unknown hotness '" + value.get<std::string>() + "'");
      site.hotness = *hotness;
    } else if (key == "body_summary") {
      if (!value.is_object()) BadInput("body_summary must be an object");
      BodySummary& body = site.body_summary;
      for (const auto& [field, item] : value.items()) {
        if (field == "instruction_count") {
          body.instruction_count = GetInt(item, field);
        } else if (field == "simplified_away_count") {
          body.simplified_away_count = GetInt(item, field);
        } else if (field == "internal_call_count") {
          body.internal_call_count = GetInt(item, field);
        } else if (field == "intrinsic_count") {
          body.intrinsic_count = GetInt(item, field);
        } else if (field == "vector_instruction_count") {
          body.vector_instruction_count = GetInt(item, field);
        } else if (field == "has_complex_branching") {
          body.has_complex_branching = GetBool(item, field);
        } else if (field == "indirect_to_direct_conversions") {
          body.indirect_to_direct_conversions = GetInt(item, field);
        } else if (field == "byval_value_args") {
          body.byval_value_args = GetInt(item, field);
        } else {
          BadInput("unknown body_summary field '" + field + "'");
        }
      }
    } else {
      auto it = std::find(std::begin(flag_names), std::end(flag_names), key);
      if (it == std::end(flag_names)) BadInput("unknown call site field '" + key + "'");
      *flags[it - std::begin(flag_names)] = GetBool(value, key);
    }
  }
  return site;
}

InlineParams ParamsFromJson(std::string_view text) {
  Json json = ParseObject(text, "params");
  InlineParams params;
  std::pair<const char*, int64_t*> ints[] = {
      {"inline_threshold", &params.inline_threshold},
      {"inlinehint_threshold", &params.inlinehint_threshold},
      {"cold_callsite_threshold", &params.cold_callsite_threshold},
      {"hot_callsite_threshold", &params.hot_callsite_threshold},
      {"locally_hot_callsite_threshold", &params.locally_hot_callsite_threshold},
      {"cold_callsite_rel_freq", &params.cold_callsite_rel_freq},
      {"hot_callsite_rel_freq", &params.hot_callsite_rel_freq},
      {"inline_call_penalty", &params.inline_call_penalty},
      {"inline_savings_multiplier", &params.inline_savings_multiplier},
      {"inline_size_allowance", &params.inline_size_allowance},
      {"instruction_cost", &params.instruction_cost},
      {"last_call_to_static_bonus", &params.last_call_to_static_bonus},
      {"optsize_threshold", &params.optsize_threshold},
      {"minsize_threshold", &params.minsize_threshold},
      {"o3_threshold", &params.o3_threshold},
  };
  for (const auto& [key, value] : json.items()) {
    if (key == "cost_benefit_analysis") {
      params.cost_benefit_analysis = GetBool(value, key);
      continue;
    }
    if (key == "caller_superset_nobuiltin") {
      params.caller_superset_nobuiltin = GetBool(value, key);
      continue;
    }
    auto it = std::find_if(std::begin(ints), std::end(ints),
                           [&key](const auto& entry) { return key == entry.first; });
    if (it == std::end(ints)) BadInput("unknown params field '" + key + "'");
    *it->second = GetInt(value, key);
  }
  const int64_t thresholds[] = {
      params.inline_threshold,        params.inlinehint_threshold,
      params.cold_callsite_threshold, params.hot_callsite_threshold,
      params.locally_hot_callsite_threshold, params.optsize_threshold,
      params.minsize_threshold,       params.o3_threshold,
  };
  for (int64_t value : thresholds) {
    if (value < 0) BadInput("threshold parameters must be non-negative");
  }
  return params;
}

std::string SiteToJson(const CallSiteDescription& site) {
  const BodySummary& body = site.body_summary;
  Json json = {
      {"callee_attrs", AttrsToJson(site.callee_attrs)},
      {"caller_attrs", AttrsToJson(site.caller_attrs)},
      {"call_site_attrs", AttrsToJson(site.call_site_attrs)},
      {"callee_linkage", LinkageName(site.callee_linkage)},
      {"callee_is_recursive", site.callee_is_recursive},
      {"callee_is_variadic", site.callee_is_variadic},
      {"callee_returns_twice", site.callee_returns_twice},
      {"callee_has_indirect_branch", site.callee_has_indirect_branch},
      {"callee_is_unsplit_coroutine", site.callee_is_unsplit_coroutine},
      {"callee_has_dynamic_alloca", site.callee_has_dynamic_alloca},
      {"callee_has_complex_intrinsic", site.callee_has_complex_intrinsic},
      {"call_is_indirect", site.call_is_indirect},
      {"byval_bad_addrspace", site.byval_bad_addrspace},
      {"incompatible_null_pointer", site.incompatible_null_pointer},
      {"misused_blockaddress", site.misused_blockaddress},
      {"is_last_call_to_static", site.is_last_call_to_static},
      {"hotness", HotnessName(site.hotness)},
      {"body_summary",
       {{"instruction_count", body.instruction_count},
        {"simplified_away_count", body.simplified_away_count},
        {"internal_call_count", body.internal_call_count},
        {"intrinsic_count", body.intrinsic_count},
        {"vector_instruction_count", body.vector_instruction_count},
        {"has_complex_branching", body.has_complex_branching},
        {"indirect_to_direct_conversions", body.indirect_to_direct_conversions},
        {"byval_value_args", body.byval_value_args}}},
  };
  return Dump(json);
}

std::string ParamsToJson(const InlineParams& params) {
  Json json = {
      {"inline_threshold", params.inline_threshold},
      {"inlinehint_threshold", params.inlinehint_threshold},
      {"cold_callsite_threshold", params.cold_callsite_threshold},
      {"hot_callsite_threshold", params.hot_callsite_threshold},
      {"locally_hot_callsite_threshold", params.locally_hot_callsite_threshold},
      {"cold_callsite_rel_freq", params.cold_callsite_rel_freq},
      {"hot_callsite_rel_freq", params.hot_callsite_rel_freq},
      {"inline_call_penalty", params.inline_call_penalty},
      {"inline_savings_multiplier", params.inline_savings_multiplier},
      {"inline_size_allowance", params.inline_size_allowance},
      {"cost_benefit_analysis", params.cost_benefit_analysis},
      {"caller_superset_nobuiltin", params.caller_superset_nobuiltin},
      {"instruction_cost", params.instruction_cost},
      {"last_call_to_static_bonus", params.last_call_to_static_bonus},
      {"optsize_threshold", params.optsize_threshold},
      {"minsize_threshold", params.minsize_threshold},
      {"o3_threshold", params.o3_threshold},
  };
  return Dump(json);
}

std::string DecisionToJson(const InlineDecision& decision, OptLevel level,
                           const InlineParams& params) {
  Json trace = Json::array();
  for (const TraceStep& step : decision.trace) {
    trace.push_back({{"quantity", QuantityName(step.quantity)},
                     {"rule", step.rule},
                     {"delta", step.delta},
                     {"value", step.value}});
  }
  Json json = {
      {"opt_level", OptLevelName(level)},
      {"params", Json::parse(ParamsToJson(params))},
      {"verdict", VerdictName(decision.verdict)},
      {"never_reason", decision.never_reason
                           ? Json(NeverReasonName(*decision.never_reason))
                           : Json(nullptr)},
      {"cost", decision.cost ? Json(*decision.cost) : Json(nullptr)},
      {"threshold", decision.threshold ? Json(*decision.threshold) : Json(nullptr)},
      {"trace", std::move(trace)},
      {"cost_benefit_note", decision.cost_benefit_note
                                ? Json(*decision.cost_benefit_note)
                                : Json(nullptr)},
  };
  return Dump(json);
}

}  // namespace inlinescope
