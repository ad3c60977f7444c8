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
#include <random>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "inlinescope/error.h"

namespace inlinescope {
namespace {

constexpr FnAttr kPrecedence[] = {FnAttr::kOptNone,  FnAttr::kNoInline,   FnAttr::kMinSize,
                                  FnAttr::kOptSize,  FnAttr::kInlineHint, FnAttr::kAlwaysInline};

CallSiteDescription SmallSite() {
  CallSiteDescription site;
  site.body_summary.instruction_count = 4;
  site.body_summary.simplified_away_count = 2;
  return site;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(ConstantsTest, InitThresholdPerLevel) {
  InlineParams p;
  EXPECT_EQ(InitThreshold(OptLevel::kOz, p), 5);
  EXPECT_EQ(InitThreshold(OptLevel::kOs, p), 50);
  EXPECT_EQ(InitThreshold(OptLevel::kO1, p), 225);
  EXPECT_EQ(InitThreshold(OptLevel::kO2, p), 225);
  EXPECT_EQ(InitThreshold(OptLevel::kO3, p), 250);
  EXPECT_EQ(InitThreshold(OptLevel::kO0, p), 0);
}

TEST(ConstantsTest, DefaultParams) {
  InlineParams p;
  EXPECT_EQ(p.inline_threshold, 225);
  EXPECT_EQ(p.inlinehint_threshold, 335);
  EXPECT_EQ(p.cold_callsite_threshold, 45);
  EXPECT_EQ(p.hot_callsite_threshold, 3000);
  EXPECT_EQ(p.locally_hot_callsite_threshold, 525);
  EXPECT_EQ(p.cold_callsite_rel_freq, 2);
  EXPECT_EQ(p.hot_callsite_rel_freq, 60);
  EXPECT_EQ(p.inline_call_penalty, 25);
  EXPECT_EQ(p.inline_savings_multiplier, 8);
  EXPECT_EQ(p.inline_size_allowance, 100);
  EXPECT_FALSE(p.cost_benefit_analysis);
  EXPECT_TRUE(p.caller_superset_nobuiltin);
}

TEST(ConstantsTest, LastCallToStaticBonus) {
  CallSiteDescription site;
  site.is_last_call_to_static = true;
  site.callee_linkage = Linkage::kInternal;
  EXPECT_EQ(InitCost(site, InlineParams{}), -15000);
  site.callee_linkage = Linkage::kExternal;
  EXPECT_EQ(InitCost(site, InlineParams{}), 0);
}

TEST(ConstantsTest, OverriddenThresholdAppliesEverywhere) {
  InlineParams p;
  p.inline_threshold = 2225;
  for (OptLevel l : {OptLevel::kO1, OptLevel::kO2, OptLevel::kO3, OptLevel::kOs, OptLevel::kOz}) {
    EXPECT_EQ(InitThreshold(l, p), 2225) << OptLevelName(l);
  }
}

// Brute force: scan the stated order for the first member.
std::optional<FnAttr> ExpectedWinner(const AttrSet& attrs) {
  for (FnAttr a : kPrecedence) {
    if (attrs.contains(a)) return a;
  }
  return std::nullopt;
}

TEST(PrecedenceTest, AllSubsetsResolveToHighestPriority) {
  for (int mask = 0; mask < 64; ++mask) {
    std::vector<FnAttr> members;
    for (int bit = 0; bit < 6; ++bit) {
      if (mask & (1 << bit)) members.push_back(kPrecedence[bit]);
    }
    std::optional<FnAttr> expected = ExpectedWinner(AttrSet(members.begin(), members.end()));
    // Every insertion order gives the same answer.
    std::sort(members.begin(), members.end());
    do {
      AttrSet attrs;
      for (FnAttr a : members) attrs.insert(a);
      EXPECT_EQ(ResolveAttributes(attrs), expected) << "mask " << mask;
    } while (std::next_permutation(members.begin(), members.end()));
  }
}

TEST(PrecedenceTest, OtherAttributesNeverWin) {
  EXPECT_EQ(ResolveAttributes({FnAttr::kNaked, FnAttr::kFlatten, FnAttr::kNoDuplicate}),
            std::nullopt);
  EXPECT_EQ(ResolveAttributes({FnAttr::kNaked, FnAttr::kInlineHint}), FnAttr::kInlineHint);
}

TEST(NeverInlineTest, EachCheckAlone) {
  struct Case {
    std::function<void(CallSiteDescription&)> set;
    NeverReason reason;
  };
  const Case cases[] = {
      {[](auto& s) { s.misused_blockaddress = true; }, NeverReason::kMisusedBlockAddress},
      {[](auto& s) { s.caller_attrs.insert(FnAttr::kOptNone); }, NeverReason::kCallerOptNone},
      {[](auto& s) { s.caller_attrs.insert(FnAttr::kNoDuplicate); },
       NeverReason::kCallerNoDuplicate},
      {[](auto& s) { s.callee_attrs = {FnAttr::kAlwaysInline, FnAttr::kNoInline}; },
       NeverReason::kConflictingAttributes},
      {[](auto& s) { s.incompatible_null_pointer = true; },
       NeverReason::kIncompatibleNullPointer},
      {[](auto& s) { s.callee_attrs.insert(FnAttr::kNoInline); }, NeverReason::kCalleeNoInline},
      {[](auto& s) { s.callee_attrs.insert(FnAttr::kOptNone); }, NeverReason::kCalleeNoInline},
      {[](auto& s) { s.callee_linkage = Linkage::kInterposable; },
       NeverReason::kInterposableCallee},
      {[](auto& s) { s.callee_is_unsplit_coroutine = true; }, NeverReason::kUnsplitCoroutine},
      {[](auto& s) { s.call_site_attrs.insert(FnAttr::kNoInline); },
       NeverReason::kCallSiteNoInline},
      {[](auto& s) { s.byval_bad_addrspace = true; }, NeverReason::kByvalBadAddressSpace},
      {[](auto& s) { s.call_is_indirect = true; }, NeverReason::kIndirectCall},
      {[](auto& s) { s.callee_has_dynamic_alloca = true; }, NeverReason::kDynamicAlloca},
      {[](auto& s) { s.callee_returns_twice = true; }, NeverReason::kReturnsTwice},
      {[](auto& s) { s.callee_is_variadic = true; }, NeverReason::kVariadic},
      {[](auto& s) { s.callee_has_indirect_branch = true; }, NeverReason::kIndirectBranch},
      {[](auto& s) { s.callee_has_complex_intrinsic = true; }, NeverReason::kComplexIntrinsic},
      {[](auto& s) { s.callee_is_recursive = true; }, NeverReason::kRecursive},
  };
  EXPECT_EQ(CheckNeverInline(SmallSite()), std::nullopt);
  for (const Case& c : cases) {
    CallSiteDescription site = SmallSite();
    c.set(site);
    EXPECT_EQ(CheckNeverInline(site), c.reason) << NeverReasonName(c.reason);
    InlineDecision d = Decide(site, OptLevel::kO2, InlineParams{});
    EXPECT_EQ(d.verdict, Verdict::kNever);
    EXPECT_EQ(d.never_reason, c.reason);
  }
}

TEST(NeverInlineTest, FirstCheckWins) {
  CallSiteDescription site = SmallSite();
  site.callee_is_recursive = true;
  site.callee_is_variadic = true;
  site.call_is_indirect = true;
  EXPECT_EQ(CheckNeverInline(site), NeverReason::kIndirectCall);
  site.caller_attrs.insert(FnAttr::kOptNone);
  EXPECT_EQ(CheckNeverInline(site), NeverReason::kCallerOptNone);
}

TEST(NeverInlineTest, NeverBeatsAlwaysInline) {
  CallSiteDescription site = SmallSite();
  site.callee_attrs = {FnAttr::kAlwaysInline};
  site.callee_is_variadic = true;
  EXPECT_EQ(Decide(site, OptLevel::kO2, InlineParams{}).verdict, Verdict::kNever);
}

TEST(ThresholdTest, HintRaisesToHintThreshold) {
  CallSiteDescription site = SmallSite();
  site.callee_attrs = {FnAttr::kInlineHint};
  EXPECT_EQ(AdjustThreshold(225, site, InlineParams{}), 335);
  // Hint under -Os: the optsize cap comes first, then the hint raises it.
  InlineDecision d = Decide(site, OptLevel::kOs, InlineParams{});
  EXPECT_EQ(d.threshold, 335);
  // A minsize caller ignores the hint.
  EXPECT_EQ(Decide(site, OptLevel::kOz, InlineParams{}).threshold, 5);
}

TEST(ThresholdTest, Hotness) {
  CallSiteDescription site = SmallSite();
  InlineParams p;
  site.hotness = Hotness::kHot;
  EXPECT_EQ(AdjustThreshold(225, site, p), 3000);
  site.hotness = Hotness::kLocallyHot;
  EXPECT_EQ(AdjustThreshold(225, site, p), 525);
  site.hotness = Hotness::kCold;
  EXPECT_EQ(AdjustThreshold(225, site, p), 45);
  EXPECT_EQ(AdjustThreshold(5, site, p), 5);
}

TEST(ThresholdTest, SizeCapsOnCallers) {
  CallSiteDescription site = SmallSite();
  site.caller_attrs = {FnAttr::kMinSize};
  EXPECT_EQ(AdjustThreshold(225, site, InlineParams{}), 5);
  site.caller_attrs = {FnAttr::kOptSize};
  EXPECT_EQ(AdjustThreshold(225, site, InlineParams{}), 50);
  InlineParams overridden;
  overridden.inline_threshold = 2225;
  EXPECT_EQ(AdjustThreshold(2225, site, overridden), 2225);
}

TEST(ThresholdTest, Halvings) {
  CallSiteDescription site = SmallSite();
  site.body_summary.has_complex_branching = true;
  EXPECT_EQ(AdjustThreshold(225, site, InlineParams{}), 112);
  site.body_summary.vector_instruction_count = 3;
  EXPECT_EQ(AdjustThreshold(225, site, InlineParams{}), 56);
}

TEST(CostTest, Formula) {
  CallSiteDescription site;
  BodySummary& b = site.body_summary;
  b.instruction_count = 30;
  b.simplified_away_count = 6;
  b.internal_call_count = 2;
  b.intrinsic_count = 3;
  b.indirect_to_direct_conversions = 1;
  b.byval_value_args = 2;
  // 5*24 + 25*2 + 5*3 - 5*1 - 5*2
  EXPECT_EQ(ComputeCost(site, InlineParams{}), 120 + 50 + 15 - 5 - 10);
}

TEST(CostTest, NegativeCountsThrow) {
  CallSiteDescription site;
  site.body_summary.internal_call_count = -1;
  EXPECT_EQ(CodeOf([&] { ComputeCost(site, InlineParams{}); }), ErrorCode::kNegativeCount);
  site.body_summary.internal_call_count = 0;
  site.body_summary.instruction_count = 1;
  site.body_summary.simplified_away_count = 2;
  EXPECT_EQ(CodeOf([&] { ComputeCost(site, InlineParams{}); }), ErrorCode::kNegativeCount);
}

TEST(DecideTest, AlwaysInlineEvenAtO0) {
  CallSiteDescription site = SmallSite();
  site.callee_attrs = {FnAttr::kAlwaysInline};
  EXPECT_EQ(Decide(site, OptLevel::kO0, InlineParams{}).verdict, Verdict::kAlways);
}

TEST(DecideTest, O0DeclinesEverythingElse) {
  InlineDecision d = Decide(SmallSite(), OptLevel::kO0, InlineParams{});
  EXPECT_EQ(d.verdict, Verdict::kDecline);
  EXPECT_EQ(d.threshold, 0);
}

TEST(DecideTest, FlattenCaller) {
  CallSiteDescription site = SmallSite();
  site.caller_attrs = {FnAttr::kFlatten};
  site.body_summary.instruction_count = 10000;
  EXPECT_EQ(Decide(site, OptLevel::kO2, InlineParams{}).verdict, Verdict::kAlways);
}

TEST(DecideTest, StrictComparison) {
  CallSiteDescription site;
  site.body_summary.instruction_count = 45;  // cost 225
  EXPECT_EQ(Decide(site, OptLevel::kO2, InlineParams{}).verdict, Verdict::kDecline);
  site.body_summary.instruction_count = 44;
  EXPECT_EQ(Decide(site, OptLevel::kO2, InlineParams{}).verdict, Verdict::kInline);
}

TEST(DecideTest, TraceDeltasSumToFinalValues) {
  std::mt19937 rng(20260101);
  std::uniform_int_distribution<int> small(0, 40);
  for (int i = 0; i < 500; ++i) {
    CallSiteDescription site;
    BodySummary& b = site.body_summary;
    b.instruction_count = small(rng) * 3;
    b.simplified_away_count = std::min<int64_t>(small(rng), b.instruction_count);
    b.internal_call_count = small(rng) % 5;
    b.intrinsic_count = small(rng) % 4;
    b.vector_instruction_count = small(rng) % 2;
    b.has_complex_branching = small(rng) % 3 == 0;
    site.hotness = static_cast<Hotness>(small(rng) % 4);
    if (small(rng) % 4 == 0) site.callee_attrs.insert(FnAttr::kInlineHint);
    if (small(rng) % 5 == 0) {
      site.callee_linkage = Linkage::kInternal;
      site.is_last_call_to_static = true;
    }
    OptLevel level = static_cast<OptLevel>(1 + small(rng) % 5);
    InlineDecision d = Decide(site, level, InlineParams{});
    int64_t cost = 0, threshold = 0;
    for (const TraceStep& s : d.trace) {
      if (s.quantity == TraceQuantity::kCost) {
        cost += s.delta;
        EXPECT_EQ(cost, s.value);
      }
      if (s.quantity == TraceQuantity::kThreshold) {
        threshold += s.delta;
        EXPECT_EQ(threshold, s.value);
      }
    }
    ASSERT_TRUE(d.cost && d.threshold);
    EXPECT_EQ(cost, *d.cost);
    EXPECT_EQ(threshold, *d.threshold);
    EXPECT_EQ(d.verdict, *d.cost < *d.threshold ? Verdict::kInline : Verdict::kDecline);
  }
}

// Raising inline_threshold never turns an Inline into a Decline (levels where
// the base threshold is not a size cap).
TEST(DecideTest, MonotoneInThreshold) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> n(0, 400);
  for (int i = 0; i < 300; ++i) {
    CallSiteDescription site;
    site.body_summary.instruction_count = n(rng);
    site.body_summary.internal_call_count = n(rng) % 8;
    site.hotness = static_cast<Hotness>(n(rng) % 4);
    for (OptLevel level : {OptLevel::kO1, OptLevel::kO2, OptLevel::kO3}) {
      bool inlined_before = false;
      for (int64_t t : {0, 100, 226, 500, 1000, 5000, 200000}) {
        InlineParams p;
        p.inline_threshold = t;
        bool inlined = Decide(site, level, p).verdict == Verdict::kInline;
        EXPECT_TRUE(inlined || !inlined_before) << "threshold " << t;
        inlined_before = inlined;
      }
    }
  }
}

TEST(DecideTest, MonotoneInBodySize) {
  for (OptLevel level : {OptLevel::kO1, OptLevel::kO2, OptLevel::kO3, OptLevel::kOs,
                         OptLevel::kOz}) {
    bool declined_before = false;
    for (int64_t size = 0; size < 200; ++size) {
      CallSiteDescription site;
      site.body_summary.instruction_count = size;
      bool declined = Decide(site, level, InlineParams{}).verdict == Verdict::kDecline;
      EXPECT_TRUE(declined || !declined_before) << size;
      declined_before = declined;
    }
  }
}

TEST(JsonTest, SiteRoundTrip) {
  CallSiteDescription site = SmallSite();
  site.callee_attrs = {FnAttr::kInlineHint, FnAttr::kAlwaysInline};
  site.caller_attrs = {FnAttr::kOptSize};
  site.callee_linkage = Linkage::kInternal;
  site.hotness = Hotness::kLocallyHot;
  site.body_summary.vector_instruction_count = 2;
  EXPECT_EQ(SiteFromJson(SiteToJson(site)), site);
}

TEST(JsonTest, ParamsRoundTripAndPartialInput) {
  InlineParams p;
  p.inline_threshold = 1000;
  EXPECT_EQ(ParamsFromJson(ParamsToJson(p)), p);
  EXPECT_EQ(ParamsFromJson("{\"inlinehint_threshold\": 325}").inlinehint_threshold, 325);
  EXPECT_EQ(ParamsFromJson("{}"), InlineParams{});
}

TEST(JsonTest, RejectsUnknownAndBadValues) {
  EXPECT_EQ(CodeOf([] { SiteFromJson("{\"no_such_field\": 1}"); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { SiteFromJson("{\"hotness\": \"Tepid\"}"); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { SiteFromJson("{not json"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { ParamsFromJson("{\"inline_threshold\": -5}"); }),
            ErrorCode::kInvalidArgument);
}

TEST(JsonTest, DecisionEchoesParams) {
  InlineDecision d = Decide(SmallSite(), OptLevel::kO2, InlineParams{});
  std::string json = DecisionToJson(d, OptLevel::kO2, InlineParams{});
  EXPECT_THAT(json, ::testing::HasSubstr("\"inline_threshold\": 225"));
  EXPECT_THAT(json, ::testing::HasSubstr("\"verdict\": \"Inline\""));
  EXPECT_THAT(json, ::testing::HasSubstr("\"rule\": \"init O2\""));
}

TEST(ParseOptLevelTest, Spellings) {
  EXPECT_EQ(ParseOptLevel("O2"), OptLevel::kO2);
  EXPECT_EQ(ParseOptLevel("-Os"), OptLevel::kOs);
  EXPECT_EQ(ParseOptLevel("z"), OptLevel::kOz);
  EXPECT_EQ(ParseOptLevel("3"), OptLevel::kO3);
  EXPECT_EQ(ParseOptLevel("O4"), std::nullopt);
}

}  // namespace
}  // namespace inlinescope
