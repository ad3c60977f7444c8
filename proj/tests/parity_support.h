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
// Shared by the parity test and the acceptance binary.

#ifndef INLINESCOPE_TESTS_PARITY_SUPPORT_H_
#define INLINESCOPE_TESTS_PARITY_SUPPORT_H_

#include <optional>
#include <string>
#include <vector>

#include "inlinescope/cost_model.h"
#include "inlinescope/remarks.h"
#include "json.hpp"
#include "test_support.h"

namespace inlinescope::testing {

struct ParityCase {
  std::string name;
  std::vector<std::string> flags;
  std::string caller;
  std::string callee;
  OptLevel level = OptLevel::kO2;
  InlineParams params;
  std::string stderr_text;

  static std::optional<InlineRemark> FindRemarkIn(const std::string& text,
                                                  const std::string& caller,
                                                  const std::string& callee) {
    for (const InlineRemark& r : ParseRemarkStream(text)) {
      if (r.caller == caller && r.callee == callee && r.kind != RemarkKind::kAnalysis) {
        return r;
      }
    }
    return std::nullopt;
  }
  std::optional<InlineRemark> FindRemark() const {
    return FindRemarkIn(stderr_text, caller, callee);
  }
};

// Manifest cases with clang14.params.json and each case's own params layered
// over the defaults.
inline std::vector<ParityCase> LoadParityCases() {
  std::string dir = SourcePath("fixtures/parity/");
  nlohmann::json toolchain = nlohmann::json::parse(ReadText(dir + "clang14.params.json"));
  nlohmann::json manifest = nlohmann::json::parse(ReadText(dir + "manifest.json"));
  std::vector<ParityCase> cases;
  for (const auto& entry : manifest) {
    ParityCase c;
    c.name = entry.at("name");
    c.flags = entry.at("flags").get<std::vector<std::string>>();
    c.caller = entry.at("caller");
    c.callee = entry.at("callee");
    c.level = *ParseOptLevel(entry.at("opt_level").get<std::string>());
    nlohmann::json params = toolchain;
    params.update(entry.at("params"));
    c.params = ParamsFromJson(params.dump());
    c.stderr_text = ReadText(dir + c.name + ".stderr");
    cases.push_back(std::move(c));
  }
  return cases;
}

// What the remark says happened, in simulator terms: a passed remark is
// Always for cost=always and Inline otherwise; a missed remark is Never for
// cost=never and Decline otherwise.
inline Verdict RemarkVerdict(const InlineRemark& r) {
  if (r.kind == RemarkKind::kPassed) return r.cost ? Verdict::kInline : Verdict::kAlways;
  return r.cost ? Verdict::kDecline : Verdict::kNever;
}

struct ParityOutcome {
  std::string name;
  Verdict simulated = Verdict::kDecline;
  Verdict observed = Verdict::kDecline;
  std::optional<int64_t> sim_cost, sim_threshold, remark_cost, remark_threshold;
  bool verdict_match = false;
  bool threshold_match = false;

  std::string Describe() const {
    auto num = [](const std::optional<int64_t>& v) {
      return v ? std::to_string(*v) : std::string("-");
    };
    return name + ": simulated " + std::string(VerdictName(simulated)) + " " + num(sim_cost) +
           "/" + num(sim_threshold) + ", clang " + std::string(VerdictName(observed)) + " " +
           num(remark_cost) + "/" + num(remark_threshold) +
           (verdict_match ? "" : "  VERDICT MISMATCH");
  }
};

inline std::vector<ParityOutcome> RunParity(const std::vector<ParityCase>& cases) {
  std::vector<ParityOutcome> outcomes;
  for (const ParityCase& c : cases) {
    CallSiteDescription site =
        SiteFromJson(ReadText(SourcePath("fixtures/parity/" + c.name + ".site.json")));
    InlineDecision d = Decide(site, c.level, c.params);
    std::optional<InlineRemark> r = c.FindRemark();
    ParityOutcome o;
    o.name = c.name;
    o.simulated = d.verdict;
    o.sim_cost = d.cost;
    o.sim_threshold = d.threshold;
    if (r) {
      o.observed = RemarkVerdict(*r);
      o.remark_cost = r->cost;
      o.remark_threshold = r->threshold;
      o.verdict_match = o.observed == o.simulated;
      o.threshold_match = r->threshold.has_value() && d.threshold == r->threshold;
    }
    outcomes.push_back(o);
  }
  return outcomes;
}

}  // namespace inlinescope::testing

#endif  // INLINESCOPE_TESTS_PARITY_SUPPORT_H_
