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
// Parser for the inliner's -Rpass / -Rpass-missed / -Rpass-analysis
// diagnostics on compiler stderr, and reconciliation against DWARF.
//
// Accepted shape (clang 10 through 17 spellings):
//
//   [file:line:col: ]remark: CALLEE VERB CALLER[ with (COST)][TAIL]
//       [ at callsite ...;] [-Rpass[-missed|-analysis]=inline]
//
// where names are 'quoted' or bare, VERB is "inlined into", "not inlined
// into" or "will not be inlined into", COST is "cost=N, threshold=M" or
// "cost=always|never", and TAIL is ": detail" or " because REASON[ (COST)]
// [: detail]".

#ifndef INLINESCOPE_REMARKS_H_
#define INLINESCOPE_REMARKS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "inlinescope/ground_truth.h"

namespace inlinescope {

enum class RemarkKind : uint8_t { kPassed, kMissed, kAnalysis };

std::string_view RemarkKindName(RemarkKind kind);
std::optional<RemarkKind> ParseRemarkKind(std::string_view name);

struct SourceLocation {
  std::string file;
  uint32_t line = 0;
  uint32_t column = 0;
  friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

struct InlineRemark {
  RemarkKind kind = RemarkKind::kPassed;
  std::string callee;
  std::string caller;
  // Both set or both absent. "cost=always" and "cost=never" leave them unset.
  std::optional<int64_t> cost;
  std::optional<int64_t> threshold;
  std::optional<std::string> reason;  // text after "because", verbatim
  std::optional<std::string> detail;  // text after the final ": "
  std::optional<SourceLocation> location;
  friend bool operator==(const InlineRemark&, const InlineRemark&) = default;
};

struct RemarkSummary {
  uint64_t passed_count = 0;
  uint64_t missed_count = 0;
  uint64_t analysis_count = 0;
  // Missed remarks keyed by "reason" or "reason: detail"; "unspecified"
  // when neither is given.
  std::map<std::string, uint64_t> reason_histogram;
  std::set<std::pair<std::string, std::string>> inlined_pairs;  // caller, callee
};

struct DiscrepancyReport {
  std::set<std::string> in_remarks_not_dwarf;
  std::set<std::string> in_dwarf_not_remarks;
  std::set<std::string> agreed;
};

struct ParsedStream {
  std::vector<InlineRemark> remarks;
  // Lines that look like inliner remarks but do not fit the grammar.
  std::vector<std::string> unparsed;
};

// Absent for any line that is not an inliner remark. Never throws.
std::optional<InlineRemark> ParseRemarkLine(std::string_view line);

std::vector<InlineRemark> ParseRemarkStream(std::string_view text);
ParsedStream ParseRemarkStreamDetailed(std::string_view text);

RemarkSummary Summarize(const std::vector<InlineRemark>& remarks);

DiscrepancyReport Reconcile(const std::vector<InlineRemark>& remarks,
                            const InliningReport& report);

std::string RemarksToJson(const std::vector<InlineRemark>& remarks);
std::vector<InlineRemark> RemarksFromJson(std::string_view text);
std::string SummaryToJson(const RemarkSummary& summary);
std::string DiscrepancyToJson(const DiscrepancyReport& report);

}  // namespace inlinescope

#endif  // INLINESCOPE_REMARKS_H_
