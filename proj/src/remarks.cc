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

#include "inlinescope/remarks.h"

#include <algorithm>
#include <charconv>

#include "inlinescope/error.h"
#include "json.hpp"

namespace inlinescope {
namespace {

using Json = nlohmann::json;

constexpr std::string_view kRemarkMarker = "remark: ";

bool Consume(std::string_view& text, std::string_view prefix) {
  if (!text.starts_with(prefix)) return false;
  text.remove_prefix(prefix.size());
  return true;
}

template <typename T>
std::optional<T> ParseNumber(std::string_view text) {
  T value{};
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) return std::nullopt;
  return value;
}

std::string_view TrimRight(std::string_view text) {
  while (!text.empty() && (text.back() == '\r' || text.back() == ' ' ||
                           text.back() == '\t' || text.back() == '\n')) {
    text.remove_suffix(1);
  }
  return text;
}

// A quoted 'name' or a bare token ending at the next space.
std::optional<std::string> ConsumeName(std::string_view& text) {
  if (Consume(text, "'")) {
    size_t close = text.find('\'');
    if (close == std::string_view::npos || close == 0) return std::nullopt;
    std::string name(text.substr(0, close));
    text.remove_prefix(close + 1);
    return name;
  }
  size_t end = text.find(' ');
  if (end == 0) return std::nullopt;
  if (end == std::string_view::npos) end = text.size();
  std::string name(text.substr(0, end));
  text.remove_prefix(end);
  return name;
}

// "(cost=N, threshold=M)" or "(cost=always)" / "(cost=never)". False when
// the group is malformed.
bool ConsumeCostGroup(std::string_view& text, InlineRemark& remark) {
  if (!Consume(text, "(cost=")) return false;
  size_t close = text.find(')');
  if (close == std::string_view::npos) return false;
  std::string_view group = text.substr(0, close);
  text.remove_prefix(close + 1);
  if (group == "always" || group == "never") return true;
  size_t comma = group.find(", threshold=");
  if (comma == std::string_view::npos) return false;
  auto cost = ParseNumber<int64_t>(group.substr(0, comma));
  auto threshold =
      ParseNumber<int64_t>(group.substr(comma + std::string_view(", threshold=").size()));
  if (!cost || !threshold) return false;
  remark.cost = cost;
  remark.threshold = threshold;
  return true;
}

// Parses everything after "remark: ". Absent on any mismatch.
std::optional<InlineRemark> ParseMessage(std::string_view message,
                                         std::string_view suffix) {
  InlineRemark remark;
  auto callee = ConsumeName(message);
  if (!callee) return std::nullopt;
  remark.callee = std::move(*callee);

  bool positive = false;
  if (Consume(message, " inlined into ")) {
    positive = true;
  } else if (!Consume(message, " not inlined into ") &&
             !Consume(message, " will not be inlined into ")) {
    return std::nullopt;
  }
  auto caller = ConsumeName(message);
  if (!caller) return std::nullopt;
  remark.caller = std::move(*caller);

  if (suffix == "-missed") {
    remark.kind = RemarkKind::kMissed;
  } else if (suffix == "-analysis") {
    remark.kind = RemarkKind::kAnalysis;
  } else {
    remark.kind = positive ? RemarkKind::kPassed : RemarkKind::kMissed;
  }

  // Newer releases append the inlined call-site path; it carries nothing the
  // location prefix does not already give.
  if (size_t at = message.rfind(" at callsite ");
      at != std::string_view::npos && message.ends_with(";")) {
    message = message.substr(0, at);
  }

  if (Consume(message, " with ")) {
    if (!ConsumeCostGroup(message, remark)) return std::nullopt;
  }
  if (Consume(message, " because ")) {
    size_t cost_at = message.find(" (cost=");
    size_t detail_at = message.find(": ");
    size_t end = std::min({cost_at, detail_at, message.size()});
    if (end == 0) return std::nullopt;
    remark.reason = std::string(message.substr(0, end));
    message.remove_prefix(end);
    if (Consume(message, " ")) {
      if (!ConsumeCostGroup(message, remark)) return std::nullopt;
    }
  }
  if (Consume(message, ": ")) {
    if (message.empty()) return std::nullopt;
    remark.detail = std::string(message);
    message = {};
  }
  if (!message.empty()) return std::nullopt;
  return remark;
}

enum class LineClass { kOther, kRemark, kMalformed };

LineClass Classify(std::string_view raw, std::optional<InlineRemark>& out) {
  std::string_view line = TrimRight(raw);
  size_t tag = line.rfind(" [-Rpass");
  if (tag == std::string_view::npos || !line.ends_with("=inline]")) {
    return LineClass::kOther;
  }
  std::string_view suffix = line.substr(tag + 8);
  suffix.remove_suffix(std::string_view("=inline]").size());
  if (suffix != "" && suffix != "-missed" && suffix != "-analysis") {
    return LineClass::kOther;
  }
  std::string_view body = line.substr(0, tag);

  std::optional<SourceLocation> location;
  if (!Consume(body, kRemarkMarker)) {
    size_t marker = body.find(": remark: ");
    if (marker == std::string_view::npos) return LineClass::kOther;
    std::string_view prefix = body.substr(0, marker);
    body.remove_prefix(marker + 2 + kRemarkMarker.size());
    size_t col_colon = prefix.rfind(':');
    if (col_colon == std::string_view::npos) return LineClass::kMalformed;
    size_t line_colon = prefix.rfind(':', col_colon - 1);
    if (line_colon == std::string_view::npos || line_colon == 0 ||
        col_colon == 0) {
      return LineClass::kMalformed;
    }
    auto line_no = ParseNumber<uint32_t>(
        prefix.substr(line_colon + 1, col_colon - line_colon - 1));
    auto column = ParseNumber<uint32_t>(prefix.substr(col_colon + 1));
    if (!line_no || !column) return LineClass::kMalformed;
    location = SourceLocation{std::string(prefix.substr(0, line_colon)),
                              *line_no, *column};
  }

  out = ParseMessage(body, suffix);
  if (!out) return LineClass::kMalformed;
  out->location = std::move(location);
  return LineClass::kRemark;
}

template <typename Fn>
void ForEachLine(std::string_view text, Fn fn) {
  while (!text.empty()) {
    size_t end = text.find('\n');
    std::string_view line = text.substr(0, end);
    fn(line);
    if (end == std::string_view::npos) break;
    text.remove_prefix(end + 1);
  }
}

Json OptionalJson(const std::optional<int64_t>& value) {
  return value ? Json(*value) : Json(nullptr);
}
Json OptionalJson(const std::optional<std::string>& value) {
  return value ? Json(*value) : Json(nullptr);
}

std::string Dump(const Json& json) {
  return json.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

}  // namespace

std::string_view RemarkKindName(RemarkKind kind) {
  switch (kind) {
    case RemarkKind::kPassed:
      return "Passed";
    case RemarkKind::kMissed:
      return "Missed";
    case RemarkKind::kAnalysis:
      return "Analysis";
  }
  return "Passed";
}

std::optional<RemarkKind> ParseRemarkKind(std::string_view name) {
  for (RemarkKind kind :
       {RemarkKind::kPassed, RemarkKind::kMissed, RemarkKind::kAnalysis}) {
    if (RemarkKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

std::optional<InlineRemark> ParseRemarkLine(std::string_view line) {
  std::optional<InlineRemark> remark;
  if (Classify(line, remark) != LineClass::kRemark) return std::nullopt;
  return remark;
}

std::vector<InlineRemark> ParseRemarkStream(std::string_view text) {
  return ParseRemarkStreamDetailed(text).remarks;
}

ParsedStream ParseRemarkStreamDetailed(std::string_view text) {
  ParsedStream parsed;
  ForEachLine(text, [&parsed](std::string_view line) {
    std::optional<InlineRemark> remark;
    switch (Classify(line, remark)) {
      case LineClass::kRemark:
        parsed.remarks.push_back(std::move(*remark));
        break;
      case LineClass::kMalformed:
        parsed.unparsed.emplace_back(TrimRight(line));
        break;
      case LineClass::kOther:
        break;
    }
  });
  return parsed;
}

RemarkSummary Summarize(const std::vector<InlineRemark>& remarks) {
  RemarkSummary summary;
  for (const InlineRemark& remark : remarks) {
    switch (remark.kind) {
      case RemarkKind::kPassed:
        summary.passed_count++;
        summary.inlined_pairs.emplace(remark.caller, remark.callee);
        break;
      case RemarkKind::kMissed: {
        summary.missed_count++;
        std::string key = remark.reason.value_or("");
        if (remark.detail) key += key.empty() ? *remark.detail : ": " + *remark.detail;
        if (key.empty()) key = "unspecified";
        summary.reason_histogram[key]++;
        break;
      }
      case RemarkKind::kAnalysis:
        summary.analysis_count++;
        break;
    }
  }
  return summary;
}

DiscrepancyReport Reconcile(const std::vector<InlineRemark>& remarks,
                            const InliningReport& report) {
  std::set<std::string> from_remarks;
  for (const InlineRemark& remark : remarks) {
    if (remark.kind == RemarkKind::kPassed) from_remarks.insert(remark.callee);
  }
  std::set<std::string> from_dwarf;
  for (const FunctionEntry& entry : report.entries) {
    if (entry.presence != Presence::kNeverInlined) from_dwarf.insert(entry.name);
  }
  DiscrepancyReport out;
  for (const std::string& name : from_remarks) {
    (from_dwarf.contains(name) ? out.agreed : out.in_remarks_not_dwarf)
        .insert(name);
  }
  for (const std::string& name : from_dwarf) {
    if (!from_remarks.contains(name)) out.in_dwarf_not_remarks.insert(name);
  }
  return out;
}

std::string RemarksToJson(const std::vector<InlineRemark>& remarks) {
  Json array = Json::array();
  for (const InlineRemark& remark : remarks) {
    Json location = nullptr;
    if (remark.location) {
      location = {{"file", remark.location->file},
                  {"line", remark.location->line},
                  {"column", remark.location->column}};
    }
    array.push_back({
        {"kind", RemarkKindName(remark.kind)},
        {"callee", remark.callee},
        {"caller", remark.caller},
        {"cost", OptionalJson(remark.cost)},
        {"threshold", OptionalJson(remark.threshold)},
        {"reason", OptionalJson(remark.reason)},
        {"detail", OptionalJson(remark.detail)},
        {"location", std::move(location)},
    });
  }
  return Dump(array);
}

std::vector<InlineRemark> RemarksFromJson(std::string_view text) {
  try {
    std::vector<InlineRemark> remarks;
    for (const Json& item : Json::parse(text)) {
      InlineRemark remark;
      auto kind = ParseRemarkKind(item.at("kind").get<std::string>());
      if (!kind) throw Error(ErrorCode::kInvalidArgument, "bad remark kind");
      remark.kind = *kind;
      remark.callee = item.at("callee").get<std::string>();
      remark.caller = item.at("caller").get<std::string>();
      if (!item.at("cost").is_null()) remark.cost = item.at("cost").get<int64_t>();
      if (!item.at("threshold").is_null()) {
        remark.threshold = item.at("threshold").get<int64_t>();
      }
      if (remark.cost.has_value() != remark.threshold.has_value()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "cost and threshold must be given together");
      }
      if (!item.at("reason").is_null()) {
        remark.reason = item.at("reason").get<std::string>();
      }
      if (!item.at("detail").is_null()) {
        remark.detail = item.at("detail").get<std::string>();
      }
      if (const Json& loc = item.at("location"); !loc.is_null()) {
        remark.location = SourceLocation{loc.at("file").get<std::string>(),
                                         loc.at("line").get<uint32_t>(),
                                         loc.at("column").get<uint32_t>()};
      }
      remarks.push_back(std::move(remark));
    }
    return remarks;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("remark JSON: ") + e.what());
  }
}

std::string SummaryToJson(const RemarkSummary& summary) {
  Json pairs = Json::array();
  for (const auto& [caller, callee] : summary.inlined_pairs) {
    pairs.push_back({{"caller", caller}, {"callee", callee}});
  }
  Json json = {
      {"passed_count", summary.passed_count},
      {"missed_count", summary.missed_count},
      {"analysis_count", summary.analysis_count},
      {"reason_histogram", summary.reason_histogram},
      {"inlined_pairs", std::move(pairs)},
  };
  return Dump(json);
}

std::string DiscrepancyToJson(const DiscrepancyReport& report) {
  Json json = {
      {"in_remarks_not_dwarf", report.in_remarks_not_dwarf},
      {"in_dwarf_not_remarks", report.in_dwarf_not_remarks},
      {"agreed", report.agreed},
  };
  return Dump(json);
}

}  // namespace inlinescope
