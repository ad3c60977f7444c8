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

#include "inlinescope/ground_truth.h"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <tuple>
#include <unordered_set>

#include "inlinescope/error.h"
#include "json.hpp"

namespace inlinescope {
namespace {

using dwarf::AddressRange;
using dwarf::Die;
using dwarf::DwarfContext;
using Json = nlohmann::json;

constexpr uint16_t kEtRel = 1;

// Suffixes that compilers append to clones of a source function.
constexpr std::string_view kCloneMarkers[] = {".isra.", ".part.",
                                              ".constprop.", ".llvm.",
                                              ".cold"};

bool HasCloneMarker(std::string_view name) {
  for (std::string_view marker : kCloneMarkers) {
    if (name.find(marker) != std::string_view::npos) return true;
  }
  return false;
}

// What a subprogram DIE says about itself once abstract_origin and
// specification links are followed.
struct Resolved {
  std::string name;
  std::optional<std::string> decl_file;
  std::optional<uint64_t> inline_attr;
  bool artificial = false;
};

Resolved Resolve(const DwarfContext& ctx, size_t index) {
  std::optional<std::string_view> linkage;
  std::optional<std::string_view> plain;
  Resolved out;
  std::unordered_set<size_t> seen;
  std::optional<size_t> current = index;
  while (current && seen.insert(*current).second && seen.size() < 16) {
    const Die& die = ctx.dies()[*current];
    if (!linkage) linkage = ctx.String(die, dwarf::kAtLinkageName);
    if (!linkage) linkage = ctx.String(die, dwarf::kAtMipsLinkageName);
    if (!plain) plain = ctx.String(die, dwarf::kAtName);
    if (!out.decl_file) out.decl_file = ctx.FileName(die, dwarf::kAtDeclFile);
    if (!out.inline_attr) out.inline_attr = ctx.Constant(die, dwarf::kAtInline);
    out.artificial = out.artificial || ctx.Flag(die, dwarf::kAtArtificial);
    std::optional<uint64_t> next = ctx.Reference(die, dwarf::kAtAbstractOrigin);
    if (!next) next = ctx.Reference(die, dwarf::kAtSpecification);
    current = next ? ctx.IndexOfOffset(*next) : std::nullopt;
  }
  if (linkage && !linkage->empty()) {
    out.name = std::string(*linkage);
  } else if (plain) {
    out.name = std::string(*plain);
  }
  if (HasCloneMarker(out.name)) out.artificial = true;
  return out;
}

// Drops ranges that the linker tombstoned for discarded sections.
std::vector<AddressRange> LiveRanges(const DwarfContext& ctx, const Die& die,
                                     uint16_t file_type) {
  std::vector<AddressRange> ranges = ctx.Ranges(die);
  uint8_t size = ctx.units()[die.unit].address_size;
  uint64_t tombstone = size == 8 ? ~uint64_t{1} : uint64_t{0xfffffffe};
  std::erase_if(ranges, [&](const AddressRange& r) {
    return (r.low == 0 && file_type != kEtRel) || r.low >= tombstone;
  });
  return ranges;
}

InlineAttribute DecodeInline(std::optional<uint64_t> value) {
  if (!value || *value > 3) return InlineAttribute::kNotInlined;
  return static_cast<InlineAttribute>(*value);
}

int InlineRank(InlineAttribute attr) {
  switch (attr) {
    case InlineAttribute::kNotInlined:
      return 0;
    case InlineAttribute::kDeclaredNotInlined:
      return 1;
    case InlineAttribute::kInlined:
      return 2;
    case InlineAttribute::kDeclaredInlined:
      return 3;
  }
  return 0;
}

std::string SymbolBase(std::string_view name) {
  size_t best = name.size();
  for (std::string_view marker : kCloneMarkers) {
    size_t at = name.find(marker);
    if (at != std::string_view::npos && at > 0) best = std::min(best, at);
  }
  return std::string(name.substr(0, best));
}

struct Scan {
  std::vector<FunctionEntry> entries;
  std::vector<InlineInstance> instances;
  std::vector<std::string> warnings;
};

std::string Hex(uint64_t value) {
  char buffer[24];
  std::snprintf(buffer, sizeof(buffer), "0x%llx",
                static_cast<unsigned long long>(value));
  return buffer;
}

Scan ScanImage(std::span<const uint8_t> image) {
  ElfFile elf = ElfFile::Parse(image);
  DwarfContext ctx = DwarfContext::Load(elf);
  uint16_t file_type = elf.file_type();

  std::map<std::string, FunctionEntry> by_name;
  auto add_entry = [&](const Resolved& resolved) -> FunctionEntry& {
    FunctionEntry& entry = by_name[resolved.name];
    if (entry.name.empty()) entry.name = resolved.name;
    if (!entry.decl_file) entry.decl_file = resolved.decl_file;
    // Several DIEs may share a name; the strongest inline evidence wins.
    InlineAttribute attr = DecodeInline(resolved.inline_attr);
    if (InlineRank(attr) > InlineRank(entry.inline_attr)) entry.inline_attr = attr;
    entry.artificial = entry.artificial || resolved.artificial;
    return entry;
  };

  Scan scan;
  const std::vector<Die>& dies = ctx.dies();
  for (size_t i = 0; i < dies.size(); ++i) {
    const Die& die = dies[i];
    if (die.tag == dwarf::kTagSubprogram) {
      std::vector<AddressRange> ranges = LiveRanges(ctx, die, file_type);
      if (ctx.Flag(die, dwarf::kAtDeclaration) && ranges.empty()) continue;
      Resolved resolved = Resolve(ctx, i);
      if (resolved.name.empty()) continue;
      FunctionEntry& entry = add_entry(resolved);
      if (!ranges.empty()) entry.has_concrete_range = true;
      continue;
    }
    if (die.tag != dwarf::kTagInlinedSubroutine) continue;

    std::optional<uint64_t> target =
        ctx.Reference(die, dwarf::kAtAbstractOrigin);
    std::optional<size_t> origin =
        target ? ctx.IndexOfOffset(*target) : std::nullopt;
    if (!origin) {
      scan.warnings.push_back(
          "DanglingOrigin: inlined subroutine at " + Hex(die.offset) +
          " refers to " + (target ? Hex(*target) : std::string("nothing")));
      continue;
    }
    Resolved callee = Resolve(ctx, *origin);
    if (callee.name.empty()) {
      scan.warnings.push_back("DanglingOrigin: inlined subroutine at " +
                              Hex(die.offset) + " has an unnamed origin " +
                              Hex(*target));
      continue;
    }
    InlineInstance instance;
    instance.abstract_origin = callee.name;
    for (int64_t p = die.parent; p >= 0; p = dies[p].parent) {
      if (dies[p].tag == dwarf::kTagSubprogram) {
        instance.host_function = Resolve(ctx, static_cast<size_t>(p)).name;
        break;
      }
    }
    instance.call_file = ctx.FileName(die, dwarf::kAtCallFile);
    if (auto line = ctx.Constant(die, dwarf::kAtCallLine); line && *line > 0) {
      instance.call_line = static_cast<uint32_t>(*line);
    }
    if (auto column = ctx.Constant(die, dwarf::kAtCallColumn);
        column && *column > 0) {
      instance.call_column = static_cast<uint32_t>(*column);
    }
    instance.pc_ranges = LiveRanges(ctx, die, file_type);
    add_entry(callee).inline_instance_count++;
    scan.instances.push_back(std::move(instance));
  }

  std::vector<ElfSymbol> symbols = elf.FunctionSymbols();
  std::unordered_set<std::string> names;
  for (const ElfSymbol& symbol : symbols) {
    names.insert(symbol.name);
    names.insert(SymbolBase(symbol.name));
  }
  for (auto& [name, entry] : by_name) {
    entry.symbol_present = names.contains(name);
    scan.entries.push_back(std::move(entry));
  }

  std::sort(scan.instances.begin(), scan.instances.end(),
            [](const InlineInstance& a, const InlineInstance& b) {
              auto key = [](const InlineInstance& x) {
                uint64_t low = x.pc_ranges.empty() ? 0 : x.pc_ranges[0].low;
                return std::make_tuple(std::cref(x.host_function),
                                       std::cref(x.abstract_origin), low,
                                       x.call_line.value_or(0),
                                       x.call_column.value_or(0));
              };
              return key(a) < key(b);
            });
  return scan;
}

std::string Sha256Hex(std::span<const uint8_t> image) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(image.data(), image.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(ErrorCode::kIo, "sha256 failed");
  }
  std::string hex;
  static constexpr char kDigits[] = "0123456789abcdef";
  for (unsigned int i = 0; i < length; ++i) {
    hex.push_back(kDigits[digest[i] >> 4]);
    hex.push_back(kDigits[digest[i] & 0xf]);
  }
  return hex;
}

Json OptionalJson(const std::optional<std::string>& value) {
  return value ? Json(*value) : Json(nullptr);
}
Json OptionalJson(const std::optional<uint32_t>& value) {
  return value ? Json(*value) : Json(nullptr);
}

std::string Dump(const Json& json) {
  return json.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

double Round4(double value) { return std::round(value * 10000.0) / 10000.0; }

}  // namespace

std::string_view InlineAttributeName(InlineAttribute attribute) {
  switch (attribute) {
    case InlineAttribute::kNotInlined:
      return "NotInlined";
    case InlineAttribute::kInlined:
      return "Inlined";
    case InlineAttribute::kDeclaredNotInlined:
      return "DeclaredNotInlined";
    case InlineAttribute::kDeclaredInlined:
      return "DeclaredInlined";
  }
  return "NotInlined";
}

std::string_view PresenceName(Presence presence) {
  switch (presence) {
    case Presence::kNeverInlined:
      return "NeverInlined";
    case Presence::kInlinedRemaining:
      return "InlinedRemaining";
    case Presence::kInlinedEliminated:
      return "InlinedEliminated";
  }
  return "NeverInlined";
}

std::optional<InlineAttribute> ParseInlineAttribute(std::string_view name) {
  for (int i = 0; i <= 3; ++i) {
    auto attribute = static_cast<InlineAttribute>(i);
    if (InlineAttributeName(attribute) == name) return attribute;
  }
  return std::nullopt;
}

std::optional<Presence> ParsePresence(std::string_view name) {
  for (int i = 0; i <= 2; ++i) {
    auto presence = static_cast<Presence>(i);
    if (PresenceName(presence) == name) return presence;
  }
  return std::nullopt;
}

std::vector<FunctionEntry> ExtractFunctions(std::span<const uint8_t> image) {
  return ScanImage(image).entries;
}

InstanceExtraction ExtractInlineInstances(std::span<const uint8_t> image) {
  Scan scan = ScanImage(image);
  return {std::move(scan.instances), std::move(scan.warnings)};
}

std::vector<FunctionEntry> ClassifyPresence(std::vector<FunctionEntry> entries,
                                            std::span<const ElfSymbol> symbols) {
  std::unordered_set<std::string> names;
  for (const ElfSymbol& symbol : symbols) {
    if (symbol.type != kSttFunc) continue;
    names.insert(symbol.name);
    names.insert(SymbolBase(symbol.name));
  }
  for (FunctionEntry& entry : entries) {
    entry.symbol_present = names.contains(entry.name);
    bool attr_inlined = entry.inline_attr == InlineAttribute::kInlined ||
                        entry.inline_attr == InlineAttribute::kDeclaredInlined;
    if (!attr_inlined && entry.inline_instance_count == 0) {
      entry.presence = Presence::kNeverInlined;
    } else if (entry.symbol_present || entry.has_concrete_range) {
      entry.presence = Presence::kInlinedRemaining;
    } else {
      entry.presence = Presence::kInlinedEliminated;
    }
  }
  return entries;
}

InliningReport MakeReport(std::string binary_id,
                          std::vector<FunctionEntry> entries,
                          std::vector<InlineInstance> instances,
                          std::vector<std::string> warnings) {
  if (entries.empty()) {
    throw Error(ErrorCode::kEmptyFunctionUniverse,
                binary_id + " has no named subprograms");
  }
  InliningReport report;
  report.binary_id = std::move(binary_id);
  report.total_functions = entries.size();
  for (const FunctionEntry& entry : entries) {
    if (entry.presence == Presence::kInlinedRemaining) {
      report.remaining_inlined++;
    } else if (entry.presence == Presence::kInlinedEliminated) {
      report.eliminated_inlined++;
    }
  }
  report.inlined_functions =
      report.remaining_inlined + report.eliminated_inlined;
  report.inlining_ratio = static_cast<double>(report.inlined_functions) /
                          static_cast<double>(report.total_functions);
  report.entries = std::move(entries);
  report.instances = std::move(instances);
  report.warnings = std::move(warnings);
  return report;
}

InliningReport ComputeInliningReport(std::span<const uint8_t> image,
                                     std::string_view binary_path) {
  Scan scan = ScanImage(image);
  ElfFile elf = ElfFile::Parse(image);
  std::vector<ElfSymbol> symbols = elf.FunctionSymbols();
  std::vector<FunctionEntry> entries =
      ClassifyPresence(std::move(scan.entries), symbols);
  return MakeReport(std::string(binary_path) + "@sha256:" + Sha256Hex(image),
                    std::move(entries), std::move(scan.instances),
                    std::move(scan.warnings));
}

FlowCounts DeltaFlow(const InliningReport& baseline,
                     const InliningReport& variant) {
  std::map<std::string_view, Presence> variant_names;
  for (const FunctionEntry& entry : variant.entries) {
    variant_names.emplace(entry.name, entry.presence);
  }
  std::set<std::string_view> baseline_names;
  FlowCounts flow;
  for (const FunctionEntry& entry : baseline.entries) {
    if (!baseline_names.insert(entry.name).second) continue;
    auto it = variant_names.find(entry.name);
    if (it == variant_names.end()) {
      flow.only_in_baseline++;
      flow.warnings.push_back("missing from variant: " + entry.name);
      continue;
    }
    switch (it->second) {
      case Presence::kNeverInlined:
        flow.not_inlined++;
        break;
      case Presence::kInlinedRemaining:
        flow.inlined_remaining++;
        break;
      case Presence::kInlinedEliminated:
        flow.inlined_eliminated++;
        break;
    }
  }
  for (const auto& [name, presence] : variant_names) {
    if (!baseline_names.contains(name)) flow.only_in_variant++;
  }
  return flow;
}

std::string ReportToJson(const InliningReport& report) {
  Json entries = Json::array();
  for (const FunctionEntry& entry : report.entries) {
    entries.push_back({
        {"name", entry.name},
        {"decl_file", OptionalJson(entry.decl_file)},
        {"inline_attr", InlineAttributeName(entry.inline_attr)},
        {"has_concrete_range", entry.has_concrete_range},
        {"presence", PresenceName(entry.presence)},
        {"symbol_present", entry.symbol_present},
        {"inline_instance_count", entry.inline_instance_count},
        {"artificial", entry.artificial},
    });
  }
  Json instances = Json::array();
  for (const InlineInstance& instance : report.instances) {
    Json ranges = Json::array();
    for (const AddressRange& range : instance.pc_ranges) {
      ranges.push_back({{"low", range.low}, {"high", range.high}});
    }
    instances.push_back({
        {"abstract_origin", instance.abstract_origin},
        {"host_function", instance.host_function},
        {"call_file", OptionalJson(instance.call_file)},
        {"call_line", OptionalJson(instance.call_line)},
        {"call_column", OptionalJson(instance.call_column)},
        {"pc_ranges", std::move(ranges)},
    });
  }
  Json json = {
      {"binary_id", report.binary_id},
      {"totals",
       {{"functions", report.total_functions},
        {"inlined", report.inlined_functions},
        {"remaining", report.remaining_inlined},
        {"eliminated", report.eliminated_inlined},
        {"ratio", Round4(report.inlining_ratio)}}},
      {"entries", std::move(entries)},
      {"instances", std::move(instances)},
      {"warnings", report.warnings},
  };
  return Dump(json);
}

InliningReport ReportFromJson(std::string_view text) {
  try {
    Json json = Json::parse(text);
    std::vector<FunctionEntry> entries;
    for (const Json& item : json.at("entries")) {
      FunctionEntry entry;
      entry.name = item.at("name").get<std::string>();
      if (!item.at("decl_file").is_null()) {
        entry.decl_file = item.at("decl_file").get<std::string>();
      }
      auto attr = ParseInlineAttribute(item.at("inline_attr").get<std::string>());
      auto presence = ParsePresence(item.at("presence").get<std::string>());
      if (!attr || !presence) {
        throw Error(ErrorCode::kInvalidArgument,
                    "bad inline_attr or presence for " + entry.name);
      }
      entry.inline_attr = *attr;
      entry.presence = *presence;
      entry.has_concrete_range = item.at("has_concrete_range").get<bool>();
      entry.symbol_present = item.at("symbol_present").get<bool>();
      entry.inline_instance_count =
          item.at("inline_instance_count").get<uint64_t>();
      entry.artificial = item.value("artificial", false);
      entries.push_back(std::move(entry));
    }
    std::vector<InlineInstance> instances;
    for (const Json& item : json.at("instances")) {
      InlineInstance instance;
      instance.abstract_origin = item.at("abstract_origin").get<std::string>();
      instance.host_function = item.at("host_function").get<std::string>();
      if (!item.at("call_file").is_null()) {
        instance.call_file = item.at("call_file").get<std::string>();
      }
      if (!item.at("call_line").is_null()) {
        instance.call_line = item.at("call_line").get<uint32_t>();
      }
      if (!item.at("call_column").is_null()) {
        instance.call_column = item.at("call_column").get<uint32_t>();
      }
      for (const Json& range : item.at("pc_ranges")) {
        instance.pc_ranges.push_back(
            {range.at("low").get<uint64_t>(), range.at("high").get<uint64_t>()});
      }
      instances.push_back(std::move(instance));
    }
    return MakeReport(json.at("binary_id").get<std::string>(),
                      std::move(entries), std::move(instances),
                      json.at("warnings").get<std::vector<std::string>>());
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("report JSON: ") + e.what());
  }
}

std::string FlowToJson(const FlowCounts& flow) {
  Json json = {
      {"not_inlined", flow.not_inlined},
      {"inlined_remaining", flow.inlined_remaining},
      {"inlined_eliminated", flow.inlined_eliminated},
      {"only_in_baseline", flow.only_in_baseline},
      {"only_in_variant", flow.only_in_variant},
      {"warnings", flow.warnings},
  };
  return Dump(json);
}

std::vector<uint8_t> ReadBinaryFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read " + path);
  return bytes;
}

}  // namespace inlinescope
