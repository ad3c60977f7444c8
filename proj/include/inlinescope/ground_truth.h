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
// Function-level inlining ground truth recovered from DWARF.
//
// A function is identified by its DWARF name (linkage name preferred).
// Abstract and concrete subprogram DIEs that resolve to the same name merge
// into one FunctionEntry. A function counts as inlined when its DW_AT_inline
// constant says so (1 or 3) or when at least one DW_TAG_inlined_subroutine
// refers to it; the union is used because the two kinds of evidence can
// disagree.

#ifndef INLINESCOPE_GROUND_TRUTH_H_
#define INLINESCOPE_GROUND_TRUTH_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "inlinescope/dwarf.h"
#include "inlinescope/elf_file.h"

namespace inlinescope {

// DW_AT_inline constants (DW_INL_*).
enum class InlineAttribute : uint8_t {
  kNotInlined = 0,
  kInlined = 1,
  kDeclaredNotInlined = 2,
  kDeclaredInlined = 3,
};

enum class Presence : uint8_t {
  kNeverInlined,
  kInlinedRemaining,
  kInlinedEliminated,
};

std::string_view InlineAttributeName(InlineAttribute attribute);
std::string_view PresenceName(Presence presence);
std::optional<InlineAttribute> ParseInlineAttribute(std::string_view name);
std::optional<Presence> ParsePresence(std::string_view name);

struct FunctionEntry {
  std::string name;
  std::optional<std::string> decl_file;
  InlineAttribute inline_attr = InlineAttribute::kNotInlined;
  bool has_concrete_range = false;
  Presence presence = Presence::kNeverInlined;
  bool symbol_present = false;
  uint64_t inline_instance_count = 0;
  // Compiler-generated clone names (".isra.", ".part.", ...) or
  // DW_AT_artificial. Flagged only; they still count in every total.
  bool artificial = false;

  friend bool operator==(const FunctionEntry&, const FunctionEntry&) = default;
};

struct InlineInstance {
  std::string abstract_origin;  // name of the inlined callee's FunctionEntry
  std::string host_function;    // nearest enclosing concrete subprogram
  std::optional<std::string> call_file;
  std::optional<uint32_t> call_line;
  std::optional<uint32_t> call_column;
  std::vector<dwarf::AddressRange> pc_ranges;

  friend bool operator==(const InlineInstance&, const InlineInstance&) = default;
};

struct InstanceExtraction {
  std::vector<InlineInstance> instances;
  // One line per unresolvable abstract origin (DanglingOrigin), with offsets.
  std::vector<std::string> warnings;
};

struct InliningReport {
  std::string binary_id;
  uint64_t total_functions = 0;
  uint64_t inlined_functions = 0;
  uint64_t remaining_inlined = 0;
  uint64_t eliminated_inlined = 0;
  double inlining_ratio = 0.0;  // exact inlined / total
  std::vector<FunctionEntry> entries;
  std::vector<InlineInstance> instances;
  std::vector<std::string> warnings;
};

struct FlowCounts {
  uint64_t not_inlined = 0;
  uint64_t inlined_remaining = 0;
  uint64_t inlined_eliminated = 0;
  uint64_t only_in_baseline = 0;
  uint64_t only_in_variant = 0;
  std::vector<std::string> warnings;
};

// One entry per named subprogram, sorted by name, with presence still
// kNeverInlined (ClassifyPresence assigns it). symbol_present reflects
// .symtab. Throws kMalformedElf, kMissingDebugInfo, kMalformedDwarf.
std::vector<FunctionEntry> ExtractFunctions(std::span<const uint8_t> image);

// One instance per DW_TAG_inlined_subroutine, sorted by (host, origin,
// address, call line, call column).
InstanceExtraction ExtractInlineInstances(std::span<const uint8_t> image);

// Recomputes symbol_present from `symbols` (FUNC entries of .symtab) and
// assigns presence. Total.
std::vector<FunctionEntry> ClassifyPresence(std::vector<FunctionEntry> entries,
                                            std::span<const ElfSymbol> symbols);

// Throws kEmptyFunctionUniverse when the binary has no named subprograms.
// `binary_path` is recorded verbatim in binary_id next to a SHA-256 of the
// image.
InliningReport ComputeInliningReport(std::span<const uint8_t> image,
                                     std::string_view binary_path);

// Builds a report from already-classified entries (used for synthetic
// reports and when re-reading serialized ones).
InliningReport MakeReport(std::string binary_id,
                          std::vector<FunctionEntry> entries,
                          std::vector<InlineInstance> instances,
                          std::vector<std::string> warnings);

// Buckets the names present in both reports by their presence in `variant`.
FlowCounts DeltaFlow(const InliningReport& baseline,
                     const InliningReport& variant);

// Canonical JSON text: sorted keys, two-space indent, trailing newline.
// The ratio is rounded to four decimal places.
std::string ReportToJson(const InliningReport& report);
InliningReport ReportFromJson(std::string_view text);
std::string FlowToJson(const FlowCounts& flow);

// Convenience for callers holding a path. Throws kIo when unreadable.
std::vector<uint8_t> ReadBinaryFile(const std::string& path);

}  // namespace inlinescope

#endif  // INLINESCOPE_GROUND_TRUTH_H_
