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
// Static features of a binary computed from a textual disassembly listing
// (objdump -d style). Instruction categories, a per-function CFG with
// dominator-based natural loops, and a call graph over the whole listing feed
// a fixed 62-slot feature vector described in REGISTRY.md.

#ifndef INLINESCOPE_FEATURES_H_
#define INLINESCOPE_FEATURES_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace inlinescope {

enum class Arch : uint8_t { kX86_64, kArm32 };

struct Instruction {
  uint64_t address = 0;
  uint32_t byte_size = 0;
  std::string mnemonic;  // prefixes kept, e.g. "rep stos"
  std::string operand_text;
  std::optional<uint64_t> explicit_branch_target;
  std::string target_symbol;  // "name" from "<name+0x10>", empty if none
  bool is_call = false;
  bool is_return = false;
  bool is_conditional = false;
  bool is_jump = false;  // any non-call transfer: jmp, jcc, b, bx reg
  bool is_indirect = false;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

struct ListingFunction {
  std::string name;
  uint64_t start_address = 0;
  std::vector<Instruction> instructions;

  // One past the last instruction byte.
  uint64_t end_address() const;

  friend bool operator==(const ListingFunction&, const ListingFunction&) = default;
};

struct Listing {
  Arch arch = Arch::kX86_64;
  std::vector<ListingFunction> functions;
};

// Line grammar: "<hex> <name>:" starts a function, "<hex>:\t<bytes>\t<insn>"
// is an instruction, a line with bytes but no mnemonic continues the previous
// instruction. Blank lines, "Disassembly of section" and "file format" lines
// are skipped; the latter also selects the architecture. Anything else throws
// Error(kListingSyntax) naming the line.
Listing ParseListing(std::string_view text);

enum class Category : uint8_t {
  kDataTransfer,
  kArithmetic,
  kLogic,
  kShift,
  kCompare,
  kControlTransfer,
  kCall,
  kReturn,
  kFloatingPoint,
  kVector,
  kStringOp,
  kMisc,
  kUnknown,
};
inline constexpr int kCategoryCount = 13;

std::string_view CategoryName(Category category);

// Total: mnemonics outside the registry map to kUnknown. AT&T size suffixes
// and lock/notrack/bnd prefixes are ignored; rep-prefixed string operations
// are kStringOp.
Category CategorizeInstruction(std::string_view mnemonic,
                               Arch arch = Arch::kX86_64);

struct BasicBlock {
  size_t first = 0;  // instruction index range [first, last)
  size_t last = 0;
  std::vector<size_t> successors;
  std::vector<size_t> predecessors;

  size_t size() const { return last - first; }
};

struct Cfg {
  std::vector<BasicBlock> blocks;  // blocks[0] is the entry
  size_t edge_count = 0;
  // DanglingTarget diagnostics; the offending edge is dropped.
  std::vector<std::string> warnings;
};

Cfg BuildCfg(const ListingFunction& function, Arch arch = Arch::kX86_64);

// Makes a CFG from block sizes and an edge list, for tests and synthetic
// inputs. Duplicate edges are collapsed.
Cfg MakeCfg(const std::vector<size_t>& block_sizes,
            const std::vector<std::pair<size_t, size_t>>& edges);

struct Loop {
  size_t header = 0;
  std::vector<size_t> blocks;  // sorted, header included
  size_t back_edges = 0;
  uint64_t size = 0;  // instructions in the body
  size_t depth = 1;   // 1 for outermost

  friend bool operator==(const Loop&, const Loop&) = default;
};

// idom[b] for blocks reachable from the entry; nullopt for unreachable ones
// and for the entry itself.
std::vector<std::optional<size_t>> ImmediateDominators(const Cfg& cfg);

// Natural loops, one per header, sorted by header. Unreachable blocks never
// take part.
std::vector<Loop> DetectLoops(const Cfg& cfg);

inline constexpr int kFeatureCount = 62;
inline constexpr std::string_view kRegistryVersion = "1";

enum class SlotGroup : uint8_t { kInstruction, kCfg, kCallGraph };
// How the __binary__ row combines per-function values. kWeightedMean slots
// are a ratio of two kSum slots; the aggregate is the ratio of the aggregated
// sums, i.e. the per-function ratios weighted by their denominators.
enum class Aggregation : uint8_t { kSum, kWeightedMean, kMax };

struct FeatureSlot {
  int index = 0;  // 1-based
  std::string_view name;
  SlotGroup group = SlotGroup::kInstruction;
  Aggregation aggregation = Aggregation::kSum;
  std::optional<Category> category;  // set for the 13 category-count slots
  bool paper_anchored = false;
  std::string_view definition;
  int numerator = 0;  // slot indices, set for kWeightedMean slots
  int denominator = 0;
};

const std::array<FeatureSlot, kFeatureCount>& FeatureRegistry();
std::string_view SlotGroupName(SlotGroup group);

struct FeatureVector {
  std::array<double, kFeatureCount> values{};  // values[i] is slot i + 1
  std::string registry_version{kRegistryVersion};

  double slot(int index) const { return values.at(index - 1); }
  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

struct FeatureTable {
  std::string registry_version{kRegistryVersion};
  std::map<std::string, FeatureVector> functions;
  FeatureVector binary;
  std::vector<std::string> warnings;
};

// Throws Error(kUnknownRegistryVersion) unless `registry_version` is known.
FeatureTable ExtractFeatures(const Listing& listing,
                             std::string_view registry_version = kRegistryVersion);

// "# registry_version=1", then "function,f1,...,f62", one row per function
// in name order, and the __binary__ row last.
std::string FeaturesToCsv(const FeatureTable& table);
FeatureTable FeaturesFromCsv(std::string_view text);

// The REGISTRY.md table body, one "| index | name | group | aggregation |
// anchored | definition |" row per slot.
std::string RegistryMarkdownRows();

}  // namespace inlinescope

#endif  // INLINESCOPE_FEATURES_H_
