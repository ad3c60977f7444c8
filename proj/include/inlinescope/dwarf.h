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
// A DWARF v2-v5 .debug_info reader sized for inlining analysis. It decodes
// every unit and DIE so that offsets and the parent chain are exact, but it
// only retains the attributes listed in kRetainedAttributes. Values that go
// through an indirection (strx, addrx, rnglistx, line-table file indices) are
// stored raw and resolved on access against their unit.

#ifndef INLINESCOPE_DWARF_H_
#define INLINESCOPE_DWARF_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "inlinescope/elf_file.h"

namespace inlinescope::dwarf {

// Tags.
inline constexpr uint16_t kTagInlinedSubroutine = 0x1d;
inline constexpr uint16_t kTagCompileUnit = 0x11;
inline constexpr uint16_t kTagSubprogram = 0x2e;

// Attributes.
inline constexpr uint16_t kAtStmtList = 0x10;
inline constexpr uint16_t kAtLowPc = 0x11;
inline constexpr uint16_t kAtHighPc = 0x12;
inline constexpr uint16_t kAtName = 0x03;
inline constexpr uint16_t kAtCompDir = 0x1b;
inline constexpr uint16_t kAtInline = 0x20;
inline constexpr uint16_t kAtAbstractOrigin = 0x31;
inline constexpr uint16_t kAtArtificial = 0x34;
inline constexpr uint16_t kAtDeclFile = 0x3a;
inline constexpr uint16_t kAtDeclaration = 0x3c;
inline constexpr uint16_t kAtExternal = 0x3f;
inline constexpr uint16_t kAtSpecification = 0x47;
inline constexpr uint16_t kAtRanges = 0x55;
inline constexpr uint16_t kAtCallColumn = 0x57;
inline constexpr uint16_t kAtCallFile = 0x58;
inline constexpr uint16_t kAtCallLine = 0x59;
inline constexpr uint16_t kAtLinkageName = 0x6e;
inline constexpr uint16_t kAtStrOffsetsBase = 0x72;
inline constexpr uint16_t kAtAddrBase = 0x73;
inline constexpr uint16_t kAtRnglistsBase = 0x74;
inline constexpr uint16_t kAtMipsLinkageName = 0x2007;
inline constexpr uint16_t kAtGnuRangesBase = 0x2132;
inline constexpr uint16_t kAtGnuAddrBase = 0x2133;

struct AttributeValue {
  uint16_t attribute = 0;
  uint16_t form = 0;
  // Constant, offset, index, address, or flag payload depending on form.
  uint64_t raw = 0;
  // DW_FORM_string payload.
  std::string_view inline_string;
};

struct Unit {
  uint64_t offset = 0;  // of the unit header in .debug_info
  uint64_t end = 0;
  uint16_t version = 0;
  uint8_t unit_type = 0;
  uint8_t address_size = 8;
  uint8_t offset_size = 4;
  uint64_t abbrev_offset = 0;
  std::optional<uint64_t> str_offsets_base;
  std::optional<uint64_t> addr_base;
  std::optional<uint64_t> rnglists_base;
  std::optional<uint64_t> base_address;
  std::optional<uint64_t> stmt_list;
  std::string comp_dir;
  size_t first_die = 0;
  size_t die_count = 0;
};

struct Die {
  uint64_t offset = 0;
  uint16_t tag = 0;
  int64_t parent = -1;  // index into DwarfContext::dies(), -1 for roots
  uint32_t unit = 0;
  uint32_t first_attribute = 0;
  uint16_t attribute_count = 0;
};

struct AddressRange {
  uint64_t low = 0;
  uint64_t high = 0;
  friend bool operator==(const AddressRange&, const AddressRange&) = default;
};

class DwarfContext {
 public:
  // Throws Error(kMissingDebugInfo) when .debug_info is absent or empty and
  // Error(kMalformedDwarf) on any decoding failure; the message carries the
  // .debug_info (or auxiliary section) offset that failed.
  static DwarfContext Load(const ElfFile& elf);

  const std::vector<Unit>& units() const { return units_; }
  const std::vector<Die>& dies() const { return dies_; }

  // Index of the DIE that starts exactly at a .debug_info offset.
  std::optional<size_t> IndexOfOffset(uint64_t offset) const;

  const AttributeValue* Find(const Die& die, uint16_t attribute) const;
  bool Has(const Die& die, uint16_t attribute) const {
    return Find(die, attribute) != nullptr;
  }

  // Typed accessors; nullopt when the attribute is absent or of an
  // unsuitable form. Indirect forms are resolved against the DIE's unit.
  std::optional<std::string_view> String(const Die& die,
                                         uint16_t attribute) const;
  std::optional<uint64_t> Constant(const Die& die, uint16_t attribute) const;
  bool Flag(const Die& die, uint16_t attribute) const;
  // Absolute .debug_info offset for reference-class attributes.
  std::optional<uint64_t> Reference(const Die& die, uint16_t attribute) const;
  std::optional<uint64_t> Address(const Die& die, uint16_t attribute) const;
  // Non-empty [low, high) ranges from low_pc/high_pc or DW_AT_ranges.
  std::vector<AddressRange> Ranges(const Die& die) const;
  // Path of a line-table file index held in decl_file / call_file.
  std::optional<std::string> FileName(const Die& die, uint16_t attribute) const;

 private:
  struct Sections {
    std::span<const uint8_t> info, abbrev, str, line_str, str_offsets, addr,
        rnglists, ranges, line;
  };
  struct LineFiles {
    bool zero_based = false;
    std::vector<std::string> paths;
  };

  DwarfContext() = default;
  void ParseUnits();
  LineFiles ParseLineFiles(const Unit& unit) const;
  uint64_t ResolveAddressIndex(const Unit& unit, uint64_t index) const;

  Sections sections_;
  std::vector<Unit> units_;
  std::vector<Die> dies_;
  std::vector<AttributeValue> attributes_;
  std::unordered_map<uint64_t, size_t> offset_index_;
  std::vector<LineFiles> line_files_;  // parallel to units_
};

}  // namespace inlinescope::dwarf

#endif  // INLINESCOPE_DWARF_H_
