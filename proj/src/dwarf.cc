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

#include "inlinescope/dwarf.h"

#include <algorithm>
#include <array>
#include <bit>
#include <sstream>

#include "inlinescope/byte_reader.h"
#include "inlinescope/error.h"

namespace inlinescope::dwarf {
namespace {

// Forms.
constexpr uint16_t kFormAddr = 0x01;
constexpr uint16_t kFormBlock2 = 0x03;
constexpr uint16_t kFormBlock4 = 0x04;
constexpr uint16_t kFormData2 = 0x05;
constexpr uint16_t kFormData4 = 0x06;
constexpr uint16_t kFormData8 = 0x07;
constexpr uint16_t kFormString = 0x08;
constexpr uint16_t kFormBlock = 0x09;
constexpr uint16_t kFormBlock1 = 0x0a;
constexpr uint16_t kFormData1 = 0x0b;
constexpr uint16_t kFormFlag = 0x0c;
constexpr uint16_t kFormSdata = 0x0d;
constexpr uint16_t kFormStrp = 0x0e;
constexpr uint16_t kFormUdata = 0x0f;
constexpr uint16_t kFormRefAddr = 0x10;
constexpr uint16_t kFormRef1 = 0x11;
constexpr uint16_t kFormRef2 = 0x12;
constexpr uint16_t kFormRef4 = 0x13;
constexpr uint16_t kFormRef8 = 0x14;
constexpr uint16_t kFormRefUdata = 0x15;
constexpr uint16_t kFormIndirect = 0x16;
constexpr uint16_t kFormSecOffset = 0x17;
constexpr uint16_t kFormExprloc = 0x18;
constexpr uint16_t kFormFlagPresent = 0x19;
constexpr uint16_t kFormStrx = 0x1a;
constexpr uint16_t kFormAddrx = 0x1b;
constexpr uint16_t kFormRefSup4 = 0x1c;
constexpr uint16_t kFormStrpSup = 0x1d;
constexpr uint16_t kFormData16 = 0x1e;
constexpr uint16_t kFormLineStrp = 0x1f;
constexpr uint16_t kFormRefSig8 = 0x20;
constexpr uint16_t kFormImplicitConst = 0x21;
constexpr uint16_t kFormLoclistx = 0x22;
constexpr uint16_t kFormRnglistx = 0x23;
constexpr uint16_t kFormRefSup8 = 0x24;
constexpr uint16_t kFormStrx1 = 0x25;
constexpr uint16_t kFormStrx2 = 0x26;
constexpr uint16_t kFormStrx3 = 0x27;
constexpr uint16_t kFormStrx4 = 0x28;
constexpr uint16_t kFormAddrx1 = 0x29;
constexpr uint16_t kFormAddrx2 = 0x2a;
constexpr uint16_t kFormAddrx3 = 0x2b;
constexpr uint16_t kFormAddrx4 = 0x2c;
constexpr uint16_t kFormGnuAddrIndex = 0x1f01;
constexpr uint16_t kFormGnuStrIndex = 0x1f02;
constexpr uint16_t kFormGnuRefAlt = 0x1f20;
constexpr uint16_t kFormGnuStrpAlt = 0x1f21;

// Unit types (v5).
constexpr uint8_t kUtCompile = 0x01;
constexpr uint8_t kUtType = 0x02;
constexpr uint8_t kUtSkeleton = 0x04;
constexpr uint8_t kUtSplitCompile = 0x05;
constexpr uint8_t kUtSplitType = 0x06;

// Line-table content types (v5).
constexpr uint64_t kLnctPath = 0x1;
constexpr uint64_t kLnctDirectoryIndex = 0x2;

// Range-list entries (v5).
constexpr uint8_t kRleEndOfList = 0x00;
constexpr uint8_t kRleBaseAddressx = 0x01;
constexpr uint8_t kRleStartxEndx = 0x02;
constexpr uint8_t kRleStartxLength = 0x03;
constexpr uint8_t kRleOffsetPair = 0x04;
constexpr uint8_t kRleBaseAddress = 0x05;
constexpr uint8_t kRleStartEnd = 0x06;
constexpr uint8_t kRleStartLength = 0x07;

constexpr std::array<uint16_t, 22> kRetainedAttributes = {
    kAtName,          kAtStmtList,       kAtLowPc,
    kAtHighPc,        kAtCompDir,        kAtInline,
    kAtAbstractOrigin, kAtArtificial,    kAtDeclFile,
    kAtDeclaration,   kAtExternal,       kAtSpecification,
    kAtRanges,        kAtCallColumn,     kAtCallFile,
    kAtCallLine,      kAtLinkageName,    kAtStrOffsetsBase,
    kAtAddrBase,      kAtRnglistsBase,   kAtMipsLinkageName,
    kAtGnuAddrBase,
};

bool Retained(uint16_t attribute) {
  return std::find(kRetainedAttributes.begin(), kRetainedAttributes.end(),
                   attribute) != kRetainedAttributes.end();
}

[[noreturn]] void Malformed(std::string_view section, uint64_t offset,
                            const std::string& what) {
  std::ostringstream out;
  out << what << " (" << section << " offset 0x" << std::hex << offset << ")";
  throw Error(ErrorCode::kMalformedDwarf, out.str());
}

struct AbbrevAttribute {
  uint16_t attribute;
  uint16_t form;
  int64_t implicit_const;
};

struct Abbrev {
  uint16_t tag = 0;
  bool has_children = false;
  std::vector<AbbrevAttribute> attributes;
};

using AbbrevTable = std::unordered_map<uint64_t, Abbrev>;

AbbrevTable ParseAbbrevTable(std::span<const uint8_t> section,
                             uint64_t offset) {
  if (offset >= section.size()) {
    Malformed(".debug_abbrev", offset, "abbreviation table offset out of range");
  }
  ByteReader reader(section, ErrorCode::kMalformedDwarf, offset);
  AbbrevTable table;
  while (true) {
    uint64_t code = reader.Uleb128();
    if (code == 0) break;
    Abbrev abbrev;
    abbrev.tag = static_cast<uint16_t>(reader.Uleb128());
    abbrev.has_children = reader.U8() != 0;
    while (true) {
      auto attribute = static_cast<uint16_t>(reader.Uleb128());
      auto form = static_cast<uint16_t>(reader.Uleb128());
      if (attribute == 0 && form == 0) break;
      int64_t implicit = form == kFormImplicitConst ? reader.Sleb128() : 0;
      abbrev.attributes.push_back({attribute, form, implicit});
    }
    table.emplace(code, std::move(abbrev));
  }
  return table;
}

std::span<const uint8_t> SectionData(const ElfFile& elf,
                                     std::string_view name) {
  const ElfSection* section = elf.FindSection(name);
  if (section == nullptr) return {};
  if (section->flags & kShfCompressed) {
    throw Error(ErrorCode::kMalformedDwarf,
                "compressed debug section " + std::string(name) +
                    " is not supported; decompress with objcopy "
                    "--decompress-debug-sections");
  }
  return section->data;
}

std::string JoinPath(std::string_view dir, std::string_view name) {
  if (dir.empty() || (!name.empty() && name.front() == '/')) {
    return std::string(name);
  }
  std::string path(dir);
  if (path.back() != '/') path.push_back('/');
  path.append(name);
  return path;
}

struct LineFormValue {
  uint64_t number = 0;
  std::optional<std::string_view> text;
};

}  // namespace

DwarfContext DwarfContext::Load(const ElfFile& elf) {
  DwarfContext context;
  Sections& s = context.sections_;
  s.info = SectionData(elf, ".debug_info");
  if (s.info.empty()) {
    throw Error(ErrorCode::kMissingDebugInfo,
                "no .debug_info section (was the binary built with -g?)");
  }
  s.abbrev = SectionData(elf, ".debug_abbrev");
  s.str = SectionData(elf, ".debug_str");
  s.line_str = SectionData(elf, ".debug_line_str");
  s.str_offsets = SectionData(elf, ".debug_str_offsets");
  s.addr = SectionData(elf, ".debug_addr");
  s.rnglists = SectionData(elf, ".debug_rnglists");
  s.ranges = SectionData(elf, ".debug_ranges");
  s.line = SectionData(elf, ".debug_line");
  context.ParseUnits();
  context.line_files_.reserve(context.units_.size());
  for (const Unit& unit : context.units_) {
    context.line_files_.push_back(context.ParseLineFiles(unit));
  }
  return context;
}

void DwarfContext::ParseUnits() {
  std::unordered_map<uint64_t, AbbrevTable> abbrev_cache;
  ByteReader reader(sections_.info, ErrorCode::kMalformedDwarf);

  while (!reader.AtEnd()) {
    Unit unit;
    unit.offset = reader.offset();
    uint64_t length = reader.U32();
    if (length == 0xffffffff) {
      length = reader.U64();
      unit.offset_size = 8;
    } else if (length >= 0xfffffff0) {
      Malformed(".debug_info", unit.offset, "reserved unit length");
    }
    if (length > reader.size() - reader.offset()) {
      Malformed(".debug_info", unit.offset, "unit length past end of section");
    }
    unit.end = reader.offset() + length;
    unit.version = reader.U16();
    if (unit.version < 2 || unit.version > 5) {
      Malformed(".debug_info", unit.offset,
                "unsupported DWARF version " + std::to_string(unit.version));
    }
    if (unit.version >= 5) {
      unit.unit_type = reader.U8();
      unit.address_size = reader.U8();
      unit.abbrev_offset = reader.Fixed(unit.offset_size);
      if (unit.unit_type == kUtType || unit.unit_type == kUtSplitType) {
        reader.Skip(8 + unit.offset_size);
      } else if (unit.unit_type == kUtSkeleton ||
                 unit.unit_type == kUtSplitCompile) {
        reader.Skip(8);
      }
    } else {
      unit.unit_type = kUtCompile;
      unit.abbrev_offset = reader.Fixed(unit.offset_size);
      unit.address_size = reader.U8();
    }
    if (unit.address_size != 4 && unit.address_size != 8) {
      Malformed(".debug_info", unit.offset, "unsupported address size");
    }

    auto cached = abbrev_cache.find(unit.abbrev_offset);
    if (cached == abbrev_cache.end()) {
      cached = abbrev_cache
                   .emplace(unit.abbrev_offset,
                            ParseAbbrevTable(sections_.abbrev,
                                             unit.abbrev_offset))
                   .first;
    }
    const AbbrevTable& abbrevs = cached->second;

    auto unit_index = static_cast<uint32_t>(units_.size());
    unit.first_die = dies_.size();
    std::vector<int64_t> parents;
    ByteReader body(sections_.info.first(unit.end), ErrorCode::kMalformedDwarf,
                    reader.offset());

    while (!body.AtEnd()) {
      uint64_t die_offset = body.offset();
      uint64_t code = body.Uleb128();
      if (code == 0) {
        if (!parents.empty()) parents.pop_back();
        continue;
      }
      auto found = abbrevs.find(code);
      if (found == abbrevs.end()) {
        Malformed(".debug_info", die_offset,
                  "unknown abbreviation code " + std::to_string(code));
      }
      const Abbrev& abbrev = found->second;
      Die die;
      die.offset = die_offset;
      die.tag = abbrev.tag;
      die.parent = parents.empty() ? -1 : parents.back();
      die.unit = unit_index;
      die.first_attribute = static_cast<uint32_t>(attributes_.size());

      for (const AbbrevAttribute& spec : abbrev.attributes) {
        AttributeValue value;
        value.attribute = spec.attribute;
        value.form = spec.form;
        while (value.form == kFormIndirect) {
          value.form = static_cast<uint16_t>(body.Uleb128());
        }
        switch (value.form) {
          case kFormAddr:
            value.raw = body.Fixed(unit.address_size);
            break;
          case kFormBlock1:
            body.Skip(body.U8());
            break;
          case kFormBlock2:
            body.Skip(body.U16());
            break;
          case kFormBlock4:
            body.Skip(body.U32());
            break;
          case kFormBlock:
          case kFormExprloc:
            body.Skip(body.Uleb128());
            break;
          case kFormData1:
          case kFormFlag:
          case kFormStrx1:
          case kFormAddrx1:
            value.raw = body.U8();
            break;
          case kFormData2:
          case kFormStrx2:
          case kFormAddrx2:
            value.raw = body.U16();
            break;
          case kFormStrx3:
          case kFormAddrx3:
            value.raw = body.U24();
            break;
          case kFormData4:
          case kFormStrx4:
          case kFormAddrx4:
          case kFormRefSup4:
            value.raw = body.U32();
            break;
          case kFormData8:
          case kFormRefSig8:
          case kFormRefSup8:
            value.raw = body.U64();
            break;
          case kFormData16:
            body.Skip(16);
            break;
          case kFormString:
            value.inline_string = body.CString();
            break;
          case kFormFlagPresent:
            value.raw = 1;
            break;
          case kFormSdata:
            value.raw = std::bit_cast<uint64_t>(body.Sleb128());
            break;
          case kFormUdata:
          case kFormStrx:
          case kFormAddrx:
          case kFormLoclistx:
          case kFormRnglistx:
          case kFormGnuAddrIndex:
          case kFormGnuStrIndex:
            value.raw = body.Uleb128();
            break;
          case kFormStrp:
          case kFormLineStrp:
          case kFormSecOffset:
          case kFormStrpSup:
          case kFormGnuRefAlt:
          case kFormGnuStrpAlt:
            value.raw = body.Fixed(unit.offset_size);
            break;
          case kFormRefAddr:
            value.raw = body.Fixed(unit.version <= 2 ? unit.address_size
                                                     : unit.offset_size);
            break;
          case kFormRef1:
            value.raw = unit.offset + body.U8();
            break;
          case kFormRef2:
            value.raw = unit.offset + body.U16();
            break;
          case kFormRef4:
            value.raw = unit.offset + body.U32();
            break;
          case kFormRef8:
            value.raw = unit.offset + body.U64();
            break;
          case kFormRefUdata:
            value.raw = unit.offset + body.Uleb128();
            break;
          case kFormImplicitConst:
            value.raw = std::bit_cast<uint64_t>(spec.implicit_const);
            break;
          default: {
            std::ostringstream what;
            what << "unknown attribute form 0x" << std::hex << value.form;
            Malformed(".debug_info", die_offset, what.str());
          }
        }
        if (Retained(value.attribute)) attributes_.push_back(value);
      }
      die.attribute_count = static_cast<uint16_t>(attributes_.size() -
                                                   die.first_attribute);
      offset_index_.emplace(die.offset, dies_.size());
      dies_.push_back(die);
      if (abbrev.has_children) {
        parents.push_back(static_cast<int64_t>(dies_.size() - 1));
      }
    }
    unit.die_count = dies_.size() - unit.first_die;
    units_.push_back(std::move(unit));
    reader.set_offset(units_.back().end);

    // Bases come from the unit DIE; they must be known before any of its
    // indirect attributes (including its own low_pc) can be resolved.
    Unit& stored = units_.back();
    if (stored.die_count == 0) continue;
    const Die& root = dies_[stored.first_die];
    for (uint16_t i = 0; i < root.attribute_count; ++i) {
      const AttributeValue& value = attributes_[root.first_attribute + i];
      switch (value.attribute) {
        case kAtStrOffsetsBase:
          stored.str_offsets_base = value.raw;
          break;
        case kAtAddrBase:
        case kAtGnuAddrBase:
          stored.addr_base = value.raw;
          break;
        case kAtRnglistsBase:
          stored.rnglists_base = value.raw;
          break;
        case kAtStmtList:
          stored.stmt_list = value.raw;
          break;
        default:
          break;
      }
    }
    stored.base_address = Address(root, kAtLowPc);
    if (auto dir = String(root, kAtCompDir)) stored.comp_dir = std::string(*dir);
  }
}

std::optional<size_t> DwarfContext::IndexOfOffset(uint64_t offset) const {
  auto found = offset_index_.find(offset);
  if (found == offset_index_.end()) return std::nullopt;
  return found->second;
}

const AttributeValue* DwarfContext::Find(const Die& die,
                                         uint16_t attribute) const {
  for (uint16_t i = 0; i < die.attribute_count; ++i) {
    const AttributeValue& value = attributes_[die.first_attribute + i];
    if (value.attribute == attribute) return &value;
  }
  return nullptr;
}

std::optional<std::string_view> DwarfContext::String(
    const Die& die, uint16_t attribute) const {
  const AttributeValue* value = Find(die, attribute);
  if (value == nullptr) return std::nullopt;
  const Unit& unit = units_[die.unit];
  auto read_at = [](std::span<const uint8_t> section, std::string_view name,
                    uint64_t offset) {
    if (offset >= section.size()) {
      Malformed(name, offset, "string offset out of range");
    }
    ByteReader reader(section, ErrorCode::kMalformedDwarf, offset);
    return reader.CString();
  };
  switch (value->form) {
    case kFormString:
      return value->inline_string;
    case kFormStrp:
      return read_at(sections_.str, ".debug_str", value->raw);
    case kFormLineStrp:
      return read_at(sections_.line_str, ".debug_line_str", value->raw);
    case kFormStrx:
    case kFormStrx1:
    case kFormStrx2:
    case kFormStrx3:
    case kFormStrx4:
    case kFormGnuStrIndex: {
      uint64_t base = unit.str_offsets_base.value_or(2 * unit.offset_size);
      ByteReader offsets(sections_.str_offsets, ErrorCode::kMalformedDwarf,
                         base + value->raw * unit.offset_size);
      return read_at(sections_.str, ".debug_str",
                     offsets.Fixed(unit.offset_size));
    }
    default:
      return std::nullopt;
  }
}

std::optional<uint64_t> DwarfContext::Constant(const Die& die,
                                               uint16_t attribute) const {
  const AttributeValue* value = Find(die, attribute);
  if (value == nullptr) return std::nullopt;
  switch (value->form) {
    case kFormData1:
    case kFormData2:
    case kFormData4:
    case kFormData8:
    case kFormUdata:
    case kFormSdata:
    case kFormImplicitConst:
      return value->raw;
    default:
      return std::nullopt;
  }
}

bool DwarfContext::Flag(const Die& die, uint16_t attribute) const {
  const AttributeValue* value = Find(die, attribute);
  if (value == nullptr) return false;
  if (value->form != kFormFlag && value->form != kFormFlagPresent) return false;
  return value->raw != 0;
}

std::optional<uint64_t> DwarfContext::Reference(const Die& die,
                                                uint16_t attribute) const {
  const AttributeValue* value = Find(die, attribute);
  if (value == nullptr) return std::nullopt;
  switch (value->form) {
    case kFormRef1:
    case kFormRef2:
    case kFormRef4:
    case kFormRef8:
    case kFormRefUdata:
    case kFormRefAddr:
      return value->raw;
    default:
      return std::nullopt;
  }
}

uint64_t DwarfContext::ResolveAddressIndex(const Unit& unit,
                                           uint64_t index) const {
  uint64_t base = unit.addr_base.value_or(8);
  ByteReader reader(sections_.addr, ErrorCode::kMalformedDwarf,
                    base + index * unit.address_size);
  return reader.Fixed(unit.address_size);
}

std::optional<uint64_t> DwarfContext::Address(const Die& die,
                                              uint16_t attribute) const {
  const AttributeValue* value = Find(die, attribute);
  if (value == nullptr) return std::nullopt;
  switch (value->form) {
    case kFormAddr:
      return value->raw;
    case kFormAddrx:
    case kFormAddrx1:
    case kFormAddrx2:
    case kFormAddrx3:
    case kFormAddrx4:
    case kFormGnuAddrIndex:
      return ResolveAddressIndex(units_[die.unit], value->raw);
    default:
      return std::nullopt;
  }
}

std::vector<AddressRange> DwarfContext::Ranges(const Die& die) const {
  std::vector<AddressRange> ranges;
  const Unit& unit = units_[die.unit];
  auto add = [&ranges](uint64_t low, uint64_t high) {
    if (low < high) ranges.push_back({low, high});
  };

  const AttributeValue* list = Find(die, kAtRanges);
  if (list == nullptr) {
    if (auto low = Address(die, kAtLowPc)) {
      if (auto absolute = Address(die, kAtHighPc)) {
        add(*low, *absolute);
      } else if (auto length = Constant(die, kAtHighPc)) {
        add(*low, *low + *length);
      }
    }
    return ranges;
  }

  uint64_t base = unit.base_address.value_or(0);
  uint64_t max_address =
      unit.address_size == 8 ? ~uint64_t{0} : uint64_t{0xffffffff};

  if (unit.version < 5) {
    ByteReader reader(sections_.ranges, ErrorCode::kMalformedDwarf,
                      list->raw);
    while (true) {
      uint64_t begin = reader.Fixed(unit.address_size);
      uint64_t end = reader.Fixed(unit.address_size);
      if (begin == 0 && end == 0) break;
      if (begin == max_address) {
        base = end;
        continue;
      }
      add(base + begin, base + end);
    }
    return ranges;
  }

  uint64_t offset = list->raw;
  if (list->form == kFormRnglistx) {
    uint64_t table = unit.rnglists_base.value_or(unit.offset_size == 8 ? 20 : 12);
    ByteReader index(sections_.rnglists, ErrorCode::kMalformedDwarf,
                     table + list->raw * unit.offset_size);
    offset = table + index.Fixed(unit.offset_size);
  }
  ByteReader reader(sections_.rnglists, ErrorCode::kMalformedDwarf, offset);
  while (true) {
    uint8_t kind = reader.U8();
    if (kind == kRleEndOfList) break;
    switch (kind) {
      case kRleBaseAddressx:
        base = ResolveAddressIndex(unit, reader.Uleb128());
        break;
      case kRleStartxEndx: {
        uint64_t begin = ResolveAddressIndex(unit, reader.Uleb128());
        uint64_t end = ResolveAddressIndex(unit, reader.Uleb128());
        add(begin, end);
        break;
      }
      case kRleStartxLength: {
        uint64_t begin = ResolveAddressIndex(unit, reader.Uleb128());
        add(begin, begin + reader.Uleb128());
        break;
      }
      case kRleOffsetPair: {
        uint64_t begin = reader.Uleb128();
        uint64_t end = reader.Uleb128();
        add(base + begin, base + end);
        break;
      }
      case kRleBaseAddress:
        base = reader.Fixed(unit.address_size);
        break;
      case kRleStartEnd: {
        uint64_t begin = reader.Fixed(unit.address_size);
        add(begin, reader.Fixed(unit.address_size));
        break;
      }
      case kRleStartLength: {
        uint64_t begin = reader.Fixed(unit.address_size);
        add(begin, begin + reader.Uleb128());
        break;
      }
      default:
        Malformed(".debug_rnglists", reader.offset() - 1,
                  "unknown range list entry kind " + std::to_string(kind));
    }
  }
  return ranges;
}

DwarfContext::LineFiles DwarfContext::ParseLineFiles(const Unit& unit) const {
  LineFiles files;
  if (!unit.stmt_list || sections_.line.empty()) return files;
  ByteReader reader(sections_.line, ErrorCode::kMalformedDwarf,
                    *unit.stmt_list);
  uint8_t offset_size = 4;
  uint64_t length = reader.U32();
  if (length == 0xffffffff) {
    length = reader.U64();
    offset_size = 8;
  }
  uint16_t version = reader.U16();
  if (version < 2 || version > 5) {
    Malformed(".debug_line", *unit.stmt_list,
              "unsupported line table version " + std::to_string(version));
  }
  if (version >= 5) {
    reader.U8();  // address_size
    reader.U8();  // segment_selector_size
  }
  reader.Fixed(offset_size);  // header_length
  reader.U8();                // minimum_instruction_length
  if (version >= 4) reader.U8();  // maximum_operations_per_instruction
  reader.U8();                    // default_is_stmt
  reader.U8();                    // line_base
  reader.U8();                    // line_range
  uint8_t opcode_base = reader.U8();
  if (opcode_base > 0) reader.Skip(opcode_base - 1);

  if (version < 5) {
    std::vector<std::string_view> directories;
    while (true) {
      std::string_view dir = reader.CString();
      if (dir.empty()) break;
      directories.push_back(dir);
    }
    while (true) {
      std::string_view name = reader.CString();
      if (name.empty()) break;
      uint64_t dir_index = reader.Uleb128();
      reader.Uleb128();  // mtime
      reader.Uleb128();  // length
      std::string dir;
      if (dir_index == 0) {
        dir = unit.comp_dir;
      } else if (dir_index <= directories.size()) {
        dir = JoinPath(unit.comp_dir, directories[dir_index - 1]);
      }
      files.paths.push_back(JoinPath(dir, name));
    }
    return files;
  }

  files.zero_based = true;
  auto read_value = [&](uint64_t form) {
    LineFormValue value;
    switch (form) {
      case kFormString:
        value.text = reader.CString();
        break;
      case kFormLineStrp:
      case kFormStrp: {
        uint64_t offset = reader.Fixed(offset_size);
        auto section = form == kFormLineStrp ? sections_.line_str : sections_.str;
        ByteReader strings(section, ErrorCode::kMalformedDwarf, offset);
        value.text = strings.CString();
        break;
      }
      case kFormStrx:
      case kFormStrx1:
      case kFormStrx2:
      case kFormStrx3:
      case kFormStrx4: {
        uint64_t index = form == kFormStrx   ? reader.Uleb128()
                         : form == kFormStrx1 ? reader.U8()
                         : form == kFormStrx2 ? reader.U16()
                         : form == kFormStrx3 ? reader.U24()
                                              : reader.U32();
        uint64_t base = unit.str_offsets_base.value_or(2 * unit.offset_size);
        ByteReader offsets(sections_.str_offsets, ErrorCode::kMalformedDwarf,
                           base + index * unit.offset_size);
        ByteReader strings(sections_.str, ErrorCode::kMalformedDwarf,
                           offsets.Fixed(unit.offset_size));
        value.text = strings.CString();
        break;
      }
      case kFormUdata:
        value.number = reader.Uleb128();
        break;
      case kFormData1:
        value.number = reader.U8();
        break;
      case kFormData2:
        value.number = reader.U16();
        break;
      case kFormData4:
        value.number = reader.U32();
        break;
      case kFormData8:
        value.number = reader.U64();
        break;
      case kFormData16:
        reader.Skip(16);
        break;
      case kFormBlock:
        reader.Skip(reader.Uleb128());
        break;
      default:
        Malformed(".debug_line", reader.offset(),
                  "unsupported line table entry form " + std::to_string(form));
    }
    return value;
  };
  auto read_formats = [&]() {
    std::vector<std::pair<uint64_t, uint64_t>> formats;
    uint8_t count = reader.U8();
    for (uint8_t i = 0; i < count; ++i) {
      uint64_t content = reader.Uleb128();
      uint64_t form = reader.Uleb128();
      formats.emplace_back(content, form);
    }
    return formats;
  };

  std::vector<std::string> directories;
  auto dir_formats = read_formats();
  uint64_t dir_count = reader.Uleb128();
  for (uint64_t i = 0; i < dir_count; ++i) {
    std::string dir;
    for (const auto& [content, form] : dir_formats) {
      LineFormValue value = read_value(form);
      if (content == kLnctPath && value.text) dir = std::string(*value.text);
    }
    directories.push_back(std::move(dir));
  }
  auto file_formats = read_formats();
  uint64_t file_count = reader.Uleb128();
  for (uint64_t i = 0; i < file_count; ++i) {
    std::string_view name;
    uint64_t dir_index = 0;
    for (const auto& [content, form] : file_formats) {
      LineFormValue value = read_value(form);
      if (content == kLnctPath && value.text) name = *value.text;
      if (content == kLnctDirectoryIndex) dir_index = value.number;
    }
    std::string dir;
    if (dir_index < directories.size()) {
      dir = directories[dir_index];
      if (dir_index != 0 && !directories.empty()) {
        dir = JoinPath(directories[0], dir);
      }
    }
    files.paths.push_back(JoinPath(dir, name));
  }
  return files;
}

std::optional<std::string> DwarfContext::FileName(const Die& die,
                                                  uint16_t attribute) const {
  auto index = Constant(die, attribute);
  if (!index) return std::nullopt;
  const LineFiles& files = line_files_[die.unit];
  if (files.zero_based) {
    if (*index >= files.paths.size()) return std::nullopt;
    return files.paths[*index];
  }
  if (*index == 0 || *index > files.paths.size()) return std::nullopt;
  return files.paths[*index - 1];
}

}  // namespace inlinescope::dwarf
