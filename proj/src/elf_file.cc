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

#include "inlinescope/elf_file.h"

#include "inlinescope/byte_reader.h"
#include "inlinescope/error.h"

namespace inlinescope {
namespace {

constexpr uint32_t kShtSymtab = 2;
constexpr uint32_t kShtNobits = 8;
constexpr uint8_t kElfClass32 = 1;
constexpr uint8_t kElfClass64 = 2;
constexpr uint8_t kElfData2Lsb = 1;

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedElf, what);
}

std::span<const uint8_t> Slice(std::span<const uint8_t> image, uint64_t offset,
                               uint64_t size, const std::string& what) {
  if (offset > image.size() || image.size() - offset < size) {
    Malformed(what + " extends past end of file");
  }
  return image.subspan(offset, size);
}

std::string_view StringAt(std::span<const uint8_t> table, uint64_t offset) {
  if (offset >= table.size()) Malformed("string table offset out of range");
  ByteReader reader(table, ErrorCode::kMalformedElf, offset);
  return reader.CString();
}

}  // namespace

ElfFile ElfFile::Parse(std::span<const uint8_t> image) {
  if (image.size() < 16 || image[0] != 0x7f || image[1] != 'E' ||
      image[2] != 'L' || image[3] != 'F') {
    Malformed("missing ELF magic");
  }
  if (image[5] != kElfData2Lsb) Malformed("only little-endian ELF is supported");

  ElfFile elf;
  elf.image_ = image;
  if (image[4] == kElfClass64) {
    elf.is_64bit_ = true;
  } else if (image[4] != kElfClass32) {
    Malformed("unknown ELF class");
  }

  ByteReader header(image, ErrorCode::kMalformedElf, 16);
  elf.file_type_ = header.U16();
  elf.machine_ = header.U16();
  header.U32();  // e_version
  uint64_t section_offset = 0;
  if (elf.is_64bit_) {
    header.U64();  // e_entry
    header.U64();  // e_phoff
    section_offset = header.U64();
  } else {
    header.U32();
    header.U32();
    section_offset = header.U32();
  }
  header.U32();  // e_flags
  header.U16();  // e_ehsize
  header.U16();  // e_phentsize
  header.U16();  // e_phnum
  uint16_t section_entry_size = header.U16();
  uint64_t section_count = header.U16();
  uint32_t names_index = header.U16();

  if (section_offset == 0) return elf;
  size_t expected_entry = elf.is_64bit_ ? 64 : 40;
  if (section_entry_size < expected_entry) Malformed("bad e_shentsize");

  // Extended numbering: the real counts live in section header 0.
  ByteReader first(image, ErrorCode::kMalformedElf, section_offset);
  if (section_count == 0 || names_index == 0xffff) {
    first.Skip(elf.is_64bit_ ? 32 : 20);
    uint64_t size0 = elf.is_64bit_ ? first.U64() : first.U32();
    uint32_t link0 = first.U32();
    if (section_count == 0) section_count = size0;
    if (names_index == 0xffff) names_index = link0;
  }
  Slice(image, section_offset, section_count * section_entry_size,
        "section header table");

  elf.sections_.reserve(section_count);
  std::vector<uint32_t> name_offsets;
  name_offsets.reserve(section_count);
  for (uint64_t i = 0; i < section_count; ++i) {
    ByteReader entry(image, ErrorCode::kMalformedElf,
                     section_offset + i * section_entry_size);
    ElfSection section;
    uint32_t name_offset = entry.U32();
    section.type = entry.U32();
    if (elf.is_64bit_) {
      section.flags = entry.U64();
      section.address = entry.U64();
      section.offset = entry.U64();
      section.size = entry.U64();
      section.link = entry.U32();
      entry.U32();  // sh_info
      entry.U64();  // sh_addralign
      section.entry_size = entry.U64();
    } else {
      section.flags = entry.U32();
      section.address = entry.U32();
      section.offset = entry.U32();
      section.size = entry.U32();
      section.link = entry.U32();
      entry.U32();
      entry.U32();
      section.entry_size = entry.U32();
    }
    if (section.type != kShtNobits && section.type != 0) {
      section.data = Slice(image, section.offset, section.size,
                           "section " + std::to_string(i));
    }
    name_offsets.push_back(name_offset);
    elf.sections_.push_back(std::move(section));
  }

  if (names_index >= elf.sections_.size()) Malformed("bad e_shstrndx");
  std::span<const uint8_t> names = elf.sections_[names_index].data;
  if (!names.empty()) {
    for (size_t i = 0; i < elf.sections_.size(); ++i) {
      elf.sections_[i].name = std::string(StringAt(names, name_offsets[i]));
    }
  }
  return elf;
}

const ElfSection* ElfFile::FindSection(std::string_view name) const {
  for (const ElfSection& section : sections_) {
    if (section.name == name) return &section;
  }
  return nullptr;
}

std::vector<ElfSymbol> ElfFile::FunctionSymbols() const {
  std::vector<ElfSymbol> symbols;
  for (const ElfSection& section : sections_) {
    if (section.type != kShtSymtab) continue;
    if (section.link >= sections_.size()) Malformed("symtab sh_link out of range");
    std::span<const uint8_t> strings = sections_[section.link].data;
    size_t entry_size = is_64bit_ ? 24 : 16;
    if (section.entry_size != 0 && section.entry_size < entry_size) {
      Malformed("bad symtab entry size");
    }
    if (section.entry_size != 0) entry_size = section.entry_size;
    size_t count = section.data.size() / entry_size;
    for (size_t i = 1; i < count; ++i) {
      ByteReader entry(section.data, ErrorCode::kMalformedElf, i * entry_size);
      ElfSymbol symbol;
      uint32_t name_offset = entry.U32();
      uint8_t info = 0;
      if (is_64bit_) {
        info = entry.U8();
        entry.U8();  // st_other
        symbol.section_index = entry.U16();
        symbol.value = entry.U64();
        symbol.size = entry.U64();
      } else {
        symbol.value = entry.U32();
        symbol.size = entry.U32();
        info = entry.U8();
        entry.U8();
        symbol.section_index = entry.U16();
      }
      symbol.type = info & 0xf;
      symbol.binding = info >> 4;
      if (symbol.type != kSttFunc || symbol.section_index == 0) continue;
      symbol.name = std::string(StringAt(strings, name_offset));
      symbols.push_back(std::move(symbol));
    }
  }
  return symbols;
}

}  // namespace inlinescope
