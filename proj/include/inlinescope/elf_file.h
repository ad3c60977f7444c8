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
// Minimal read-only view of a little-endian ELF image (32- and 64-bit
// classes): section headers by name and FUNC symbols from .symtab.

#ifndef INLINESCOPE_ELF_FILE_H_
#define INLINESCOPE_ELF_FILE_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace inlinescope {

struct ElfSection {
  std::string name;
  uint32_t type = 0;
  uint64_t flags = 0;
  uint64_t address = 0;
  uint64_t offset = 0;
  uint64_t size = 0;
  uint32_t link = 0;
  uint64_t entry_size = 0;
  // Empty for SHT_NOBITS.
  std::span<const uint8_t> data;
};

struct ElfSymbol {
  std::string name;
  uint64_t value = 0;
  uint64_t size = 0;
  uint8_t type = 0;     // STT_*
  uint8_t binding = 0;  // STB_*
  uint16_t section_index = 0;
};

inline constexpr uint8_t kSttFunc = 2;
inline constexpr uint64_t kShfCompressed = 0x800;

// Does not own the image: the span passed to Parse must outlive the ElfFile
// and anything derived from its section data.
class ElfFile {
 public:
  // Throws Error(kMalformedElf) for anything that is not a well-formed
  // little-endian ELF32/ELF64 image.
  static ElfFile Parse(std::span<const uint8_t> image);

  bool is_64bit() const { return is_64bit_; }
  uint16_t machine() const { return machine_; }
  uint16_t file_type() const { return file_type_; }
  // Size in bytes of a target address.
  uint8_t address_size() const { return is_64bit_ ? 8 : 4; }

  const std::vector<ElfSection>& sections() const { return sections_; }
  // First section with the given name, or nullptr.
  const ElfSection* FindSection(std::string_view name) const;

  // STT_FUNC symbols of .symtab (not .dynsym). Empty when the table was
  // stripped. Undefined symbols (section index 0) are skipped.
  std::vector<ElfSymbol> FunctionSymbols() const;

 private:
  ElfFile() = default;

  std::span<const uint8_t> image_;
  bool is_64bit_ = false;
  uint16_t machine_ = 0;
  uint16_t file_type_ = 0;
  std::vector<ElfSection> sections_;
};

}  // namespace inlinescope

#endif  // INLINESCOPE_ELF_FILE_H_
