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

#ifndef INLINESCOPE_BYTE_READER_H_
#define INLINESCOPE_BYTE_READER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "inlinescope/error.h"

namespace inlinescope {

// Little-endian cursor over a byte span. Every read is bounds-checked; an
// overrun throws Error(overrun_code) naming the offending offset.
class ByteReader {
 public:
  ByteReader(std::span<const uint8_t> data, ErrorCode overrun_code,
             size_t offset = 0)
      : data_(data), offset_(offset), overrun_code_(overrun_code) {}

  size_t offset() const { return offset_; }
  void set_offset(size_t offset) { offset_ = offset; }
  size_t size() const { return data_.size(); }
  bool AtEnd() const { return offset_ >= data_.size(); }
  std::span<const uint8_t> data() const { return data_; }

  uint8_t U8() { return static_cast<uint8_t>(Fixed(1)); }
  uint16_t U16() { return static_cast<uint16_t>(Fixed(2)); }
  uint32_t U24() { return static_cast<uint32_t>(Fixed(3)); }
  uint32_t U32() { return static_cast<uint32_t>(Fixed(4)); }
  uint64_t U64() { return Fixed(8); }

  // Reads an unsigned little-endian integer of 1..8 bytes.
  uint64_t Fixed(size_t width);
  uint64_t Uleb128();
  int64_t Sleb128();
  // NUL-terminated string; the view aliases the underlying data.
  std::string_view CString();
  std::span<const uint8_t> Bytes(size_t count);
  void Skip(size_t count);

  [[noreturn]] void Fail(const std::string& what) const;

 private:
  void Require(size_t count) const;

  std::span<const uint8_t> data_;
  size_t offset_;
  ErrorCode overrun_code_;
};

}  // namespace inlinescope

#endif  // INLINESCOPE_BYTE_READER_H_
