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

#include "inlinescope/byte_reader.h"

#include <cstring>
#include <sstream>

namespace inlinescope {

void ByteReader::Fail(const std::string& what) const {
  std::ostringstream out;
  out << what << " at offset 0x" << std::hex << offset_;
  throw Error(overrun_code_, out.str());
}

void ByteReader::Require(size_t count) const {
  if (offset_ > data_.size() || data_.size() - offset_ < count) {
    Fail("read of " + std::to_string(count) + " bytes past end");
  }
}

uint64_t ByteReader::Fixed(size_t width) {
  Require(width);
  uint64_t value = 0;
  for (size_t i = 0; i < width; ++i) {
    value |= static_cast<uint64_t>(data_[offset_ + i]) << (8 * i);
  }
  offset_ += width;
  return value;
}

uint64_t ByteReader::Uleb128() {
  uint64_t result = 0;
  unsigned shift = 0;
  while (true) {
    uint8_t byte = U8();
    if (shift < 64) result |= static_cast<uint64_t>(byte & 0x7f) << shift;
    shift += 7;
    if ((byte & 0x80) == 0) break;
  }
  return result;
}

int64_t ByteReader::Sleb128() {
  int64_t result = 0;
  unsigned shift = 0;
  uint8_t byte = 0;
  do {
    byte = U8();
    if (shift < 64) result |= static_cast<int64_t>(byte & 0x7f) << shift;
    shift += 7;
  } while (byte & 0x80);
  if (shift < 64 && (byte & 0x40)) result |= -(static_cast<int64_t>(1) << shift);
  return result;
}

std::string_view ByteReader::CString() {
  Require(1);
  const void* start = data_.data() + offset_;
  const void* nul = std::memchr(start, 0, data_.size() - offset_);
  if (nul == nullptr) Fail("unterminated string");
  size_t length = static_cast<const uint8_t*>(nul) - data_.data() - offset_;
  std::string_view text(reinterpret_cast<const char*>(start), length);
  offset_ += length + 1;
  return text;
}

std::span<const uint8_t> ByteReader::Bytes(size_t count) {
  Require(count);
  auto bytes = data_.subspan(offset_, count);
  offset_ += count;
  return bytes;
}

void ByteReader::Skip(size_t count) {
  Require(count);
  offset_ += count;
}

}  // namespace inlinescope
