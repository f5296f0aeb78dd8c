// Copyright (c) 2026 The cskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CSKIT_IO_HPP_
#define CSKIT_IO_HPP_

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "cskit/errors.hpp"

namespace cskit {

std::string read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, const std::string& bytes);

// Non-empty lines of a UTF-8 text file, '\n' or '\r\n' delimited.
std::vector<std::string> read_text_lines(const std::string& path);

// Little-endian scalar access into a byte buffer. All binary artifact
// formats in this toolkit are little-endian.
class ByteReader {
 public:
  explicit ByteReader(const std::string& bytes) : bytes_(bytes) {}

  size_t pos() const { return pos_; }
  size_t remaining() const { return bytes_.size() - pos_; }

  void expect_magic(const char magic[4], const std::string& what) {
    if (remaining() < 4 || std::memcmp(bytes_.data() + pos_, magic, 4) != 0) {
      throw ParseError(what + ": bad magic");
    }
    pos_ += 4;
  }

  uint16_t u16() { return static_cast<uint16_t>(raw_int(2)); }
  uint32_t u32() { return static_cast<uint32_t>(raw_int(4)); }
  uint64_t u64() { return raw_int(8); }

  float f32() {
    const uint32_t bits = u32();
    float out;
    std::memcpy(&out, &bits, 4);
    return out;
  }

  void read_into(void* dst, size_t n, const std::string& what) {
    if (remaining() < n) throw ParseError(what + ": truncated payload");
    std::memcpy(dst, bytes_.data() + pos_, n);
    pos_ += n;
  }

  std::string read_string(size_t n, const std::string& what) {
    if (remaining() < n) throw ParseError(what + ": truncated payload");
    std::string out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

 private:
  uint64_t raw_int(size_t n) {
    if (remaining() < n) throw ParseError("truncated header");
    uint64_t v = 0;
    for (size_t i = 0; i < n; ++i) {
      v |= static_cast<uint64_t>(static_cast<uint8_t>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += n;
    return v;
  }

  const std::string& bytes_;
  size_t pos_ = 0;
};

class ByteWriter {
 public:
  void magic(const char m[4]) { out_.append(m, 4); }

  void u16(uint16_t v) { raw_int(v, 2); }
  void u32(uint32_t v) { raw_int(v, 4); }
  void u64(uint64_t v) { raw_int(v, 8); }

  void f32(float v) {
    uint32_t bits;
    std::memcpy(&bits, &v, 4);
    u32(bits);
  }

  void bytes(const void* src, size_t n) {
    out_.append(static_cast<const char*>(src), n);
  }

  const std::string& str() const { return out_; }

 private:
  void raw_int(uint64_t v, size_t n) {
    for (size_t i = 0; i < n; ++i) {
      out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
  }

  std::string out_;
};

}  // namespace cskit

#endif  // CSKIT_IO_HPP_
