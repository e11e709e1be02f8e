// Copyright 2026 The liniso Authors.
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

#pragma once

// Bit strings and the Elias-gamma code used for protocol messages.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace liniso {

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BitString {
 public:
  BitString() = default;

  static BitString parse(std::string_view text) {
    BitString out;
    for (const char c : text) {
      if (c != '0' && c != '1') throw std::invalid_argument("bit string must contain only 0/1");
      out.push_back(c == '1');
    }
    return out;
  }

  void push_back(bool b) { bits_.push_back(b); }

  void append(const BitString& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
  }

  // Low `width` bits of v, least significant first.
  void append_lsb_first(std::uint64_t v, unsigned width) {
    for (unsigned i = 0; i < width; ++i) bits_.push_back((v >> i) & 1U);
  }

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i]; }

  BitString prefix(std::size_t len) const {
    BitString out;
    out.bits_.assign(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(std::min(len, size())));
    return out;
  }

  std::string to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (const bool b : bits_) s += b ? '1' : '0';
    return s;
  }

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<bool> bits_;
};

// Elias gamma: floor(log2 k) zeros, then k in binary (most significant first).
inline BitString elias_gamma(std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("Elias gamma encodes positive integers only");
  const unsigned width = static_cast<unsigned>(std::bit_width(k));
  BitString out;
  for (unsigned i = 1; i < width; ++i) out.push_back(false);
  for (unsigned i = width; i-- > 0;) out.push_back((k >> i) & 1U);
  return out;
}

class BitReader {
 public:
  explicit BitReader(const BitString& bits) : bits_(bits) {}

  bool read_bit() {
    if (pos_ >= bits_.size()) throw DecodeError("unexpected end of payload at bit " + std::to_string(pos_));
    return bits_[pos_++];
  }

  std::uint64_t read_lsb_first(unsigned width) {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) v |= std::uint64_t{read_bit()} << i;
    return v;
  }

  std::uint64_t read_gamma() {
    unsigned zeros = 0;
    while (!read_bit()) {
      if (++zeros > 63) throw DecodeError("Elias gamma prefix too long");
    }
    std::uint64_t v = 1;
    for (unsigned i = 0; i < zeros; ++i) v = (v << 1) | std::uint64_t{read_bit()};
    return v;
  }

  std::size_t position() const noexcept { return pos_; }
  bool at_end() const noexcept { return pos_ == bits_.size(); }

 private:
  const BitString& bits_;
  std::size_t pos_ = 0;
};

inline std::uint64_t elias_gamma_decode(const BitString& bits) {
  BitReader r(bits);
  const auto v = r.read_gamma();
  if (!r.at_end()) throw DecodeError("trailing bits after Elias gamma code");
  return v;
}

}  // namespace liniso
