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

// Function files:
//
//   n=<int>
//   <2^n characters from {'+', '-'}>
//
// Character i is the value at the point with integer encoding i. A trailing
// newline is optional; '\r' before a newline is ignored.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "liniso/fourier.hpp"

namespace liniso {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

inline BooleanFunction parse_function(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty() && lines.size() > 2) lines.pop_back();
  if (lines.empty()) throw ParseError(1, 1, "missing header 'n=<int>'");

  const std::string& header = lines[0];
  if (header.rfind("n=", 0) != 0) throw ParseError(1, 1, "header must start with 'n='");
  if (header.size() == 2) throw ParseError(1, 3, "missing dimension");
  unsigned n = 0;
  for (std::size_t i = 2; i < header.size(); ++i) {
    const char c = header[i];
    if (c < '0' || c > '9') throw ParseError(1, i + 1, std::string("unexpected character '") + c + "' in dimension");
    n = n * 10 + static_cast<unsigned>(c - '0');
    if (n > kMaxDim) throw ParseError(1, i + 1, "dimension exceeds " + std::to_string(kMaxDim));
  }
  if (n < 1) throw ParseError(1, 3, "dimension must be at least 1");

  if (lines.size() < 2) throw ParseError(2, 1, "missing truth table");
  if (lines.size() > 2) throw ParseError(3, 1, "unexpected content after truth table");
  const std::string& body = lines[1];
  const std::size_t expected = std::size_t{1} << n;
  std::vector<std::int8_t> table;
  table.reserve(expected);
  for (std::size_t i = 0; i < body.size(); ++i) {
    const char c = body[i];
    if (c != '+' && c != '-') throw ParseError(2, i + 1, std::string("illegal character '") + c + "'");
    if (i >= expected) throw ParseError(2, i + 1, "table longer than 2^n = " + std::to_string(expected));
    table.push_back(c == '+' ? 1 : -1);
  }
  if (table.size() != expected) {
    throw ParseError(2, body.size() + 1,
                     "table has " + std::to_string(table.size()) + " entries, expected 2^n = " + std::to_string(expected));
  }
  return BooleanFunction(n, std::move(table));
}

inline BooleanFunction parse_function(const std::string& text) {
  std::istringstream in(text);
  return parse_function(in);
}

inline std::string format_function(const BooleanFunction& f) {
  std::string out = "n=" + std::to_string(f.dim()) + "\n";
  out.reserve(out.size() + f.size() + 1);
  for (const auto v : f.values()) out += v > 0 ? '+' : '-';
  out += '\n';
  return out;
}

inline BooleanFunction parse_function_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_function(in);
}

inline void write_function_file(const BooleanFunction& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << format_function(f);
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace liniso
