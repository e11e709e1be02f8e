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

// Linear algebra over F_2 for dimensions up to 16.
//
// A vector x in F_2^n is packed into the low n bits of a word: coordinate
// x_{i+1} lives in bit i. Matrices are stored row-major, one word per row,
// so (Mx)_i = <row_i(M), x> is a single AND + parity.

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace liniso {

using Word = std::uint32_t;

inline constexpr unsigned kMaxDim = 16;
// Exhaustive GL_n enumeration is capped here: |GL_5| = 9999360.
inline constexpr unsigned kMaxEnumDim = 5;

inline int parity(Word x) noexcept { return std::popcount(x) & 1; }

inline Word dim_mask(unsigned n) noexcept {
  return n >= 32 ? ~Word{0} : (Word{1} << n) - 1;
}

inline void check_dim(unsigned n, unsigned cap = kMaxDim) {
  if (n < 1 || n > cap) {
    throw std::invalid_argument("dimension " + std::to_string(n) +
                                " outside [1, " + std::to_string(cap) + "]");
  }
}

class VectorF2 {
 public:
  VectorF2(unsigned n, Word bits) : n_(n), bits_(bits) {
    check_dim(n);
    if ((bits & ~dim_mask(n)) != 0) {
      throw std::invalid_argument("vector has bits above its dimension");
    }
  }

  static VectorF2 zero(unsigned n) { return VectorF2(n, 0); }
  // e_{i+1} in the 1-indexed notation; i is 0-indexed here.
  static VectorF2 unit(unsigned n, unsigned i) {
    if (i >= n) throw std::invalid_argument("unit vector index out of range");
    return VectorF2(n, Word{1} << i);
  }

  unsigned dim() const noexcept { return n_; }
  Word bits() const noexcept { return bits_; }
  bool operator[](unsigned i) const noexcept { return (bits_ >> i) & 1U; }
  int weight() const noexcept { return std::popcount(bits_); }

  VectorF2 operator^(const VectorF2& o) const {
    if (o.n_ != n_) throw std::invalid_argument("vector dimension mismatch");
    return VectorF2(n_, bits_ ^ o.bits_);
  }

  friend bool operator==(const VectorF2&, const VectorF2&) = default;

 private:
  unsigned n_;
  Word bits_;
};

inline int inner(const VectorF2& a, const VectorF2& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("vector dimension mismatch");
  return parity(a.bits() & b.bits());
}

class MatrixF2 {
 public:
  explicit MatrixF2(unsigned n) : n_(n) { check_dim(n); }

  static MatrixF2 identity(unsigned n) {
    MatrixF2 m(n);
    for (unsigned i = 0; i < n; ++i) m.rows_[i] = Word{1} << i;
    return m;
  }

  static MatrixF2 from_rows(unsigned n, std::span<const Word> rows) {
    if (rows.size() != n) throw std::invalid_argument("matrix must be square");
    MatrixF2 m(n);
    for (unsigned i = 0; i < n && i < kMaxDim; ++i) m.set_row(i, rows[i]);
    return m;
  }

  // Matrix whose j-th column is cols[j].
  static MatrixF2 from_columns(unsigned n, std::span<const Word> cols) {
    return from_rows(n, cols).transpose();
  }

  unsigned dim() const noexcept { return n_; }
  Word row(unsigned i) const noexcept { return rows_[i]; }
  void set_row(unsigned i, Word r) {
    if (i >= n_ || (r & ~dim_mask(n_)) != 0) {
      throw std::invalid_argument("row out of range");
    }
    rows_[i] = r;
  }
  bool at(unsigned i, unsigned j) const noexcept { return (rows_[i] >> j) & 1U; }
  void set(unsigned i, unsigned j, bool v) {
    set_row(i, v ? (rows_[i] | (Word{1} << j)) : (rows_[i] & ~(Word{1} << j)));
  }

  Word column(unsigned j) const noexcept {
    Word c = 0;
    for (unsigned i = 0; i < n_; ++i) c |= ((rows_[i] >> j) & 1U) << i;
    return c;
  }

  MatrixF2 transpose() const {
    MatrixF2 t(n_);
    for (unsigned j = 0; j < n_; ++j) t.rows_[j] = column(j);
    return t;
  }

  // Unchecked M x on packed words.
  Word apply(Word x) const noexcept {
    Word r = 0;
    for (unsigned i = 0; i < n_; ++i) r |= Word(parity(rows_[i] & x)) << i;
    return r;
  }

  // Table of M x for every x in F_2^n, built from the columns.
  std::vector<Word> image_table() const {
    std::vector<Word> img(std::size_t{1} << n_);
    std::array<Word, kMaxDim> cols{};
    for (unsigned j = 0; j < n_; ++j) cols[j] = column(j);
    for (std::size_t x = 1; x < img.size(); ++x) {
      img[x] = img[x & (x - 1)] ^ cols[std::countr_zero(x)];
    }
    return img;
  }

  friend MatrixF2 operator*(const MatrixF2& a, const MatrixF2& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("matrix dimension mismatch");
    // row_i(AB) = sum over k with A[i,k] = 1 of row_k(B).
    MatrixF2 c(a.n_);
    for (unsigned i = 0; i < a.n_; ++i) {
      Word r = 0;
      for (Word bits = a.rows_[i]; bits != 0; bits &= bits - 1) {
        r ^= b.rows_[std::countr_zero(bits)];
      }
      c.rows_[i] = r;
    }
    return c;
  }

  friend bool operator==(const MatrixF2& a, const MatrixF2& b) {
    return a.n_ == b.n_ && a.rows_ == b.rows_;
  }

 private:
  unsigned n_;
  std::array<Word, kMaxDim> rows_{};
};

inline VectorF2 mat_vec_mul(const MatrixF2& m, const VectorF2& x) {
  if (m.dim() != x.dim()) throw std::invalid_argument("matrix/vector dimension mismatch");
  return VectorF2(m.dim(), m.apply(x.bits()));
}

// Row rank of a list of packed vectors.
inline unsigned rank_of(std::span<const Word> vectors) {
  std::array<Word, 32> basis{};  // basis[b] has leading bit b
  unsigned r = 0;
  for (Word v : vectors) {
    while (v != 0) {
      const unsigned lead = 31 - std::countl_zero(v);
      if (basis[lead] == 0) {
        basis[lead] = v;
        ++r;
        break;
      }
      v ^= basis[lead];
    }
  }
  return r;
}

inline unsigned rank(const MatrixF2& m) {
  std::array<Word, kMaxDim> rows{};
  for (unsigned i = 0; i < m.dim(); ++i) rows[i] = m.row(i);
  return rank_of(std::span<const Word>(rows.data(), m.dim()));
}

inline bool is_invertible(const MatrixF2& m) { return rank(m) == m.dim(); }

inline std::optional<MatrixF2> invert(const MatrixF2& m) {
  const unsigned n = m.dim();
  std::array<Word, kMaxDim> a{};
  std::array<Word, kMaxDim> inv{};
  for (unsigned i = 0; i < n; ++i) {
    a[i] = m.row(i);
    inv[i] = Word{1} << i;
  }
  for (unsigned col = 0; col < n; ++col) {
    unsigned piv = col;
    while (piv < n && !((a[piv] >> col) & 1U)) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    for (unsigned i = 0; i < n; ++i) {
      if (i != col && ((a[i] >> col) & 1U)) {
        a[i] ^= a[col];
        inv[i] ^= inv[col];
      }
    }
  }
  return MatrixF2::from_rows(n, std::span<const Word>(inv.data(), n));
}

// |GL_n(F_2)| = prod_{i<n} (2^n - 2^i).
inline boost::multiprecision::cpp_int gl_order(unsigned n) {
  check_dim(n);
  using boost::multiprecision::cpp_int;
  const cpp_int full = cpp_int(1) << n;
  cpp_int order = 1;
  for (unsigned i = 0; i < n; ++i) order *= full - (cpp_int(1) << i);
  return order;
}

// Enumerates GL_n(F_2) row by row: row i ranges over the nonzero words not in
// the span of rows 0..i-1, in increasing order. The resulting sequence is
// lexicographic in (row_0, ..., row_{n-1}). Each range owns its cursor, so
// independent traversals never interfere.
class GlRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = MatrixF2;
    using difference_type = std::ptrdiff_t;
    using pointer = const MatrixF2*;
    using reference = const MatrixF2&;

    iterator() : current_(1), done_(true) {}

    explicit iterator(unsigned n) : n_(n), current_(n), done_(false) {
      spans_[0] = 1;  // {0}
      fill_from(0);
      sync();
    }

    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }

    iterator& operator++() {
      advance();
      return *this;
    }
    void operator++(int) { advance(); }

    friend bool operator==(const iterator& a, const iterator& b) {
      return a.done_ && b.done_;
    }

   private:
    static std::uint64_t extend(std::uint64_t span, Word v) {
      std::uint64_t out = span;
      for (std::uint64_t bits = span; bits != 0; bits &= bits - 1) {
        out |= std::uint64_t{1} << (std::countr_zero(bits) ^ v);
      }
      return out;
    }

    // Smallest admissible word > from at level i, or 0 if none.
    Word next_candidate(unsigned i, Word from) const {
      const Word limit = Word{1} << n_;
      for (Word v = from + 1; v < limit; ++v) {
        if (!((spans_[i] >> v) & 1U)) return v;
      }
      return 0;
    }

    void fill_from(unsigned level) {
      for (unsigned i = level; i < n_; ++i) {
        rows_[i] = next_candidate(i, 0);
        spans_[i + 1] = extend(spans_[i], rows_[i]);
      }
    }

    void advance() {
      unsigned i = n_;
      while (i > 0) {
        --i;
        const Word v = next_candidate(i, rows_[i]);
        if (v != 0) {
          rows_[i] = v;
          spans_[i + 1] = extend(spans_[i], v);
          fill_from(i + 1);
          sync();
          return;
        }
      }
      done_ = true;
    }

    void sync() {
      for (unsigned i = 0; i < n_; ++i) current_.set_row(i, rows_[i]);
    }

    unsigned n_ = 1;
    std::array<Word, kMaxEnumDim> rows_{};
    std::array<std::uint64_t, kMaxEnumDim + 1> spans_{};
    MatrixF2 current_;
    bool done_;
  };

  explicit GlRange(unsigned n) : n_(n) {}
  iterator begin() const { return iterator(n_); }
  iterator end() const { return iterator(); }

 private:
  unsigned n_;
};

inline GlRange enumerate_gl(unsigned n) {
  if (n < 1 || n > kMaxEnumDim) {
    throw std::domain_error("GL_n enumeration refused for n = " + std::to_string(n) +
                            " (supported: 1.." + std::to_string(kMaxEnumDim) + ")");
  }
  return GlRange(n);
}

struct BasisCompletion {
  MatrixF2 transform;               // N with N * b_i = e_i
  std::vector<std::size_t> pivots;  // input positions of b_1..b_rank
  unsigned rank = 0;
};

// Picks the Gaussian-elimination pivots of `vectors` in input order as
// b_1..b_l, extends them with unit vectors to a basis of F_2^n, and returns
// the inverse of the basis matrix.
inline BasisCompletion complete_basis(unsigned n, std::span<const Word> vectors) {
  check_dim(n);
  std::array<Word, 32> reduced{};  // keyed by leading bit
  std::array<Word, kMaxDim> chosen{};
  unsigned count = 0;
  std::vector<std::size_t> pivots;

  auto try_add = [&](Word v) {
    Word r = v;
    while (r != 0) {
      const unsigned lead = 31 - std::countl_zero(r);
      if (reduced[lead] == 0) {
        reduced[lead] = r;
        chosen[count++] = v;
        return true;
      }
      r ^= reduced[lead];
    }
    return false;
  };

  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if ((vectors[i] & ~dim_mask(n)) != 0) {
      throw std::invalid_argument("vector has bits above its dimension");
    }
    if (count < n && try_add(vectors[i])) pivots.push_back(i);
  }
  const unsigned r = count;
  for (unsigned j = 0; j < n && count < n; ++j) try_add(Word{1} << j);

  const MatrixF2 basis = MatrixF2::from_columns(n, std::span<const Word>(chosen.data(), n));
  return BasisCompletion{*invert(basis), std::move(pivots), r};
}

// Matrix text format: n lines of n characters '0'/'1', row-major; character j
// of line i is M[i][j].
inline MatrixF2 parse_matrix(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    lines.push_back(line);
  }
  const unsigned n = static_cast<unsigned>(lines.size());
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("matrix: bad number of rows");
  MatrixF2 m(n);
  for (unsigned i = 0; i < n; ++i) {
    if (lines[i].size() != n) {
      throw std::invalid_argument("matrix: line " + std::to_string(i + 1) + " has length " +
                                  std::to_string(lines[i].size()) + ", expected " +
                                  std::to_string(n));
    }
    for (unsigned j = 0; j < n; ++j) {
      const char c = lines[i][j];
      if (c != '0' && c != '1') {
        throw std::invalid_argument("matrix: illegal character at line " +
                                    std::to_string(i + 1) + ", column " + std::to_string(j + 1));
      }
      m.set(i, j, c == '1');
    }
  }
  return m;
}

inline std::string format_matrix(const MatrixF2& m) {
  std::string out;
  for (unsigned i = 0; i < m.dim(); ++i) {
    for (unsigned j = 0; j < m.dim(); ++j) out += m.at(i, j) ? '1' : '0';
    out += '\n';
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const MatrixF2& m) {
  return os << format_matrix(m);
}

}  // namespace liniso
