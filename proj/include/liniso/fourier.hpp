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

// Boolean functions F_2^n -> {-1,+1}, their exact Fourier spectra, and the
// distances built on top of them (Hamming, linear, affine).
//
// Spectra are kept as integers scaled by 2^n, so Parseval and the
// correlation/distance identity hold as exact integer equalities.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "liniso/f2.hpp"

namespace liniso {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

inline std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// chi_S(x) = (-1)^{<S,x>}
inline int chi(Word s, Word x) noexcept { return 1 - 2 * parity(s & x); }

inline int chi(const VectorF2& s, const VectorF2& x) { return 1 - 2 * inner(s, x); }

namespace detail {

// In-place unnormalized Walsh-Hadamard butterfly: v[S] <- sum_x v[x] chi_S(x).
template <typename T>
void butterfly(std::span<T> v) {
  for (std::size_t len = 1; len < v.size(); len <<= 1) {
    for (std::size_t i = 0; i < v.size(); i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        const T a = v[j];
        const T b = v[j + len];
        v[j] = a + b;
        v[j + len] = a - b;
      }
    }
  }
}

}  // namespace detail

class BooleanFunction {
 public:
  BooleanFunction(unsigned n, std::vector<std::int8_t> table) : n_(n), table_(std::move(table)) {
    check_dim(n);
    if (table_.size() != (std::size_t{1} << n)) {
      throw std::invalid_argument("truth table length must be 2^n");
    }
    for (const auto v : table_) {
      if (v != 1 && v != -1) throw std::invalid_argument("truth table entries must be +1 or -1");
    }
  }

  static BooleanFunction constant(unsigned n, int value) {
    check_dim(n);
    return BooleanFunction(n, std::vector<std::int8_t>(std::size_t{1} << n,
                                                       static_cast<std::int8_t>(value)));
  }

  // Builds the table from a callable Word -> int returning +1 or -1.
  template <typename F>
  static BooleanFunction from(unsigned n, F&& fn) {
    check_dim(n);
    std::vector<std::int8_t> t(std::size_t{1} << n);
    for (std::size_t x = 0; x < t.size(); ++x) {
      t[x] = static_cast<std::int8_t>(fn(static_cast<Word>(x)));
    }
    return BooleanFunction(n, std::move(t));
  }

  unsigned dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return table_.size(); }
  int operator()(Word x) const noexcept { return table_[x]; }
  std::span<const std::int8_t> values() const noexcept { return table_; }

  BooleanFunction operator-() const {
    std::vector<std::int8_t> t(table_);
    for (auto& v : t) v = static_cast<std::int8_t>(-v);
    return BooleanFunction(n_, std::move(t));
  }

  // Flips the value at x.
  void flip(Word x) { table_.at(x) = static_cast<std::int8_t>(-table_.at(x)); }

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

 private:
  unsigned n_;
  std::vector<std::int8_t> table_;
};

// coeffs[S] = 2^n * fhat(S).
class Spectrum {
 public:
  Spectrum(unsigned n, std::vector<std::int64_t> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
    check_dim(n);
    if (coeffs_.size() != (std::size_t{1} << n)) {
      throw std::invalid_argument("spectrum length must be 2^n");
    }
  }

  unsigned dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  std::int64_t scaled(Word s) const noexcept { return coeffs_[s]; }
  std::span<const std::int64_t> scaled() const noexcept { return coeffs_; }
  std::int64_t scale() const noexcept { return std::int64_t{1} << n_; }

  Rational coefficient(Word s) const { return Rational(coeffs_.at(s), scale()); }
  double value(Word s) const { return static_cast<double>(coeffs_[s]) / scale(); }

 private:
  unsigned n_;
  std::vector<std::int64_t> coeffs_;
};

// Real-valued function given by a sparse Fourier expansion.
class RealFunction {
 public:
  explicit RealFunction(unsigned n) : n_(n) { check_dim(n); }

  unsigned dim() const noexcept { return n_; }
  const std::map<Word, double>& coefficients() const noexcept { return coeffs_; }

  double coefficient(Word s) const {
    const auto it = coeffs_.find(s);
    return it == coeffs_.end() ? 0.0 : it->second;
  }

  void set(Word s, double c) {
    if ((s & ~dim_mask(n_)) != 0) throw std::invalid_argument("parity outside F_2^n");
    if (c == 0.0) {
      coeffs_.erase(s);
    } else {
      coeffs_[s] = c;
    }
  }

  double operator()(Word x) const {
    double v = 0.0;
    for (const auto& [s, c] : coeffs_) v += c * chi(s, x);
    return v;
  }

  double spectral_norm() const {
    double total = 0.0;
    for (const auto& [s, c] : coeffs_) total += std::abs(c);
    return total;
  }

  // Values at all 2^n points.
  std::vector<double> evaluate_all() const {
    std::vector<double> dense(std::size_t{1} << n_, 0.0);
    for (const auto& [s, c] : coeffs_) dense[s] = c;
    detail::butterfly(std::span<double>(dense));
    return dense;
  }

 private:
  unsigned n_;
  std::map<Word, double> coeffs_;
};

inline Spectrum wht(const BooleanFunction& f) {
  std::vector<std::int64_t> c(f.values().begin(), f.values().end());
  detail::butterfly(std::span<std::int64_t>(c));
  return Spectrum(f.dim(), std::move(c));
}

// Returns nullopt when the spectrum does not come from a +-1 table.
inline std::optional<BooleanFunction> inverse_wht(const Spectrum& s) {
  std::vector<std::int64_t> v(s.scaled().begin(), s.scaled().end());
  detail::butterfly(std::span<std::int64_t>(v));
  const std::int64_t scale = s.scale();
  std::vector<std::int8_t> t(v.size());
  for (std::size_t x = 0; x < v.size(); ++x) {
    if (v[x] == scale) {
      t[x] = 1;
    } else if (v[x] == -scale) {
      t[x] = -1;
    } else {
      return std::nullopt;
    }
  }
  return BooleanFunction(s.dim(), std::move(t));
}

inline Rational spectral_norm(const Spectrum& s) {
  std::int64_t total = 0;
  for (const auto c : s.scaled()) total += c < 0 ? -c : c;
  return Rational(total, s.scale());
}

inline void check_same_dim(unsigned a, unsigned b) {
  if (a != b) throw std::invalid_argument("dimension mismatch");
}

inline std::int64_t disagreements(const BooleanFunction& f, const BooleanFunction& g) {
  check_same_dim(f.dim(), g.dim());
  std::int64_t d = 0;
  for (std::size_t x = 0; x < f.size(); ++x) d += f.values()[x] != g.values()[x];
  return d;
}

inline Rational hamming_distance(const BooleanFunction& f, const BooleanFunction& g) {
  return Rational(disagreements(f, g), static_cast<std::int64_t>(f.size()));
}

// sum_S fhat(S) ghat(S), exactly.
inline Rational correlation_via_spectrum(const Spectrum& sf, const Spectrum& sg) {
  check_same_dim(sf.dim(), sg.dim());
  std::int64_t total = 0;
  for (std::size_t s = 0; s < sf.size(); ++s) total += sf.scaled()[s] * sg.scaled()[s];
  return Rational(total, sf.scale() * sf.scale());
}

// (f o M)(x) = f(Mx).
inline BooleanFunction compose(const BooleanFunction& f, const MatrixF2& m) {
  check_same_dim(f.dim(), m.dim());
  if (!is_invertible(m)) throw std::invalid_argument("compose: matrix is not invertible");
  const auto img = m.image_table();
  std::vector<std::int8_t> t(f.size());
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = f.values()[img[x]];
  return BooleanFunction(f.dim(), std::move(t));
}

// x -> f(x xor a).
inline BooleanFunction shift(const BooleanFunction& f, Word a) {
  if ((a & ~dim_mask(f.dim())) != 0) throw std::invalid_argument("shift outside F_2^n");
  return BooleanFunction::from(f.dim(), [&](Word x) { return f(x ^ a); });
}

struct LinearDistance {
  Rational distance;
  MatrixF2 matrix;  // first minimizer in enumeration order
};

struct AffineDistance {
  Rational distance;
  MatrixF2 matrix;
  Word shift = 0;
};

// min over M in GL_n of delta(f o M, g). Refuses n > 5.
inline LinearDistance linear_distance(const BooleanFunction& f, const BooleanFunction& g) {
  check_same_dim(f.dim(), g.dim());
  const unsigned n = f.dim();
  const auto fv = f.values();
  const auto gv = g.values();
  const std::size_t size = f.size();

  std::int64_t best = static_cast<std::int64_t>(size) + 1;
  MatrixF2 best_m = MatrixF2::identity(n);
  std::vector<Word> img(size);
  for (const MatrixF2& m : enumerate_gl(n)) {
    std::array<Word, kMaxDim> cols{};
    for (unsigned j = 0; j < n; ++j) cols[j] = m.column(j);
    std::int64_t d = fv[0] != gv[0];
    for (std::size_t x = 1; x < size && d < best; ++x) {
      img[x] = img[x & (x - 1)] ^ cols[std::countr_zero(x)];
      d += fv[img[x]] != gv[x];
    }
    if (d < best) {
      best = d;
      best_m = m;
      if (best == 0) break;
    }
  }
  return {Rational(best, static_cast<std::int64_t>(size)), best_m};
}

inline constexpr unsigned kMaxAffineDim = 4;

// min over (M, a) of delta(x -> f(Mx xor a), g). Refuses n > 4.
inline AffineDistance affine_distance(const BooleanFunction& f, const BooleanFunction& g) {
  check_same_dim(f.dim(), g.dim());
  const unsigned n = f.dim();
  if (n > kMaxAffineDim) {
    throw std::domain_error("affine distance refused for n = " + std::to_string(n) +
                            " (supported: 1.." + std::to_string(kMaxAffineDim) + ")");
  }
  const std::size_t size = f.size();
  std::int64_t best = static_cast<std::int64_t>(size) + 1;
  AffineDistance out{Rational(0), MatrixF2::identity(n), 0};
  for (const MatrixF2& m : enumerate_gl(n)) {
    const auto img = m.image_table();
    for (Word a = 0; a < size; ++a) {
      std::int64_t d = 0;
      for (std::size_t x = 0; x < size && d < best; ++x) {
        d += f.values()[img[x] ^ a] != g.values()[x];
      }
      if (d < best) {
        best = d;
        out.matrix = m;
        out.shift = a;
        if (best == 0) {
          out.distance = Rational(0);
          return out;
        }
      }
    }
  }
  out.distance = Rational(best, static_cast<std::int64_t>(size));
  return out;
}

// sign(p(x)) with sign(0) = +1.
inline BooleanFunction sign_function(const RealFunction& p) {
  const auto values = p.evaluate_all();
  std::vector<std::int8_t> t(values.size());
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = values[x] < 0.0 ? -1 : 1;
  return BooleanFunction(p.dim(), std::move(t));
}

// Exact sign of an integer-weighted sum of parities, weights[S] for each S.
inline BooleanFunction sign_of_weights(unsigned n, std::vector<std::int64_t> weights) {
  if (weights.size() != (std::size_t{1} << n)) throw std::invalid_argument("weights length");
  detail::butterfly(std::span<std::int64_t>(weights));
  std::vector<std::int8_t> t(weights.size());
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = weights[x] < 0 ? -1 : 1;
  return BooleanFunction(n, std::move(t));
}

}  // namespace liniso
