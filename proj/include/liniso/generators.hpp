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

// Named Boolean functions. Throughout, -1 plays the role of "true".

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "liniso/f2.hpp"
#include "liniso/fourier.hpp"

namespace liniso {

inline BooleanFunction parity_function(unsigned n, Word s) {
  check_dim(n);
  if ((s & ~dim_mask(n)) != 0) throw std::invalid_argument("parity outside F_2^n");
  return BooleanFunction::from(n, [s](Word x) { return chi(s, x); });
}

// -1 exactly at the all-ones point.
inline BooleanFunction and_function(unsigned n) {
  check_dim(n);
  const Word all = dim_mask(n);
  return BooleanFunction::from(n, [all](Word x) { return x == all ? -1 : 1; });
}

// -1 where more than half of the coordinates are 1. Odd n only.
inline BooleanFunction majority_function(unsigned n) {
  check_dim(n);
  if (n % 2 == 0) throw std::invalid_argument("majority requires odd n");
  return BooleanFunction::from(n, [n](Word x) { return 2 * std::popcount(x) > static_cast<int>(n) ? -1 : 1; });
}

// -1 with probability `minus` at each point, independently.
inline BooleanFunction random_function(unsigned n, std::mt19937_64& rng, double minus = 0.5) {
  check_dim(n);
  std::bernoulli_distribution coin(minus);
  return BooleanFunction::from(n, [&](Word) { return coin(rng) ? -1 : 1; });
}

inline BooleanFunction random_function(unsigned n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_function(n, rng);
}

// Indicator of the Hamming ball of radius 1 around a: -1 iff |x xor a| <= 1.
inline BooleanFunction gen_ball(unsigned n, Word a = 0) {
  check_dim(n);
  if ((a & ~dim_mask(n)) != 0) throw std::invalid_argument("center outside F_2^n");
  return BooleanFunction::from(n, [a](Word x) { return std::popcount(x ^ a) <= 1 ? -1 : 1; });
}

// Uniform element of GL_n by rejection.
inline MatrixF2 random_invertible(unsigned n, std::mt19937_64& rng) {
  check_dim(n);
  std::uniform_int_distribution<Word> pick(0, dim_mask(n));
  for (;;) {
    MatrixF2 m(n);
    for (unsigned i = 0; i < n; ++i) m.set_row(i, pick(rng));
    if (is_invertible(m)) return m;
  }
}

inline std::uint64_t factorial(unsigned n) {
  std::uint64_t f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

struct BallMember {
  MatrixF2 matrix;
  BooleanFunction function;  // gen_ball(n) o matrix
};

// Number of distinct tables gen_ball(n) o M; the stabilizer is the n!
// permutation matrices.
inline std::uint64_t ball_family_size(unsigned n) {
  check_dim(n, kMaxEnumDim);
  return static_cast<std::uint64_t>(gl_order(n)) / factorial(n);
}

// The identity member first, then distinct random renamings.
inline std::vector<BallMember> gen_ball_family(unsigned n, std::size_t count, std::uint64_t seed) {
  if (n > kMaxEnumDim) throw std::domain_error("ball family refused for n = " + std::to_string(n));
  const std::uint64_t available = ball_family_size(n);
  if (count > available) {
    throw std::invalid_argument("requested " + std::to_string(count) + " members but only " +
                                std::to_string(available) + " distinct functions exist for n = " +
                                std::to_string(n));
  }
  const BooleanFunction ball = gen_ball(n);
  std::vector<BallMember> out;
  std::set<std::vector<std::int8_t>> seen;
  auto offer = [&](const MatrixF2& m) {
    BooleanFunction f = compose(ball, m);
    std::vector<std::int8_t> key(f.values().begin(), f.values().end());
    if (seen.insert(std::move(key)).second) out.push_back({m, std::move(f)});
  };
  if (count == 0) return out;
  offer(MatrixF2::identity(n));

  std::mt19937_64 rng(seed);
  if (2 * count > available) {
    // Dense request: collect every coset, then sample without replacement.
    std::vector<BallMember> all;
    std::set<std::vector<std::int8_t>> all_seen = seen;
    for (const MatrixF2& m : enumerate_gl(n)) {
      BooleanFunction f = compose(ball, m);
      std::vector<std::int8_t> key(f.values().begin(), f.values().end());
      if (all_seen.insert(std::move(key)).second) all.push_back({m, std::move(f)});
    }
    std::shuffle(all.begin(), all.end(), rng);
    for (auto& member : all) {
      if (out.size() == count) break;
      out.push_back(std::move(member));
    }
    return out;
  }
  while (out.size() < count) offer(random_invertible(n, rng));
  return out;
}

struct GeneratorSpec {
  enum class Kind { Parity, And, Majority, Random, Ball, BallFamily };
  Kind kind = Kind::Random;
  unsigned n = 1;
  Word parameter = 0;          // S for Parity, center a for Ball
  std::uint64_t seed = 0;      // Random
  std::optional<MatrixF2> matrix;  // BallFamily: the renaming M
};

inline BooleanFunction generate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorSpec::Kind::Parity: return parity_function(spec.n, spec.parameter);
    case GeneratorSpec::Kind::And: return and_function(spec.n);
    case GeneratorSpec::Kind::Majority: return majority_function(spec.n);
    case GeneratorSpec::Kind::Random: return random_function(spec.n, spec.seed);
    case GeneratorSpec::Kind::Ball: return gen_ball(spec.n, spec.parameter);
    case GeneratorSpec::Kind::BallFamily:
      return compose(gen_ball(spec.n), spec.matrix ? *spec.matrix : MatrixF2::identity(spec.n));
  }
  throw std::invalid_argument("unknown generator kind");
}

}  // namespace liniso
