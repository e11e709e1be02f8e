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

// Promise pairs for tolerant testing, each certified by the exact linear
// distance: Close means delta_L <= epsilon, Far means delta_L >= epsilon + omega.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "liniso/f2.hpp"
#include "liniso/fourier.hpp"
#include "liniso/generators.hpp"

namespace liniso {

enum class PromiseSide { Close, Far };

inline const char* to_string(PromiseSide s) { return s == PromiseSide::Close ? "Close" : "Far"; }

struct PromisePair {
  BooleanFunction f;
  BooleanFunction g;
  double epsilon = 0.0;
  double omega = 0.0;
  PromiseSide side = PromiseSide::Close;
  Rational certified_distance{0};
};

inline constexpr unsigned kMaxCorpusDim = 4;
inline constexpr std::size_t kMaxFarDraws = 1000;

// Recomputes delta_L in both argument orders and checks the promise.
inline bool verify_certificate(const PromisePair& p) {
  const Rational forward = linear_distance(p.f, p.g).distance;
  const Rational backward = linear_distance(p.g, p.f).distance;
  if (forward != p.certified_distance || backward != forward) return false;
  const double d = to_double(forward);
  return p.side == PromiseSide::Close ? d <= p.epsilon + 1e-12 : d >= p.epsilon + p.omega - 1e-12;
}

namespace detail {

// f: a biased random table, or a renamed structured function, possibly negated.
inline BooleanFunction draw_corpus_function(unsigned n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 5);
  BooleanFunction f = BooleanFunction::constant(n, 1);
  switch (kind(rng)) {
    case 0:
    case 1: {
      std::uniform_real_distribution<double> bias(0.0, 0.5);
      f = random_function(n, rng, bias(rng));
      break;
    }
    case 2: {
      std::uniform_int_distribution<Word> s(1, dim_mask(n));
      f = parity_function(n, s(rng));
      break;
    }
    case 3: f = and_function(n); break;
    case 4: f = gen_ball(n); break;
    default: f = BooleanFunction::constant(n, 1); break;
  }
  f = compose(f, random_invertible(n, rng));
  return std::bernoulli_distribution(0.5)(rng) ? -f : f;
}

// Candidate far partner: uniform, biased, negated-and-renamed, or structured.
inline BooleanFunction draw_partner(const BooleanFunction& f, std::mt19937_64& rng) {
  const unsigned n = f.dim();
  std::uniform_int_distribution<int> kind(0, 3);
  switch (kind(rng)) {
    case 0: return random_function(n, rng);
    case 1: {
      std::uniform_real_distribution<double> bias(0.5, 1.0);
      return random_function(n, rng, bias(rng));
    }
    case 2: {
      BooleanFunction g = -compose(f, random_invertible(n, rng));
      std::uniform_int_distribution<Word> point(0, dim_mask(n));
      const int flips = std::uniform_int_distribution<int>(0, 2)(rng);
      for (int i = 0; i < flips; ++i) g.flip(point(rng));
      return g;
    }
    default: return draw_corpus_function(n, rng);
  }
}

}  // namespace detail

// `per_side` Close pairs followed by `per_side` Far pairs.
inline std::vector<PromisePair> build_promise_corpus(unsigned n, double epsilon, double omega, std::uint64_t seed,
                                                     std::size_t per_side = 20) {
  if (n < 1 || n > kMaxCorpusDim) {
    throw std::domain_error("corpus refused for n = " + std::to_string(n) + " (supported: 1.." +
                            std::to_string(kMaxCorpusDim) + ")");
  }
  if (!(epsilon >= 0.0 && omega > 0.0 && epsilon + omega <= 1.0)) {
    throw std::invalid_argument("need epsilon >= 0, omega > 0, epsilon + omega <= 1");
  }
  std::mt19937_64 rng(seed);
  std::vector<PromisePair> out;

  const std::size_t size = std::size_t{1} << n;
  const auto max_flips = static_cast<int>(std::floor(epsilon * static_cast<double>(size) + 1e-9));
  std::uniform_int_distribution<int> flips(0, max_flips);
  std::uniform_int_distribution<Word> point(0, dim_mask(n));
  for (std::size_t i = 0; i < per_side; ++i) {
    const BooleanFunction f = detail::draw_corpus_function(n, rng);
    BooleanFunction g = compose(f, random_invertible(n, rng));
    const int k = flips(rng);
    std::vector<bool> flipped(size, false);
    for (int done = 0; done < k;) {
      const Word x = point(rng);
      if (flipped[x]) continue;
      flipped[x] = true;
      g.flip(x);
      ++done;
    }
    PromisePair p{f, std::move(g), epsilon, omega, PromiseSide::Close, Rational(0)};
    p.certified_distance = linear_distance(p.f, p.g).distance;
    if (!verify_certificate(p)) throw std::logic_error("close pair failed certification");
    out.push_back(std::move(p));
  }

  std::size_t draws = 0;
  for (std::size_t i = 0; i < per_side; ++i) {
    BooleanFunction f = detail::draw_corpus_function(n, rng);
    for (std::size_t tries = 0;; ++tries) {
      if (++draws > kMaxFarDraws) {
        throw std::runtime_error("no far pair found within " + std::to_string(kMaxFarDraws) +
                                 " draws; epsilon + omega is too large for n = " + std::to_string(n));
      }
      if (tries > 0 && tries % 50 == 0) f = detail::draw_corpus_function(n, rng);
      BooleanFunction g = detail::draw_partner(f, rng);
      const Rational d = linear_distance(f, g).distance;
      if (to_double(d) < epsilon + omega - 1e-12) continue;
      PromisePair p{f, std::move(g), epsilon, omega, PromiseSide::Far, d};
      if (!verify_certificate(p)) throw std::logic_error("far pair failed certification");
      out.push_back(std::move(p));
      break;
    }
  }
  return out;
}

}  // namespace liniso
