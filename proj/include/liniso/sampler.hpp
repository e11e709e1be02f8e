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

// Sparse sign representations sampled from an approximating polynomial.
//
// Given p with ||p||_1 = t, drawing parities S i.i.d. with probability
// |phat(S)|/t and signs sign(phat(S)) gives an unbiased estimate
// (t/N) sum a_S chi_S(x) of p(x). Where that estimate is within 1 - alpha of
// p(x), and p is alpha-close to f, the sign of the sum equals f(x).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "liniso/fourier.hpp"
#include "liniso/spectral_lp.hpp"

namespace liniso {

struct SignedParity {
  Word parity = 0;
  int sign = 1;
  friend bool operator==(const SignedParity&, const SignedParity&) = default;
};

// Multiset of signed parities; duplicates are kept.
class SignedParitySet {
 public:
  explicit SignedParitySet(unsigned n) : n_(n) { check_dim(n); }
  SignedParitySet(unsigned n, std::vector<SignedParity> entries) : n_(n), entries_(std::move(entries)) {
    check_dim(n);
    for (const auto& e : entries_) validate(e);
  }

  unsigned dim() const noexcept { return n_; }
  const std::vector<SignedParity>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  void add(SignedParity e) {
    validate(e);
    entries_.push_back(e);
  }

  // Net signed multiplicity of every parity, indexed by S.
  std::vector<std::int64_t> weights() const {
    std::vector<std::int64_t> w(std::size_t{1} << n_, 0);
    for (const auto& e : entries_) w[e.parity] += e.sign;
    return w;
  }

 private:
  void validate(const SignedParity& e) const {
    if (e.sign != 1 && e.sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    if ((e.parity & ~dim_mask(n_)) != 0) throw std::invalid_argument("parity outside F_2^n");
  }

  unsigned n_;
  std::vector<SignedParity> entries_;
};

inline SignedParitySet sample_signed_parities(const RealFunction& p, std::size_t count,
                                              std::mt19937_64& rng) {
  std::vector<Word> support;
  std::vector<double> weights;
  for (const auto& [s, c] : p.coefficients()) {
    support.push_back(s);
    weights.push_back(std::abs(c));
  }
  if (support.empty() || p.spectral_norm() <= 0.0) {
    throw std::invalid_argument("cannot sample from the zero function");
  }
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  SignedParitySet out(p.dim());
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t k = pick(rng);
    out.add({support[k], p.coefficient(support[k]) < 0.0 ? -1 : 1});
  }
  return out;
}

// sign(sum a_S chi_S(x)) over the multiset, with sign(0) = +1.
inline BooleanFunction build_sign_function(const SignedParitySet& sp) {
  if (sp.size() == 0) throw std::invalid_argument("empty signed parity set");
  return sign_of_weights(sp.dim(), sp.weights());
}

inline constexpr double kSampleConstant = 8.0;
inline constexpr unsigned kMaxSignAttempts = 64;

// N = ceil(C * t^2 * (1 - alpha)^-2 * ln(4 / delta)).
inline std::size_t sign_sample_size(double norm, double alpha, double delta) {
  const double slack = 1.0 - alpha;
  const double n = kSampleConstant * norm * norm / (slack * slack) * std::log(4.0 / delta);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(n)));
}

struct CloseSignFunction {
  BooleanFunction function;
  SignedParitySet parities;
  std::size_t sample_size = 0;
  unsigned attempts = 0;       // 1 on first-try success
  std::uint64_t seed_used = 0;
};

// Samples from `approx.witness` until the sign function is within delta of f
// (checked exactly), moving to seed + 1 after each failure.
inline CloseSignFunction find_close_sign_function(const BooleanFunction& f,
                                                  const ApproxNormResult& approx, double delta,
                                                  std::uint64_t seed) {
  check_same_dim(f.dim(), approx.witness.dim());
  if (!(approx.alpha >= 0.0 && approx.alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");
  if (!(delta > 0.0 && delta <= 0.5)) throw std::invalid_argument("delta must lie in (0, 1/2]");

  const std::size_t count = sign_sample_size(approx.witness.spectral_norm(), approx.alpha, delta);
  const auto budget = static_cast<std::int64_t>(std::floor(delta * static_cast<double>(f.size()) + 1e-9));
  for (unsigned attempt = 1; attempt <= kMaxSignAttempts; ++attempt) {
    const std::uint64_t s = seed + attempt - 1;
    std::mt19937_64 rng(s);
    SignedParitySet parities = sample_signed_parities(approx.witness, count, rng);
    BooleanFunction candidate = build_sign_function(parities);
    if (disagreements(f, candidate) <= budget) {
      return {std::move(candidate), std::move(parities), count, attempt, s};
    }
  }
  throw std::runtime_error("no sign function within delta after 64 sampling attempts");
}

inline CloseSignFunction find_close_sign_function(const BooleanFunction& f, double alpha,
                                                  double delta, std::uint64_t seed) {
  return find_close_sign_function(f, approx_spectral_norm(f, alpha), delta, seed);
}

}  // namespace liniso
