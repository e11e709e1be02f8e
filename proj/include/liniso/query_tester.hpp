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

// Query-model tolerant tester for linear isomorphism to a known g.
//
// The unknown f is reached only through a counting oracle. A sieve finds the
// parities S with large |fhat(S)| but reveals them only as columns of
// evaluations chi_S(x_i) on sample points. The tester recovers the linear
// structure of those columns, relabels them in F_2^r, estimates the
// coefficients, and maximizes the correlation with an approximator G of g
// over all renamings A in GL_n.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "liniso/f2.hpp"
#include "liniso/fourier.hpp"
#include "liniso/spectral_lp.hpp"

namespace liniso {

class QueryOracle {
 public:
  explicit QueryOracle(BooleanFunction f) : f_(std::move(f)) {}

  unsigned dim() const noexcept { return f_.dim(); }
  std::uint64_t queries() const noexcept { return count_; }

  int query(Word x) {
    if ((x & ~dim_mask(f_.dim())) != 0) throw std::invalid_argument("query outside F_2^n");
    ++count_;
    return f_(x);
  }

 private:
  BooleanFunction f_;
  std::uint64_t count_ = 0;
};

struct SieveInspector;  // test-only access to the hidden labels

// Q is stored column by column: column(j)[i] = chi_{S_j}(points[i]).
class SieveOutput {
 public:
  const std::vector<Word>& points() const noexcept { return points_; }
  const std::vector<std::int8_t>& fvals() const noexcept { return fvals_; }
  std::size_t rows() const noexcept { return points_.size(); }
  std::size_t columns() const noexcept { return q_.size(); }
  const std::vector<std::int8_t>& column(std::size_t j) const { return q_.at(j); }
  int q(std::size_t i, std::size_t j) const { return q_.at(j).at(i); }

  static SieveOutput assemble(std::vector<Word> points, const std::vector<Word>& labels,
                              std::vector<std::int8_t> fvals) {
    SieveOutput out;
    out.labels_ = labels;
    out.q_.reserve(labels.size());
    for (const Word s : labels) {
      std::vector<std::int8_t> col(points.size());
      for (std::size_t i = 0; i < points.size(); ++i) col[i] = static_cast<std::int8_t>(chi(s, points[i]));
      out.q_.push_back(std::move(col));
    }
    out.points_ = std::move(points);
    out.fvals_ = std::move(fvals);
    return out;
  }

  // Builds an output directly from explicit columns (no hidden labels).
  static SieveOutput from_columns(std::vector<std::vector<std::int8_t>> q, std::vector<std::int8_t> fvals = {}) {
    SieveOutput out;
    const std::size_t m = q.empty() ? fvals.size() : q.front().size();
    for (const auto& c : q) {
      if (c.size() != m) throw std::invalid_argument("Q columns differ in length");
      for (const auto v : c) {
        if (v != 1 && v != -1) throw std::invalid_argument("Q entries must be +1 or -1");
      }
    }
    if (!fvals.empty() && fvals.size() != m) throw std::invalid_argument("fvals length must equal m");
    out.q_ = std::move(q);
    out.points_.assign(m, 0);
    out.fvals_ = std::move(fvals);
    return out;
  }

 private:
  friend struct SieveInspector;

  std::vector<Word> points_;
  std::vector<std::vector<std::int8_t>> q_;
  std::vector<std::int8_t> fvals_;
  std::vector<Word> labels_;
};

namespace detail {

inline std::vector<std::int8_t> query_points(QueryOracle& oracle, const std::vector<Word>& points) {
  std::vector<std::int8_t> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = static_cast<std::int8_t>(oracle.query(points[i]));
  return out;
}

// Hoeffding sample count for a mean of [-1, 1] variables to accuracy `acc`
// with failure probability `fail`.
inline std::uint64_t hoeffding_samples(double acc, double fail) {
  return static_cast<std::uint64_t>(std::ceil(2.0 / (acc * acc) * std::log(2.0 / fail)));
}

struct SievePlan {
  double theta = 0.0;           // effective threshold
  std::size_t cap = 0;          // survivors kept per level
  std::uint64_t weight_samples = 0;
  std::uint64_t coeff_samples = 0;
};

inline constexpr double kSieveFailure = 0.06;

inline SievePlan plan_sieve(unsigned n, double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) throw std::invalid_argument("theta must lie in (0, 1]");
  SievePlan p;
  // Non-zero Fourier coefficients of a Boolean function are multiples of
  // 2^{1-n}, so raising theta to that floor keeps the same heavy set.
  p.theta = std::max(theta, std::ldexp(1.0, 1 - static_cast<int>(n)));
  const double t2 = p.theta * p.theta;
  p.cap = static_cast<std::size_t>(std::ceil(3.0 / t2));
  const double estimates = static_cast<double>(n) * 2.0 * static_cast<double>(p.cap);
  const double fail = kSieveFailure / estimates;
  p.weight_samples = hoeffding_samples(t2 / 3.0, fail);
  p.coeff_samples = hoeffding_samples(p.theta / 4.0, fail);
  return p;
}

}  // namespace detail

// Upper bound on the sieve's own queries (excluding the m point queries).
inline std::uint64_t sieve_query_budget(unsigned n, double theta) {
  const auto p = detail::plan_sieve(n, theta);
  return 2 * p.weight_samples * (n - 1) + p.coeff_samples;
}

// Prefix search over the low j bits of S. For a prefix a in F_2^j,
//   W(a) = sum_{S : S mod 2^j = a} fhat(S)^2
//        = E_{u,v,z} f(u + z 2^j) f(v + z 2^j) chi_a(u xor v),
// estimated from one shared batch of query pairs per level. Prefixes with
// W >= theta^2 always survive; survivors have W >= theta^2/3 with high
// probability. At the last level each candidate S gets a direct coefficient
// estimate to within theta/4 and is kept if it reaches 3 theta/4.
template <typename Rng>
SieveOutput implicit_sieve(QueryOracle& oracle, std::vector<Word> points, double theta, Rng& rng) {
  const unsigned n = oracle.dim();
  const detail::SievePlan plan = detail::plan_sieve(n, theta);
  const double t2 = plan.theta * plan.theta;

  std::vector<Word> survivors{0};
  for (unsigned j = 1; j < n && !survivors.empty(); ++j) {
    const Word low = dim_mask(j);
    std::uniform_int_distribution<Word> pick_low(0, low);
    std::uniform_int_distribution<Word> pick_high(0, dim_mask(n) >> j);
    // sums[d] accumulates f(u,z) f(v,z) over samples with u xor v = d.
    std::vector<double> sums(std::size_t{1} << j, 0.0);
    for (std::uint64_t s = 0; s < plan.weight_samples; ++s) {
      const Word u = pick_low(rng);
      const Word v = pick_low(rng);
      const Word z = pick_high(rng) << j;
      sums[u ^ v] += oracle.query(u | z) * oracle.query(v | z);
    }
    std::vector<std::pair<double, Word>> kept;
    for (const Word prefix : survivors) {
      for (Word bit = 0; bit < 2; ++bit) {
        const Word a = prefix | (bit << (j - 1));
        double w = 0.0;
        for (std::size_t d = 0; d < sums.size(); ++d) w += sums[d] * chi(a, static_cast<Word>(d));
        w /= static_cast<double>(plan.weight_samples);
        if (w >= 2.0 * t2 / 3.0) kept.emplace_back(w, a);
      }
    }
    std::stable_sort(kept.begin(), kept.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    if (kept.size() > plan.cap) kept.resize(plan.cap);
    survivors.clear();
    for (const auto& [w, a] : kept) survivors.push_back(a);
    std::sort(survivors.begin(), survivors.end());
  }

  std::vector<Word> labels;
  if (!survivors.empty()) {
    std::vector<Word> candidates;
    for (const Word prefix : survivors) {
      candidates.push_back(prefix);
      candidates.push_back(prefix | (Word{1} << (n - 1)));
    }
    std::uniform_int_distribution<Word> pick(0, dim_mask(n));
    std::vector<double> est(candidates.size(), 0.0);
    for (std::uint64_t s = 0; s < plan.coeff_samples; ++s) {
      const Word x = pick(rng);
      const int fx = oracle.query(x);
      for (std::size_t c = 0; c < candidates.size(); ++c) est[c] += fx * chi(candidates[c], x);
    }
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (std::abs(est[c] / static_cast<double>(plan.coeff_samples)) >= 0.75 * plan.theta) {
        labels.push_back(candidates[c]);
      }
    }
    std::sort(labels.begin(), labels.end());
  }
  auto fvals = detail::query_points(oracle, points);
  return SieveOutput::assemble(std::move(points), labels, std::move(fvals));
}

// Deterministic reference: reads all 2^n values and keeps {S : |fhat(S)| >= theta}.
inline SieveOutput exact_sieve_debug(QueryOracle& oracle, std::vector<Word> points, double theta) {
  const unsigned n = oracle.dim();
  std::vector<std::int8_t> table(std::size_t{1} << n);
  for (std::size_t x = 0; x < table.size(); ++x) table[x] = static_cast<std::int8_t>(oracle.query(static_cast<Word>(x)));
  const Spectrum s = wht(BooleanFunction(n, std::move(table)));
  std::vector<Word> labels;
  for (std::size_t S = 0; S < s.size(); ++S) {
    if (std::abs(s.value(static_cast<Word>(S))) >= theta - 1e-12) labels.push_back(static_cast<Word>(S));
  }
  auto fvals = detail::query_points(oracle, points);
  return SieveOutput::assemble(std::move(points), labels, std::move(fvals));
}

inline SieveOutput exact_sieve_debug(const BooleanFunction& f, std::vector<Word> points, double theta) {
  QueryOracle oracle(f);
  return exact_sieve_debug(oracle, std::move(points), theta);
}

struct ColumnBasis {
  std::vector<std::size_t> pivots;  // column indices of B, in column order
  std::vector<Word> combination;    // per column: subset of B (bit i = i-th pivot)
};

// Gaussian elimination over F_2^m, with chi = -1 read as 1. Returns nullopt
// (NoBasis) if any column is all +1 or the rank exceeds kMaxDim.
inline std::optional<ColumnBasis> find_column_basis(const SieveOutput& so) {
  const std::size_t m = so.rows();
  const std::size_t words = (m + 63) / 64;
  struct Pivot {
    std::vector<std::uint64_t> reduced;
    std::size_t lead = 0;
    Word combination = 0;
  };
  std::vector<Pivot> pivots;
  ColumnBasis out;
  for (std::size_t j = 0; j < so.columns(); ++j) {
    std::vector<std::uint64_t> v(words, 0);
    const auto& col = so.column(j);
    for (std::size_t i = 0; i < m; ++i) {
      if (col[i] < 0) v[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    if (std::all_of(v.begin(), v.end(), [](std::uint64_t w) { return w == 0; })) return std::nullopt;
    Word combo = 0;
    for (const auto& p : pivots) {
      if ((v[p.lead / 64] >> (p.lead % 64)) & 1U) {
        for (std::size_t w = 0; w < words; ++w) v[w] ^= p.reduced[w];
        combo ^= p.combination;
      }
    }
    const auto nz = std::find_if(v.begin(), v.end(), [](std::uint64_t w) { return w != 0; });
    if (nz == v.end()) {
      out.combination.push_back(combo);
      continue;
    }
    if (pivots.size() == kMaxDim) return std::nullopt;
    const std::size_t word = static_cast<std::size_t>(nz - v.begin());
    const std::size_t lead = word * 64 + static_cast<std::size_t>(std::countr_zero(*nz));
    const Word own = Word{1} << pivots.size();
    pivots.push_back({std::move(v), lead, combo ^ own});
    out.pivots.push_back(j);
    out.combination.push_back(own);
  }
  return out;
}

// T_j as elements of F_2^r embedded in F_2^n: e_i for the i-th basis column,
// the XOR of its basis decomposition otherwise.
inline std::vector<Word> relabel_columns(const ColumnBasis& basis) { return basis.combination; }

inline std::vector<double> estimate_coefficients(const SieveOutput& so) {
  if (so.fvals().size() != so.rows()) throw std::invalid_argument("sieve output has no f values");
  std::vector<double> r(so.columns(), 0.0);
  for (std::size_t j = 0; j < so.columns(); ++j) {
    std::int64_t total = 0;
    const auto& col = so.column(j);
    for (std::size_t i = 0; i < so.rows(); ++i) total += so.fvals()[i] * col[i];
    r[j] = so.rows() == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(so.rows());
  }
  return r;
}

struct CorrelationResult {
  double max_correlation = 0.0;
  MatrixF2 argmax;
};

// max over A in GL_n of sum_j r_j Ghat(A^T T_j), with the first maximizer.
inline CorrelationResult correlation_search(unsigned n, const std::vector<Word>& labels,
                                            const std::vector<double>& r, const std::vector<double>& g_hat) {
  if (labels.size() != r.size()) throw std::invalid_argument("labels and estimates differ in length");
  if (g_hat.size() != (std::size_t{1} << n)) throw std::invalid_argument("Ghat length must be 2^n");
  for (const Word t : labels) {
    if ((t & ~dim_mask(n)) != 0) throw std::invalid_argument("label outside F_2^n");
  }
  CorrelationResult best{-std::numeric_limits<double>::infinity(), MatrixF2::identity(n)};
  for (const MatrixF2& a : enumerate_gl(n)) {
    // A^T T is the XOR of the rows of A selected by T.
    double corr = 0.0;
    for (std::size_t j = 0; j < labels.size(); ++j) {
      Word image = 0;
      for (Word t = labels[j]; t != 0; t &= t - 1) image ^= a.row(static_cast<unsigned>(std::countr_zero(t)));
      corr += r[j] * g_hat[image];
    }
    if (corr > best.max_correlation) {
      best.max_correlation = corr;
      best.argmax = a;
    }
  }
  return best;
}

inline std::vector<double> dense_coefficients(const RealFunction& p) {
  std::vector<double> out(std::size_t{1} << p.dim(), 0.0);
  for (const auto& [s, c] : p.coefficients()) out[s] = c;
  return out;
}

inline constexpr double kPointConstant = 288.0;

struct TesterParams {
  double epsilon = 0.0;
  double omega = 0.0;
  double alpha = 0.0;
  double t = 0.0;  // upper bound on ||g||_{1,alpha}
  std::uint64_t seed = 0;
  bool exact_sieve = false;

  void validate() const {
    if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
    if (!(omega > 0.0 && epsilon + omega <= 1.0 + 1e-12)) throw std::invalid_argument("need omega > 0 and epsilon + omega <= 1");
    if (!(alpha >= 0.0 && alpha <= omega / 4.0 + 1e-12)) throw std::invalid_argument("alpha must lie in [0, omega/4]");
    if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  }

  double theta() const { return omega / (12.0 * t); }
  std::size_t max_columns() const { return static_cast<std::size_t>(std::ceil(4.0 / (theta() * theta()))); }

  // m = ceil(C_m (t/omega)^2 ln(40 k_max)).
  std::size_t sample_points() const {
    const double ratio = t / omega;
    return static_cast<std::size_t>(
        std::ceil(kPointConstant * ratio * ratio * std::log(40.0 * static_cast<double>(max_columns()))));
  }
};

// t defaults to the LP value of ||g||_{1,alpha}.
inline TesterParams make_tester_params(const ApproxNormResult& g_norm, double epsilon, double omega,
                                       std::uint64_t seed) {
  TesterParams p{epsilon, omega, g_norm.alpha, g_norm.value, seed, false};
  p.validate();
  return p;
}

enum class TesterVerdict { Accept, Reject, Fail };
enum class FailReason { None, NoBasis, GapCorrelation };

inline const char* to_string(TesterVerdict v) {
  switch (v) {
    case TesterVerdict::Accept: return "Accept";
    case TesterVerdict::Reject: return "Reject";
    case TesterVerdict::Fail: return "Fail";
  }
  return "?";
}

inline const char* to_string(FailReason r) {
  switch (r) {
    case FailReason::None: return "None";
    case FailReason::NoBasis: return "NoBasis";
    case FailReason::GapCorrelation: return "GapCorrelation";
  }
  return "?";
}

struct TesterResult {
  TesterVerdict verdict = TesterVerdict::Fail;
  FailReason reason = FailReason::None;
  std::uint64_t queries = 0;
  double max_correlation = 0.0;
  std::size_t m = 0;
  std::size_t k = 0;
  unsigned rank = 0;
  double theta = 0.0;
};

// `g_norm` must be the LP result for g at params.alpha.
inline TesterResult run_query_tester(QueryOracle& oracle, const BooleanFunction& g, const TesterParams& params,
                                     const ApproxNormResult& g_norm) {
  params.validate();
  const unsigned n = g.dim();
  check_same_dim(oracle.dim(), n);
  if (n > kMaxEnumDim) throw std::domain_error("query tester refused for n = " + std::to_string(n));
  if (std::abs(g_norm.alpha - params.alpha) > 1e-12) throw std::invalid_argument("approximator level differs from alpha");
  if (params.t < g_norm.value - 1e-9) throw std::invalid_argument("t is below ||g||_{1,alpha}");

  TesterResult res;
  res.theta = params.theta();
  res.m = params.sample_points();
  const std::uint64_t before = oracle.queries();

  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<Word> pick(0, dim_mask(n));
  std::vector<Word> points(res.m);
  for (auto& x : points) x = pick(rng);

  const SieveOutput so = params.exact_sieve ? exact_sieve_debug(oracle, std::move(points), res.theta)
                                            : implicit_sieve(oracle, std::move(points), res.theta, rng);
  res.queries = oracle.queries() - before;
  res.k = so.columns();

  // A column of all +1 is the empty parity and gets label 0; the rest must
  // be free of such columns and linearly structured.
  std::vector<std::vector<std::int8_t>> rest;
  std::vector<std::size_t> rest_index;
  std::optional<std::size_t> constant_column;
  for (std::size_t j = 0; j < so.columns(); ++j) {
    const auto& col = so.column(j);
    if (std::all_of(col.begin(), col.end(), [](std::int8_t v) { return v == 1; })) {
      if (constant_column) {
        res.reason = FailReason::NoBasis;
        return res;
      }
      constant_column = j;
    } else {
      rest.push_back(col);
      rest_index.push_back(j);
    }
  }
  const auto basis = find_column_basis(SieveOutput::from_columns(std::move(rest), so.fvals()));
  if (!basis || basis->pivots.size() > n) {
    res.reason = FailReason::NoBasis;
    return res;
  }
  res.rank = static_cast<unsigned>(basis->pivots.size());

  std::vector<Word> labels(so.columns(), 0);
  const auto relabeled = relabel_columns(*basis);
  for (std::size_t i = 0; i < rest_index.size(); ++i) labels[rest_index[i]] = relabeled[i];

  const auto r = estimate_coefficients(so);
  const auto corr = correlation_search(n, labels, r, dense_coefficients(g_norm.witness));
  res.max_correlation = corr.max_correlation;

  const double accept_at = 1.0 - 2.0 * params.epsilon - params.omega / 2.0;
  const double reject_at = 1.0 - 2.0 * params.epsilon - 3.0 * params.omega / 2.0;
  if (corr.max_correlation >= accept_at) {
    res.verdict = TesterVerdict::Accept;
  } else if (corr.max_correlation <= reject_at) {
    res.verdict = TesterVerdict::Reject;
  } else {
    res.reason = FailReason::GapCorrelation;
  }
  return res;
}

inline TesterResult run_query_tester(QueryOracle& oracle, const BooleanFunction& g, const TesterParams& params) {
  return run_query_tester(oracle, g, params, approx_spectral_norm(g, params.alpha));
}

}  // namespace liniso
