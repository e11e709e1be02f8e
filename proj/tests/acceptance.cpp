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

// Acceptance harness. Prints one "ACCEPTANCE <k> PASS|FAIL" line per
// criterion and exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "liniso/liniso.hpp"

namespace liniso {

struct SieveInspector {
  static const std::vector<Word>& labels(const SieveOutput& s) { return s.labels_; }
};

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// 1. Parseval, WHT round trip and the correlation identity, exactly.
Outcome exact_fourier() {
  const auto start = Clock::now();
  std::mt19937_64 rng(1001);
  std::size_t checked = 0;
  bool ok = true;
  for (unsigned n = 1; n <= 10; ++n) {
    for (int i = 0; i < 100; ++i) {
      const BooleanFunction f = random_function(n, rng);
      const BooleanFunction g = random_function(n, rng);
      const Spectrum sf = wht(f);
      std::int64_t energy = 0;
      for (const auto c : sf.scaled()) energy += c * c;
      ok = ok && energy == (std::int64_t{1} << (2 * n));
      const auto back = inverse_wht(sf);
      ok = ok && back && *back == f;
      ok = ok && correlation_via_spectrum(sf, wht(g)) == Rational(1) - 2 * hamming_distance(f, g);
      ++checked;
    }
  }
  const double secs = seconds_since(start);
  std::ostringstream os;
  os << checked << " functions, n=1..10, " << std::fixed << std::setprecision(2) << secs << " s";
  return {ok && secs < 10.0, os.str()};
}

// 2. |GL_n| by enumeration.
Outcome gl_counts() {
  const auto start = Clock::now();
  const std::uint64_t expected[] = {1, 6, 168, 20160};
  bool ok = true;
  std::ostringstream os;
  for (unsigned n = 1; n <= 4; ++n) {
    std::uint64_t count = 0;
    for (const MatrixF2& m : enumerate_gl(n)) count += rank(m) == n ? 1 : 0;
    ok = ok && count == expected[n - 1] && gl_order(n) == expected[n - 1];
    os << (n > 1 ? ", " : "") << count;
  }
  const double secs = seconds_since(start);
  os << " in " << std::fixed << std::setprecision(2) << secs << " s";
  return {ok && secs < 30.0, os.str()};
}

// 3. Approximate spectral norm LP.
Outcome lp_norm() {
  std::mt19937_64 rng(1003);
  bool ok = true;
  std::ostringstream os;
  for (unsigned n = 1; n <= 5; ++n) {
    std::uniform_int_distribution<Word> pick(1, dim_mask(n));
    ok = ok && std::abs(approx_spectral_norm(parity_function(n, pick(rng)), 1.0 / 3.0).value - 2.0 / 3.0) <= 1e-6;
  }
  double worst_zero = 0.0;
  for (int i = 0; i < 20; ++i) {
    const BooleanFunction f = random_function(4, rng);
    worst_zero = std::max(worst_zero,
                          std::abs(approx_spectral_norm(f, 0.0).value - to_double(spectral_norm(wht(f)))));
  }
  ok = ok && worst_zero <= 1e-9;
  double worst_gl = 0.0;
  for (int i = 0; i < 20; ++i) {
    const BooleanFunction f = random_function(3, rng);
    const MatrixF2 m = random_invertible(3, rng);
    worst_gl = std::max(worst_gl, std::abs(approx_spectral_norm(f, 1.0 / 3.0).value -
                                           approx_spectral_norm(compose(f, m), 1.0 / 3.0).value));
  }
  ok = ok && worst_gl <= 1e-6;
  int monotone = 0;
  for (int i = 0; i < 10; ++i) {
    const BooleanFunction f = random_function(4, rng);
    double previous = std::numeric_limits<double>::infinity();
    bool this_ok = true;
    for (const double alpha : {0.0, 0.1, 0.2, 0.3, 0.4}) {
      const double v = approx_spectral_norm(f, alpha).value;
      this_ok = this_ok && v <= previous + 1e-9;
      previous = v;
    }
    monotone += this_ok ? 1 : 0;
  }
  ok = ok && monotone == 10;
  os << "parity 2/3 n=1..5; alpha=0 max err " << std::scientific << std::setprecision(1) << worst_zero
     << "; GL max err " << worst_gl << "; monotone " << monotone << "/10";
  return {ok, os.str()};
}

// 4. Sign-function sampling with C = 8.
Outcome sampler_first_attempt() {
  std::mt19937_64 rng(1004);
  int first = 0;
  int total = 0;
  bool bound = true;
  std::size_t sample_size = 0;
  for (int i = 0; i < 10; ++i) {
    const BooleanFunction f = i < 2 ? (i == 0 ? gen_ball(4) : and_function(4)) : random_function(4, rng);
    const ApproxNormResult approx = approx_spectral_norm(f, 1.0 / 3.0);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const CloseSignFunction r = find_close_sign_function(f, approx, 0.1, 1000 * static_cast<std::uint64_t>(i) + seed);
      first += r.attempts == 1 ? 1 : 0;
      bound = bound && hamming_distance(f, r.function) <= Rational(1, 10);
      sample_size = std::max(sample_size, r.sample_size);
      ++total;
    }
  }
  std::ostringstream os;
  os << "first-attempt " << first << "/" << total << ", bound held " << (bound ? "always" : "NOT always")
     << ", max N " << sample_size;
  return {first >= 90 && bound, os.str()};
}

// Verdict the exact distance dictates on a promise pair.
Verdict oracle_verdict(const PromisePair& p) {
  return p.side == PromiseSide::Close ? Verdict::Accept : Verdict::Reject;
}

// Configured constant for the per-run bit budget c * t^4 * log2(1/omega)^2.
constexpr double kBitBudgetConstant = 16.0;

// 5. Protocol on a certified corpus.
Outcome protocol_correctness() {
  int within_budget = 0;
  int correct = 0;
  int violations = 0;
  int runs = 0;
  double worst_c = 0.0;
  std::size_t max_bits = 0;
  for (const unsigned n : {2U, 3U, 4U}) {
    const auto corpus = build_promise_corpus(n, 0.1, 0.2, 2000 + n, 10);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto& p = corpus[i];
      const Transcript t = run_protocol(p.f, p.g, {0.1, 0.2, DistanceMode::Linear}, 50 * n + i);
      correct += *t.verdict == oracle_verdict(p) ? 1 : 0;
      violations += *t.verdict == Verdict::PromiseViolation ? 1 : 0;
      const int tmin = std::min(t.alice_norm_ceiling, t.bob_norm_ceiling);
      worst_c = std::max(worst_c, static_cast<double>(t.total_bits) / bit_budget(1.0, tmin, 0.2));
      within_budget += static_cast<double>(t.total_bits) <= bit_budget(kBitBudgetConstant, tmin, 0.2) ? 1 : 0;
      max_bits = std::max(max_bits, t.total_bits);
      ++runs;
    }
  }
  std::ostringstream os;
  os << correct << "/" << runs << " correct, " << violations << " PromiseViolation, max bits " << max_bits
     << ", c observed " << std::fixed << std::setprecision(2) << worst_c << ", " << within_budget << "/" << runs
     << " within c=" << kBitBudgetConstant;
  return {runs >= 40 && correct == runs && violations == 0 && within_budget == runs, os.str()};
}

// 6. One-shot distance estimate.
Outcome distance_estimate() {
  std::mt19937_64 rng(1006);
  int within = 0;
  double worst = 0.0;
  for (int i = 0; i < 40; ++i) {
    const BooleanFunction f = random_function(3, rng, std::uniform_real_distribution<double>(0.0, 1.0)(rng));
    const BooleanFunction g = random_function(3, rng, std::uniform_real_distribution<double>(0.0, 1.0)(rng));
    const DistanceEstimate e = estimate_linear_distance(f, g, 0.1, static_cast<std::uint64_t>(i));
    const double err = to_double(abs(e.estimate - linear_distance(f, g).distance));
    worst = std::max(worst, err);
    within += err <= 0.1 + 1e-12 ? 1 : 0;
  }
  std::ostringstream os;
  os << within << "/40 within 0.1, max error " << std::fixed << std::setprecision(4) << worst;
  return {within == 40, os.str()};
}

// 7. Sieve against the exact spectrum.
Outcome sieve_contract() {
  const unsigned n = 6;
  const double theta = 0.4;
  std::mt19937_64 rng(1007);
  int good = 0;
  std::uint64_t min_q = UINT64_MAX;
  std::uint64_t max_q = 0;
  for (int run = 0; run < 100; ++run) {
    BooleanFunction f = BooleanFunction::constant(n, 1);
    switch (run % 5) {
      case 0: f = gen_ball(n); break;
      case 1: f = and_function(n); break;
      case 2: f = random_function(n, rng, 0.15); break;
      case 3: {
        // Noisy parity: coefficient near 1 - 2 * noise.
        std::uniform_int_distribution<Word> s(1, dim_mask(n));
        f = parity_function(n, s(rng));
        std::bernoulli_distribution noise(0.1);
        for (Word x = 0; x < f.size(); ++x) {
          if (noise(rng)) f.flip(x);
        }
        break;
      }
      default: {
        // Majority of three parities: three coefficients of 1/2.
        std::uniform_int_distribution<Word> s(1, dim_mask(n));
        const Word a = s(rng), b = s(rng), c = s(rng);
        f = BooleanFunction::from(n, [&](Word x) { return chi(a, x) + chi(b, x) + chi(c, x) > 0 ? 1 : -1; });
        break;
      }
    }
    f = compose(f, random_invertible(n, rng));
    QueryOracle oracle(f);
    std::mt19937_64 sieve_rng(static_cast<std::uint64_t>(7000 + run));
    const SieveOutput so = implicit_sieve(oracle, {}, theta, sieve_rng);
    min_q = std::min(min_q, oracle.queries());
    max_q = std::max(max_q, oracle.queries());

    const auto& labels = SieveInspector::labels(so);
    const Spectrum s = wht(f);
    bool cond1 = true;
    bool cond2 = true;
    for (Word S = 0; S < f.size(); ++S) {
      const double c = std::abs(s.value(S));
      const bool kept = std::binary_search(labels.begin(), labels.end(), S);
      if (c >= theta - 1e-12 && !kept) cond1 = false;
      if (kept && c < theta / 2.0) cond2 = false;
    }
    good += cond1 && cond2 ? 1 : 0;
  }
  std::ostringstream os;
  os << good << "/100 runs satisfy both conditions; queries per run " << min_q << ".." << max_q << " (budget "
     << sieve_query_budget(n, theta) << ")";
  return {good >= 94, os.str()};
}

// 8. Basis discovery on constructed Q.
Outcome basis_discovery() {
  int good = 0;
  bool never_three = true;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(8000 + seed);
    const unsigned n = 4;
    std::uniform_int_distribution<Word> pick(0, dim_mask(n));
    std::vector<Word> points(64);
    for (auto& x : points) x = pick(rng);
    const SieveOutput so = SieveOutput::assemble(points, {0b01, 0b10, 0b11}, {});
    const auto basis = find_column_basis(so);
    if (basis && basis->pivots == std::vector<std::size_t>{0, 1} &&
        relabel_columns(*basis) == std::vector<Word>{0b01, 0b10, 0b11}) {
      ++good;
    }
    // Any dependent triple of parities.
    std::uniform_int_distribution<Word> any(1, dim_mask(n));
    const Word a = any(rng);
    Word b = any(rng);
    while (b == a) b = any(rng);
    const auto dep = find_column_basis(SieveOutput::assemble(points, {a, b, a ^ b}, {}));
    if (dep && dep->pivots.size() == 3) never_three = false;
  }
  std::ostringstream os;
  os << good << "/100 seeds give rank 2 with the right decomposition; dependent triples "
     << (never_three ? "never" : "sometimes") << " gave 3 pivots";
  return {good >= 99 && never_three, os.str()};
}

// 9. End-to-end query tester.
Outcome tester_end_to_end() {
  const auto start = Clock::now();
  std::ofstream log("acceptance_tester_trials.csv");
  log << "n,pair,side,seed,certified_distance,verdict,reason,queries,m,k,rank,max_correlation\n";
  int trials[2] = {0, 0};
  int errors[2] = {0, 0};
  int fails[2] = {0, 0};
  std::uint64_t total_queries = 0;
  std::uint64_t max_queries = 0;
  int over_budget = 0;
  for (const unsigned n : {3U, 4U}) {
    const auto corpus = build_promise_corpus(n, 0.1, 0.4, 9000 + n, 40);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const PromisePair& p = corpus[i];
      const ApproxNormResult g_norm = approx_spectral_norm(p.g, 0.1);
      for (std::uint64_t rep = 0; rep < 2; ++rep) {
        const std::uint64_t seed = 100000 * n + 10 * i + rep;
        TesterParams params = make_tester_params(g_norm, 0.1, 0.4, seed);
        QueryOracle oracle(p.f);
        const TesterResult r = run_query_tester(oracle, p.g, params, g_norm);
        const int side = p.side == PromiseSide::Close ? 0 : 1;
        const TesterVerdict want = side == 0 ? TesterVerdict::Accept : TesterVerdict::Reject;
        ++trials[side];
        errors[side] += r.verdict != want ? 1 : 0;
        fails[side] += r.verdict == TesterVerdict::Fail ? 1 : 0;
        total_queries += r.queries;
        max_queries = std::max(max_queries, r.queries);
        over_budget += r.queries > sieve_query_budget(n, r.theta) + r.m ? 1 : 0;
        log << n << ',' << i << ',' << to_string(p.side) << ',' << seed << ',' << to_string(p.certified_distance)
            << ',' << to_string(r.verdict) << ',' << to_string(r.reason) << ',' << r.queries << ',' << r.m << ','
            << r.k << ',' << r.rank << ',' << r.max_correlation << '\n';
      }
    }
  }
  const double secs = seconds_since(start);
  const double close_rate = static_cast<double>(errors[0]) / trials[0];
  const double far_rate = static_cast<double>(errors[1]) / trials[1];
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << "Close " << errors[0] << "/" << trials[0] << " (" << fails[0]
     << " Fail) = " << close_rate << "; Far " << errors[1] << "/" << trials[1] << " (" << fails[1]
     << " Fail) = " << far_rate << "; mean queries " << total_queries / (trials[0] + trials[1]) << ", max "
     << max_queries << ", " << over_budget << " over budget; " << std::setprecision(1) << secs << " s; log acceptance_tester_trials.csv";
  const bool ok = trials[0] >= 150 && trials[1] >= 150 && close_rate <= 1.0 / 3.0 && far_rate <= 1.0 / 3.0 &&
                  over_budget == 0 && secs <= 600.0;
  return {ok, os.str()};
}

// Sum over S of |1_{S=0} - 2^{1-n}(1 + n - 2|S|)|.
Rational ball_norm_closed_form(unsigned n) {
  Rational total(0);
  for (Word s = 0; s <= dim_mask(n); ++s) {
    const Rational c = Rational(s == 0 ? 1 : 0) -
                       Rational(1 + static_cast<std::int64_t>(n) - 2 * std::popcount(s), std::int64_t{1} << (n - 1));
    total += abs(c);
  }
  return total;
}

// 10. Hamming-ball family norms.
Outcome ball_family() {
  bool ok = true;
  std::ostringstream os;
  for (unsigned n = 2; n <= 8; ++n) ok = ok && spectral_norm(wht(gen_ball(n))) == ball_norm_closed_form(n);
  os << "closed form exact n=2..8;";
  for (unsigned n = 2; n <= 5; ++n) {
    const double exact = to_double(spectral_norm(wht(gen_ball(n))));
    const double approx = approx_spectral_norm(gen_ball(n), 1.0 / 3.0).value;
    os << " n=" << n << ": " << to_string(spectral_norm(wht(gen_ball(n)))) << " vs " << std::fixed
       << std::setprecision(4) << approx;
    ok = ok && approx <= exact + 1e-9;
  }
  double worst = 0.0;
  for (unsigned n = 2; n <= 5; ++n) {
    const std::size_t count = std::min<std::uint64_t>(n == 5 ? 4 : 8, ball_family_size(n));
    const double exact = to_double(spectral_norm(wht(gen_ball(n))));
    const double approx = approx_spectral_norm(gen_ball(n), 1.0 / 3.0).value;
    for (const BallMember& m : gen_ball_family(n, count, 10 + n)) {
      worst = std::max(worst, std::abs(to_double(spectral_norm(wht(m.function))) - exact));
      worst = std::max(worst, std::abs(approx_spectral_norm(m.function, 1.0 / 3.0).value - approx));
    }
  }
  ok = ok && worst <= 1e-6;
  os << "; family max deviation " << std::scientific << std::setprecision(1) << worst;
  return {ok, os.str()};
}

}  // namespace
}  // namespace liniso

int main() {
  using namespace liniso;
  const std::vector<std::function<Outcome()>> criteria{
      exact_fourier,     gl_counts,       lp_norm,         sampler_first_attempt, protocol_correctness,
      distance_estimate, sieve_contract,  basis_discovery, tester_end_to_end,     ball_family};
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "ACCEPTANCE " << k + 1 << ' ' << (o.pass ? "PASS" : "FAIL") << ' ' << o.detail << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
