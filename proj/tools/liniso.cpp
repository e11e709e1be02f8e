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

// liniso: command-line front end.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "liniso/liniso.hpp"

namespace {

using namespace liniso;

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  std::string report;
};

// Ordered key=value record, one line per run.
class Report {
 public:
  explicit Report(std::string command) { add("command", std::move(command)); }

  template <typename T>
  Report& add(const std::string& key, const T& value) {
    std::ostringstream os;
    os << std::setprecision(10) << value;
    fields_.emplace_back(key, os.str());
    return *this;
  }

  std::string line() const {
    std::string s;
    for (const auto& [k, v] : fields_) {
      if (!s.empty()) s += ' ';
      s += k + "=" + v;
    }
    return s;
  }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

void write_text(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw std::runtime_error("cannot write " + g.out);
  f << text;
}

void finish(const Globals& g, const Report& r) {
  if (g.report.empty()) return;
  std::ofstream f(g.report, std::ios::app);
  if (!f) throw std::runtime_error("cannot write " + g.report);
  f << r.line() << '\n';
}

// Decimal, or 0b-prefixed binary written most significant bit first.
Word parse_vector(const std::string& text, unsigned n) {
  unsigned long long v = 0;
  std::size_t used = 0;
  if (text.rfind("0b", 0) == 0) {
    v = std::stoull(text.substr(2), &used, 2);
    used += 2;
  } else {
    v = std::stoull(text, &used, 10);
  }
  if (used != text.size()) throw std::invalid_argument("malformed vector '" + text + "'");
  if ((v & ~static_cast<unsigned long long>(dim_mask(n))) != 0) {
    throw std::invalid_argument("vector '" + text + "' has bits above n = " + std::to_string(n));
  }
  return static_cast<Word>(v);
}

MatrixF2 read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_matrix(in);
}

std::string format_vector(Word v, unsigned n) {
  std::string s = "0b";
  for (unsigned i = n; i-- > 0;) s += ((v >> i) & 1U) ? '1' : '0';
  return s;
}

std::string format_matrix_inline(const MatrixF2& m) {
  std::string s;
  for (unsigned i = 0; i < m.dim(); ++i) {
    if (i) s += '/';
    for (unsigned j = 0; j < m.dim(); ++j) s += m.at(i, j) ? '1' : '0';
  }
  return s;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tolerant linear isomorphism testing toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--out", g.out, "Write the main output to this path instead of stdout");
  app.add_option("--report", g.report, "Append a key=value report line to this path");

  std::string f_path;
  std::string g_path;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a function file");
  std::string kind;
  unsigned gen_n = 0;
  std::string gen_set = "1";
  std::string gen_center = "0";
  std::string gen_matrix;
  std::size_t gen_member = 0;
  gen->add_option("--kind", kind, "parity | and | majority | random | ball | ball-family")
      ->required()
      ->check(CLI::IsMember({"parity", "and", "majority", "random", "ball", "ball-family"}));
  gen->add_option("--n", gen_n, "Dimension")->required()->check(CLI::Range(1U, kMaxDim));
  gen->add_option("--set", gen_set, "Parity set S (decimal or 0b...)")->capture_default_str();
  gen->add_option("--center", gen_center, "Ball center a (decimal or 0b...)")->capture_default_str();
  gen->add_option("--matrix-file", gen_matrix, "ball-family: renaming matrix M");
  gen->add_option("--member", gen_member, "ball-family: index into the seeded family (0 = identity)");
  gen->callback([&] {
    GeneratorSpec spec;
    spec.n = gen_n;
    spec.seed = g.seed;
    if (kind == "parity") {
      spec.kind = GeneratorSpec::Kind::Parity;
      spec.parameter = parse_vector(gen_set, gen_n);
    } else if (kind == "and") {
      spec.kind = GeneratorSpec::Kind::And;
    } else if (kind == "majority") {
      spec.kind = GeneratorSpec::Kind::Majority;
    } else if (kind == "random") {
      spec.kind = GeneratorSpec::Kind::Random;
    } else if (kind == "ball") {
      spec.kind = GeneratorSpec::Kind::Ball;
      spec.parameter = parse_vector(gen_center, gen_n);
    } else {
      spec.kind = GeneratorSpec::Kind::BallFamily;
      if (!gen_matrix.empty()) {
        spec.matrix = read_matrix_file(gen_matrix);
        if (spec.matrix->dim() != gen_n) throw std::invalid_argument("matrix dimension differs from --n");
      } else {
        spec.matrix = gen_ball_family(gen_n, gen_member + 1, g.seed).back().matrix;
      }
    }
    const BooleanFunction f = generate(spec);
    write_text(g, format_function(f));
    finish(g, Report("gen").add("kind", kind).add("n", gen_n).add("seed", g.seed));
  });

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "Exact Fourier spectrum");
  bool spectrum_all = false;
  spectrum->add_option("--f", f_path, "Function file")->required();
  spectrum->add_flag("--all", spectrum_all, "Also list zero coefficients");
  spectrum->callback([&] {
    const BooleanFunction f = parse_function_file(f_path);
    const Spectrum s = wht(f);
    std::ostringstream os;
    std::size_t support = 0;
    for (std::size_t S = 0; S < s.size(); ++S) {
      if (s.scaled(static_cast<Word>(S)) != 0) ++support;
      if (s.scaled(static_cast<Word>(S)) == 0 && !spectrum_all) continue;
      os << format_vector(static_cast<Word>(S), f.dim()) << ' ' << to_string(s.coefficient(static_cast<Word>(S)))
         << '\n';
    }
    os << "norm " << to_string(spectral_norm(s)) << '\n';
    write_text(g, os.str());
    finish(g, Report("spectrum").add("n", f.dim()).add("support", support).add("norm", to_string(spectral_norm(s))));
  });

  // norm
  auto* norm = app.add_subcommand("norm", "Spectral norm ||f||_1");
  norm->add_option("--f", f_path, "Function file")->required();
  norm->callback([&] {
    const BooleanFunction f = parse_function_file(f_path);
    const Rational v = spectral_norm(wht(f));
    write_text(g, to_string(v) + "\n");
    finish(g, Report("norm").add("n", f.dim()).add("norm", to_string(v)).add("value", to_double(v)));
  });

  // approx-norm
  auto* approx = app.add_subcommand("approx-norm", "Approximate spectral norm ||f||_{1,alpha} by LP");
  double approx_alpha = 1.0 / 3.0;
  approx->add_option("--f", f_path, "Function file")->required();
  approx->add_option("--alpha", approx_alpha, "Approximation level in [0,1)")->capture_default_str();
  approx->callback([&] {
    const BooleanFunction f = parse_function_file(f_path);
    const ApproxNormResult r = approx_spectral_norm(f, approx_alpha);
    std::ostringstream os;
    os << "value " << format_double(r.value) << '\n';
    for (const auto& [s, c] : r.witness.coefficients()) {
      os << format_vector(s, f.dim()) << ' ' << format_double(c) << '\n';
    }
    write_text(g, os.str());
    finish(g, Report("approx-norm")
                  .add("n", f.dim())
                  .add("alpha", approx_alpha)
                  .add("value", r.value)
                  .add("ceiling", norm_ceiling(r.value))
                  .add("support", r.witness.coefficients().size()));
  });

  // lin-dist
  auto* lin = app.add_subcommand("lin-dist", "Exact linear distance");
  lin->add_option("--f", f_path, "Function file")->required();
  lin->add_option("--g", g_path, "Function file")->required();
  lin->callback([&] {
    const BooleanFunction f = parse_function_file(f_path);
    const BooleanFunction h = parse_function_file(g_path);
    const LinearDistance d = linear_distance(f, h);
    write_text(g, "distance " + to_string(d.distance) + "\nmatrix\n" + format_matrix(d.matrix));
    finish(g, Report("lin-dist")
                  .add("n", f.dim())
                  .add("distance", to_string(d.distance))
                  .add("matrix", format_matrix_inline(d.matrix)));
  });

  // affine-dist
  auto* aff = app.add_subcommand("affine-dist", "Exact affine distance");
  aff->add_option("--f", f_path, "Function file")->required();
  aff->add_option("--g", g_path, "Function file")->required();
  aff->callback([&] {
    const BooleanFunction f = parse_function_file(f_path);
    const BooleanFunction h = parse_function_file(g_path);
    const AffineDistance d = affine_distance(f, h);
    write_text(g, "distance " + to_string(d.distance) + "\nshift " + format_vector(d.shift, f.dim()) +
                      "\nmatrix\n" + format_matrix(d.matrix));
    finish(g, Report("affine-dist")
                  .add("n", f.dim())
                  .add("distance", to_string(d.distance))
                  .add("matrix", format_matrix_inline(d.matrix))
                  .add("shift", format_vector(d.shift, f.dim())));
  });

  // sign-approx
  auto* sign = app.add_subcommand("sign-approx", "Sparse sign representation close to f");
  double sign_alpha = 1.0 / 3.0;
  double sign_delta = 0.1;
  sign->add_option("--f", f_path, "Function file")->required();
  sign->add_option("--alpha", sign_alpha, "Approximation level in [0,1)")->capture_default_str();
  sign->add_option("--delta", sign_delta, "Allowed distance in (0,1/2]")->capture_default_str();
  sign->callback([&] {
    const BooleanFunction f = parse_function_file(f_path);
    const CloseSignFunction r = find_close_sign_function(f, sign_alpha, sign_delta, g.seed);
    write_text(g, format_function(r.function));
    std::size_t distinct = 0;
    for (const auto w : r.parities.weights()) distinct += w != 0;
    finish(g, Report("sign-approx")
                  .add("n", f.dim())
                  .add("alpha", sign_alpha)
                  .add("delta", sign_delta)
                  .add("samples", r.sample_size)
                  .add("distinct", distinct)
                  .add("attempts", r.attempts)
                  .add("seed_used", r.seed_used)
                  .add("distance", to_string(hamming_distance(f, r.function))));
  });

  // comm-test
  auto* comm = app.add_subcommand("comm-test", "Run the two-party protocol and print its transcript");
  double comm_eps = 0.1;
  double comm_omega = 0.2;
  bool comm_affine = false;
  comm->add_option("--f", f_path, "Alice's function file")->required();
  comm->add_option("--g", g_path, "Bob's function file")->required();
  comm->add_option("--eps", comm_eps, "epsilon")->capture_default_str();
  comm->add_option("--omega", comm_omega, "omega")->capture_default_str();
  comm->add_flag("--affine", comm_affine, "Use affine instead of linear distance");
  comm->callback([&] {
    const BooleanFunction f = parse_function_file(f_path);
    const BooleanFunction h = parse_function_file(g_path);
    const ProtocolParams params{comm_eps, comm_omega, comm_affine ? DistanceMode::Affine : DistanceMode::Linear};
    const Transcript t = run_protocol(f, h, params, g.seed);
    write_text(g, serialize(t));
    const int tmin = std::min(t.alice_norm_ceiling, t.bob_norm_ceiling);
    finish(g, Report("comm-test")
                  .add("n", f.dim())
                  .add("eps", comm_eps)
                  .add("omega", comm_omega)
                  .add("mode", comm_affine ? "affine" : "linear")
                  .add("seed", g.seed)
                  .add("verdict", to_string(*t.verdict))
                  .add("d", to_string(t.distance))
                  .add("total_bits", t.total_bits)
                  .add("kf", t.alice_norm_ceiling)
                  .add("kg", t.bob_norm_ceiling)
                  .add("encoder", to_string(t.encoder))
                  .add("samples", t.sample_size)
                  .add("c_observed", static_cast<double>(t.total_bits) / bit_budget(1.0, tmin, comm_omega)));
  });

  // comm-estimate
  auto* est = app.add_subcommand("comm-estimate", "One-shot linear distance estimate");
  double est_eps = 0.1;
  est->add_option("--f", f_path, "Alice's function file")->required();
  est->add_option("--g", g_path, "Bob's function file")->required();
  est->add_option("--eps", est_eps, "Accuracy epsilon in (0,1)")->capture_default_str();
  est->callback([&] {
    const BooleanFunction f = parse_function_file(f_path);
    const BooleanFunction h = parse_function_file(g_path);
    const DistanceEstimate e = estimate_linear_distance(f, h, est_eps, g.seed);
    write_text(g, serialize(e.transcript));
    finish(g, Report("comm-estimate")
                  .add("n", f.dim())
                  .add("eps", est_eps)
                  .add("seed", g.seed)
                  .add("estimate", to_string(e.estimate))
                  .add("total_bits", e.transcript.total_bits));
  });

  // query-test
  auto* qt = app.add_subcommand("query-test", "Run the query tester over seeded trials");
  double qt_eps = 0.1;
  double qt_omega = 0.4;
  double qt_alpha = 0.1;
  unsigned qt_trials = 10;
  bool qt_exact = false;
  qt->add_option("--f", f_path, "Hidden function file (query access only)")->required();
  qt->add_option("--g", g_path, "Known function file")->required();
  qt->add_option("--eps", qt_eps, "epsilon")->capture_default_str();
  qt->add_option("--omega", qt_omega, "omega")->capture_default_str();
  qt->add_option("--alpha", qt_alpha, "Approximation level for g, at most omega/4")->capture_default_str();
  qt->add_option("--trials", qt_trials, "Number of seeded trials")->capture_default_str()->check(CLI::PositiveNumber);
  qt->add_flag("--exact-sieve", qt_exact, "Use the exhaustive reference sieve");
  qt->callback([&] {
    const BooleanFunction f = parse_function_file(f_path);
    const BooleanFunction h = parse_function_file(g_path);
    const ApproxNormResult gn = approx_spectral_norm(h, qt_alpha);
    const double d = to_double(linear_distance(f, h).distance);
    const char* side = d <= qt_eps + 1e-12 ? "Close" : (d >= qt_eps + qt_omega - 1e-12 ? "Far" : "Outside");
    std::ostringstream os;
    os << "trial seed verdict reason queries maxcorr\n";
    unsigned errors = 0;
    std::uint64_t total_queries = 0;
    for (unsigned i = 0; i < qt_trials; ++i) {
      TesterParams p = make_tester_params(gn, qt_eps, qt_omega, g.seed + i);
      p.exact_sieve = qt_exact;
      QueryOracle oracle(f);
      const TesterResult r = run_query_tester(oracle, h, p, gn);
      // Outside the promise only Fail counts against the tester.
      const std::string sd(side);
      const bool ok = sd == "Close"  ? r.verdict == TesterVerdict::Accept
                      : sd == "Far" ? r.verdict == TesterVerdict::Reject
                                    : r.verdict != TesterVerdict::Fail;
      errors += ok ? 0 : 1;
      total_queries += r.queries;
      os << i << ' ' << p.seed << ' ' << to_string(r.verdict) << ' ' << to_string(r.reason) << ' ' << r.queries << ' '
         << format_double(r.max_correlation) << '\n';
    }
    const double rate = static_cast<double>(errors) / qt_trials;
    os << "side " << side << " error_rate " << format_double(rate) << '\n';
    write_text(g, os.str());
    finish(g, Report("query-test")
                  .add("n", f.dim())
                  .add("eps", qt_eps)
                  .add("omega", qt_omega)
                  .add("alpha", qt_alpha)
                  .add("t", gn.value)
                  .add("trials", qt_trials)
                  .add("side", side)
                  .add("error_rate", rate)
                  .add("mean_queries", static_cast<double>(total_queries) / qt_trials)
                  .add("exact_sieve", qt_exact ? "true" : "false"));
  });

  // corpus
  auto* corpus = app.add_subcommand("corpus", "Build a certified promise corpus");
  unsigned corpus_n = 3;
  double corpus_eps = 0.1;
  double corpus_omega = 0.2;
  std::size_t corpus_per_side = 20;
  corpus->add_option("--n", corpus_n, "Dimension (1..4)")->capture_default_str();
  corpus->add_option("--eps", corpus_eps, "epsilon")->capture_default_str();
  corpus->add_option("--omega", corpus_omega, "omega")->capture_default_str();
  corpus->add_option("--per-side", corpus_per_side, "Pairs per side")->capture_default_str();
  corpus->callback([&] {
    const auto pairs = build_promise_corpus(corpus_n, corpus_eps, corpus_omega, g.seed, corpus_per_side);
    std::ostringstream os;
    os << "index side distance f g\n";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      auto table = [](const BooleanFunction& f) {
        std::string s;
        for (const auto v : f.values()) s += v > 0 ? '+' : '-';
        return s;
      };
      os << i << ' ' << to_string(pairs[i].side) << ' ' << to_string(pairs[i].certified_distance) << ' '
         << table(pairs[i].f) << ' ' << table(pairs[i].g) << '\n';
    }
    write_text(g, os.str());
    finish(g, Report("corpus")
                  .add("n", corpus_n)
                  .add("eps", corpus_eps)
                  .add("omega", corpus_omega)
                  .add("seed", g.seed)
                  .add("pairs", pairs.size()));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
