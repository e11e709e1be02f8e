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

// Deterministic two-party protocol for tolerant linear isomorphism.
//
// Alice holds f, Bob holds g. Both announce ceil(||.||_{1,1/3}); the party
// with the smaller value (ties to Alice) becomes the encoder. The encoder
// builds a sign representation F close to its function, renames variables so
// the sampled parities span {e_1..e_l}, and sends the signed multiset. The
// decoder rebuilds F' and compares delta_L(F', own function) against the
// promise thresholds.
//
// SendF payload layout:
//
//   gamma(l + 1)
//   l bits        sign of e_1..e_l (1 = +)
//   gamma(w + 1)
//   w entries     l-bit label (LSB first), sign bit
//   l + w codes   gamma(multiplicity), basis entries first, then the others
//
// Non-basis entries are sorted by label.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "liniso/bitcode.hpp"
#include "liniso/f2.hpp"
#include "liniso/fourier.hpp"
#include "liniso/sampler.hpp"
#include "liniso/spectral_lp.hpp"

namespace liniso {

inline constexpr double kProtocolAlpha = 1.0 / 3.0;
inline constexpr double kThresholdSlack = 1e-12;

enum class Party { Alice, Bob };
enum class ProtocolStep { CompareNorms, SendF };
enum class Verdict { Accept, Reject, PromiseViolation };
enum class DistanceMode { Linear, Affine };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Accept: return "Accept";
    case Verdict::Reject: return "Reject";
    case Verdict::PromiseViolation: return "PromiseViolation";
  }
  return "?";
}

inline const char* to_string(Party p) { return p == Party::Alice ? "Alice" : "Bob"; }

inline Party other(Party p) { return p == Party::Alice ? Party::Bob : Party::Alice; }

struct ProtocolParams {
  double epsilon = 0.0;
  double omega = 0.0;
  DistanceMode mode = DistanceMode::Linear;

  void validate() const {
    if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be > 0");
    if (epsilon + omega > 1.0 + kThresholdSlack) throw std::invalid_argument("epsilon + omega must be <= 1");
  }
};

struct Message {
  Party from = Party::Alice;
  ProtocolStep step = ProtocolStep::CompareNorms;
  BitString payload;

  std::size_t bits() const noexcept { return payload.size(); }
};

struct Transcript {
  std::vector<Message> messages;
  std::size_t total_bits = 0;
  std::optional<Verdict> verdict;  // empty for distance estimation runs
  Rational distance{0};            // d computed by the decoder

  // Diagnostics, not part of the serialized transcript.
  int alice_norm_ceiling = 0;
  int bob_norm_ceiling = 0;
  double norm_bound = 0.0;  // min of the two approximate norms
  Party encoder = Party::Alice;
  std::size_t sample_size = 0;
  unsigned sample_attempts = 0;

  void add(Message m) {
    if (m.payload.empty()) throw std::logic_error("protocol messages are non-empty");
    total_bits += m.bits();
    messages.push_back(std::move(m));
  }

  std::size_t bits_from(Party p) const {
    std::size_t total = 0;
    for (const auto& m : messages) total += m.from == p ? m.bits() : 0;
    return total;
  }
};

// One line per message, then TOTAL and VERDICT (or ESTIMATE) lines.
inline std::string serialize(const Transcript& t) {
  std::ostringstream os;
  for (const auto& m : t.messages) {
    os << (m.from == Party::Alice ? "AliceToBob" : "BobToAlice") << ' '
       << (m.step == ProtocolStep::CompareNorms ? "CompareNorms" : "SendF") << ' ' << m.bits() << ' '
       << m.payload.to_string() << '\n';
  }
  os << "TOTAL " << t.total_bits << '\n';
  if (t.verdict) {
    os << "VERDICT " << to_string(*t.verdict) << " d=" << to_string(t.distance) << '\n';
  } else {
    os << "ESTIMATE d=" << to_string(t.distance) << '\n';
  }
  return os.str();
}

struct NormComparison {
  Party winner = Party::Alice;
  std::size_t bits = 0;
  Message from_alice;
  Message from_bob;
};

inline NormComparison step1_compare_norms(int kf, int kg) {
  if (kf < 1 || kg < 1) throw std::invalid_argument("norm ceilings must be >= 1");
  NormComparison out;
  out.from_alice = {Party::Alice, ProtocolStep::CompareNorms, elias_gamma(static_cast<std::uint64_t>(kf))};
  out.from_bob = {Party::Bob, ProtocolStep::CompareNorms, elias_gamma(static_cast<std::uint64_t>(kg))};
  out.winner = kf <= kg ? Party::Alice : Party::Bob;
  out.bits = out.from_alice.bits() + out.from_bob.bits();
  return out;
}

// A signed multiset after renaming: label -> net multiplicity (non-zero).
struct CanonicalTerm {
  Word label = 0;
  std::int64_t weight = 0;
};

struct CanonicalForm {
  unsigned n = 0;
  unsigned ell = 0;
  MatrixF2 basis_change;               // N, with N b_i = e_i
  std::vector<CanonicalTerm> basis;    // labels e_1..e_ell, in order
  std::vector<CanonicalTerm> extra;    // other labels, sorted
};

inline CanonicalForm canonicalize(const SignedParitySet& sp) {
  const unsigned n = sp.dim();
  const auto weights = sp.weights();
  std::vector<Word> support;
  for (std::size_t s = 0; s < weights.size(); ++s) {
    if (weights[s] != 0) support.push_back(static_cast<Word>(s));
  }
  const BasisCompletion bc = complete_basis(n, support);
  CanonicalForm out{n, bc.rank, bc.transform, {}, {}};
  std::vector<bool> is_pivot(weights.size(), false);
  for (const std::size_t i : bc.pivots) {
    const Word b = support[i];
    is_pivot[b] = true;
    out.basis.push_back({bc.transform.apply(b), weights[b]});
  }
  for (const Word s : support) {
    if (!is_pivot[s]) out.extra.push_back({bc.transform.apply(s), weights[s]});
  }
  std::sort(out.extra.begin(), out.extra.end(),
            [](const CanonicalTerm& a, const CanonicalTerm& b) { return a.label < b.label; });
  for (std::size_t i = 0; i < out.basis.size(); ++i) {
    if (out.basis[i].label != (Word{1} << i)) throw std::logic_error("basis completion did not map pivots to units");
  }
  for (const auto& e : out.extra) {
    if ((e.label >> out.ell) != 0) throw std::logic_error("label outside span{e_1..e_l}");
  }
  return out;
}

inline BitString encode_canonical(const CanonicalForm& c) {
  BitString out = elias_gamma(std::uint64_t{c.ell} + 1);
  for (const auto& t : c.basis) out.push_back(t.weight > 0);
  out.append(elias_gamma(c.extra.size() + 1));
  for (const auto& t : c.extra) {
    out.append_lsb_first(t.label, c.ell);
    out.push_back(t.weight > 0);
  }
  for (const auto& t : c.basis) out.append(elias_gamma(static_cast<std::uint64_t>(std::abs(t.weight))));
  for (const auto& t : c.extra) out.append(elias_gamma(static_cast<std::uint64_t>(std::abs(t.weight))));
  return out;
}

// Net signed multiplicity per parity in F_2^n. Throws DecodeError on any
// malformed payload.
inline std::vector<std::int64_t> decode_sign_payload(unsigned n, const BitString& payload) {
  check_dim(n);
  BitReader r(payload);
  const std::uint64_t ell1 = r.read_gamma();
  if (ell1 - 1 > n) throw DecodeError("basis size exceeds dimension");
  const auto ell = static_cast<unsigned>(ell1 - 1);

  std::vector<Word> labels;
  std::vector<int> signs;
  for (unsigned i = 0; i < ell; ++i) {
    labels.push_back(Word{1} << i);
    signs.push_back(r.read_bit() ? 1 : -1);
  }
  const std::uint64_t w = r.read_gamma() - 1;
  // Extras are distinct non-unit labels in span{e_1..e_ell}, label 0 included.
  if (w > (std::uint64_t{1} << ell) - ell) throw DecodeError("more entries than labels");
  for (std::uint64_t i = 0; i < w; ++i) {
    labels.push_back(static_cast<Word>(r.read_lsb_first(ell)));
    signs.push_back(r.read_bit() ? 1 : -1);
  }
  std::vector<std::int64_t> weights(std::size_t{1} << n, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::uint64_t mult = r.read_gamma();
    if (mult > (std::uint64_t{1} << 40)) throw DecodeError("multiplicity out of range");
    weights[labels[i]] += signs[i] * static_cast<std::int64_t>(mult);
  }
  if (!r.at_end()) throw DecodeError("trailing bits after payload");
  return weights;
}

inline BooleanFunction decode_sign_function(unsigned n, const BitString& payload) {
  return sign_of_weights(n, decode_sign_payload(n, payload));
}

struct EncodedSign {
  BitString payload;
  MatrixF2 transform;  // the decoded function equals F o transform
  CloseSignFunction sign;
  CanonicalForm canonical;
};

inline EncodedSign encode_sign_function(CloseSignFunction sign) {
  CanonicalForm c = canonicalize(sign.parities);
  BitString payload = encode_canonical(c);
  MatrixF2 m = c.basis_change.transpose();
  return {std::move(payload), m, std::move(sign), std::move(c)};
}

// Builds F with delta(f, F) <= omega/4 and encodes it.
inline EncodedSign alice_encode_F(const BooleanFunction& f, const ApproxNormResult& approx, double omega,
                                  std::uint64_t seed) {
  const double delta = std::min(0.5, omega / 4.0);
  return encode_sign_function(find_close_sign_function(f, approx, delta, seed));
}

inline EncodedSign alice_encode_F(const BooleanFunction& f, double omega, std::uint64_t seed) {
  return alice_encode_F(f, approx_spectral_norm(f, kProtocolAlpha), omega, seed);
}

inline Verdict classify_distance(const Rational& d, double epsilon, double omega) {
  const double v = to_double(d);
  if (v <= epsilon + omega / 4.0 + kThresholdSlack) return Verdict::Accept;
  if (v >= epsilon + 3.0 * omega / 4.0 - kThresholdSlack) return Verdict::Reject;
  return Verdict::PromiseViolation;
}

inline Rational protocol_distance(const BooleanFunction& a, const BooleanFunction& b, DistanceMode mode) {
  return mode == DistanceMode::Affine ? affine_distance(a, b).distance : linear_distance(a, b).distance;
}

struct Decision {
  Verdict verdict = Verdict::PromiseViolation;
  Rational distance{0};
};

inline Decision bob_decide(const BooleanFunction& g, const BitString& payload, const ProtocolParams& params) {
  params.validate();
  const BooleanFunction f_prime = decode_sign_function(g.dim(), payload);
  const Rational d = protocol_distance(f_prime, g, params.mode);
  return {classify_distance(d, params.epsilon, params.omega), d};
}

namespace detail {

struct ExchangeResult {
  Transcript transcript;
  BooleanFunction decoded;
  const BooleanFunction* decoder_input;
};

// Step 1 followed by the encoder's SendF message.
inline ExchangeResult exchange(const BooleanFunction& f, const BooleanFunction& g, double delta,
                               std::uint64_t seed) {
  check_same_dim(f.dim(), g.dim());
  const ApproxNormResult nf = approx_spectral_norm(f, kProtocolAlpha);
  const ApproxNormResult ng = approx_spectral_norm(g, kProtocolAlpha);

  Transcript t;
  t.alice_norm_ceiling = norm_ceiling(nf.value);
  t.bob_norm_ceiling = norm_ceiling(ng.value);
  t.norm_bound = std::min(nf.value, ng.value);
  NormComparison cmp = step1_compare_norms(t.alice_norm_ceiling, t.bob_norm_ceiling);
  t.add(std::move(cmp.from_alice));
  t.add(std::move(cmp.from_bob));
  t.encoder = cmp.winner;

  const bool alice = t.encoder == Party::Alice;
  EncodedSign enc = encode_sign_function(
      find_close_sign_function(alice ? f : g, alice ? nf : ng, delta, seed));
  t.sample_size = enc.sign.sample_size;
  t.sample_attempts = enc.sign.attempts;
  BooleanFunction decoded = decode_sign_function(f.dim(), enc.payload);
  t.add({t.encoder, ProtocolStep::SendF, std::move(enc.payload)});
  return {std::move(t), std::move(decoded), alice ? &g : &f};
}

}  // namespace detail

inline Transcript run_protocol(const BooleanFunction& f, const BooleanFunction& g, const ProtocolParams& params,
                               std::uint64_t seed) {
  params.validate();
  check_same_dim(f.dim(), g.dim());
  if (params.mode == DistanceMode::Affine && f.dim() > kMaxAffineDim) {
    throw std::domain_error("affine protocol refused for n = " + std::to_string(f.dim()));
  }
  if (f.dim() > kMaxEnumDim) throw std::domain_error("protocol refused for n = " + std::to_string(f.dim()));
  auto ex = detail::exchange(f, g, std::min(0.5, params.omega / 4.0), seed);
  ex.transcript.distance = protocol_distance(ex.decoded, *ex.decoder_input, params.mode);
  ex.transcript.verdict = classify_distance(ex.transcript.distance, params.epsilon, params.omega);
  return std::move(ex.transcript);
}

struct DistanceEstimate {
  Rational estimate{0};
  Transcript transcript;
};

// One-shot estimate of delta_L(f, g) to within epsilon.
inline DistanceEstimate estimate_linear_distance(const BooleanFunction& f, const BooleanFunction& g,
                                                 double epsilon, std::uint64_t seed) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  check_same_dim(f.dim(), g.dim());
  if (f.dim() > kMaxEnumDim) throw std::domain_error("estimate refused for n = " + std::to_string(f.dim()));
  auto ex = detail::exchange(f, g, std::min(0.5, epsilon), seed);
  ex.transcript.distance = linear_distance(ex.decoded, *ex.decoder_input).distance;
  return {ex.transcript.distance, std::move(ex.transcript)};
}

// c * t^4 * log2(1/omega)^2.
inline double bit_budget(double c, double t, double omega) {
  const double l = std::log2(1.0 / omega);
  return c * std::pow(t, 4) * l * l;
}

}  // namespace liniso
