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

#include <random>
#include <string>

#include <gtest/gtest.h>

#include "liniso/generators.hpp"
#include "liniso/protocol.hpp"

namespace liniso {
namespace {

TEST(Step1, Examples) {
  auto c = step1_compare_norms(1, 1);
  EXPECT_EQ(c.winner, Party::Alice);
  EXPECT_EQ(c.bits, 2U);
  c = step1_compare_norms(2, 5);
  EXPECT_EQ(c.winner, Party::Alice);
  EXPECT_EQ(c.bits, 8U);
  EXPECT_EQ(c.from_alice.payload.to_string(), "010");
  EXPECT_EQ(c.from_bob.payload.to_string(), "00101");
  c = step1_compare_norms(5, 2);
  EXPECT_EQ(c.winner, Party::Bob);
  EXPECT_EQ(c.bits, 8U);
  EXPECT_THROW(step1_compare_norms(0, 1), std::invalid_argument);
}

TEST(Canonical, SingleParityPayload) {
  // One parity sampled 36 times: ell = 1, sign +, no extras, multiplicity 36.
  SignedParitySet sp(3);
  for (int i = 0; i < 36; ++i) sp.add({0b110, 1});
  const BitString payload = encode_canonical(canonicalize(sp));
  EXPECT_EQ(payload.to_string(), "0101100000100100");
  const auto w = decode_sign_payload(3, payload);
  EXPECT_EQ(w[1], 36);
  EXPECT_EQ(decode_sign_function(3, payload), parity_function(3, 0b001));
}

TEST(Canonical, ExtrasAreSortedAndLiveInTheBasisSpan) {
  SignedParitySet sp(4, {{0b0011, 1}, {0b0101, -1}, {0b0110, 1}, {0b0110, 1}, {0b0011, 1}});
  const CanonicalForm c = canonicalize(sp);
  EXPECT_EQ(c.ell, 2U);
  ASSERT_EQ(c.basis.size(), 2U);
  EXPECT_EQ(c.basis[0].label, 0b01U);
  EXPECT_EQ(c.basis[0].weight, 2);
  EXPECT_EQ(c.basis[1].label, 0b10U);
  EXPECT_EQ(c.basis[1].weight, -1);
  ASSERT_EQ(c.extra.size(), 1U);
  EXPECT_EQ(c.extra[0].label, 0b11U);
  EXPECT_EQ(c.extra[0].weight, 2);
}

TEST(Canonical, CancelledParitiesDropOut) {
  SignedParitySet sp(2, {{0b01, 1}, {0b01, -1}, {0b10, -1}});
  const CanonicalForm c = canonicalize(sp);
  EXPECT_EQ(c.ell, 1U);
  EXPECT_TRUE(c.extra.empty());
}

TEST(Canonical, EmptySupportEncodesConstantOne) {
  SignedParitySet sp(3, {{0b1, 1}, {0b1, -1}});
  const BitString payload = encode_canonical(canonicalize(sp));
  EXPECT_EQ(payload.to_string(), "11");
  EXPECT_EQ(decode_sign_function(3, payload), BooleanFunction::constant(3, 1));
}

TEST(Canonical, EmptyParityOnlyHasNoBasis) {
  SignedParitySet sp(3, {{0, -1}, {0, -1}});
  const CanonicalForm c = canonicalize(sp);
  EXPECT_EQ(c.ell, 0U);
  ASSERT_EQ(c.extra.size(), 1U);
  EXPECT_EQ(c.extra[0].label, 0U);
  const BitString payload = encode_canonical(c);
  EXPECT_EQ(payload.to_string(), "10100010");
  EXPECT_EQ(decode_sign_function(3, payload), BooleanFunction::constant(3, -1));
}

TEST(RunProtocol, ConstantFunctions) {
  const BooleanFunction one = BooleanFunction::constant(3, 1);
  const Transcript t = run_protocol(one, -one, {0.1, 0.4, DistanceMode::Linear}, 1);
  EXPECT_EQ(*t.verdict, Verdict::Reject);
  EXPECT_EQ(t.distance, Rational(1));
}

TEST(Encode, DecodedFunctionIsARenamingOfTheSignFunction) {
  std::mt19937_64 rng(40);
  for (int trial = 0; trial < 30; ++trial) {
    const unsigned n = 2 + trial % 4;
    const BooleanFunction f = random_function(n, rng);
    const EncodedSign enc = alice_encode_F(f, 0.4, static_cast<std::uint64_t>(trial));
    const BooleanFunction decoded = decode_sign_function(n, enc.payload);
    EXPECT_EQ(decoded, compose(enc.sign.function, enc.transform));
    EXPECT_LE(to_double(hamming_distance(f, enc.sign.function)), 0.1 + 1e-12);
    EXPECT_EQ(enc.payload.size(), encode_canonical(enc.canonical).size());
  }
}

TEST(Decode, MalformedPayloads) {
  SignedParitySet sp(3, {{0b011, 1}, {0b101, -1}, {0b110, 1}});
  const BitString good = encode_canonical(canonicalize(sp));
  EXPECT_NO_THROW(decode_sign_payload(3, good));
  for (std::size_t len = 0; len < good.size(); ++len) {
    EXPECT_THROW(decode_sign_payload(3, good.prefix(len)), DecodeError) << len;
  }
  BitString trailing = good;
  trailing.push_back(true);
  EXPECT_THROW(decode_sign_payload(3, trailing), DecodeError);
  // ell = 4 in dimension 3.
  EXPECT_THROW(decode_sign_payload(3, BitString::parse("00101")), DecodeError);
  // ell = 1 with w = 2 entries; only label 0 is a non-unit label in span{e_1}.
  EXPECT_THROW(decode_sign_payload(3, BitString::parse("0101011")), DecodeError);
  // ell = 0 with w = 2 entries.
  EXPECT_THROW(decode_sign_payload(3, BitString::parse("1011")), DecodeError);
}

TEST(Classify, Thresholds) {
  EXPECT_EQ(classify_distance(Rational(0), 0.1, 0.4), Verdict::Accept);
  EXPECT_EQ(classify_distance(Rational(1, 5), 0.1, 0.4), Verdict::Accept);
  EXPECT_EQ(classify_distance(Rational(1, 4), 0.1, 0.4), Verdict::PromiseViolation);
  EXPECT_EQ(classify_distance(Rational(2, 5), 0.1, 0.4), Verdict::Reject);
  EXPECT_EQ(classify_distance(Rational(1, 2), 0.1, 0.4), Verdict::Reject);
}

TEST(BobDecide, Examples) {
  const BooleanFunction g = parity_function(3, 0b100);
  SignedParitySet same(3, {{0b010, 1}});
  const Decision a = bob_decide(g, encode_canonical(canonicalize(same)), {0.1, 0.4, DistanceMode::Linear});
  EXPECT_EQ(a.verdict, Verdict::Accept);
  EXPECT_EQ(a.distance, Rational(0));

  SignedParitySet neg(3, {{0b010, -1}});
  const Decision r = bob_decide(g, encode_canonical(canonicalize(neg)), {0.1, 0.4, DistanceMode::Linear});
  EXPECT_EQ(r.verdict, Verdict::Reject);
  EXPECT_EQ(r.distance, Rational(1, 2));
  const Decision af = bob_decide(g, encode_canonical(canonicalize(neg)), {0.1, 0.4, DistanceMode::Affine});
  EXPECT_EQ(af.verdict, Verdict::Accept);

  EXPECT_THROW(bob_decide(g, BitString::parse("0"), {0.1, 0.4, DistanceMode::Linear}), DecodeError);
  EXPECT_THROW(bob_decide(g, BitString::parse("11"), {0.7, 0.4, DistanceMode::Linear}), std::invalid_argument);
}

TEST(RunProtocol, IdenticalParitiesAccept) {
  const BooleanFunction f = parity_function(4, 0b1011);
  const Transcript t = run_protocol(f, f, {0.1, 0.4, DistanceMode::Linear}, 1);
  ASSERT_TRUE(t.verdict);
  EXPECT_EQ(*t.verdict, Verdict::Accept);
  ASSERT_EQ(t.messages.size(), 3U);
  EXPECT_EQ(t.messages[0].from, Party::Alice);
  EXPECT_EQ(t.messages[1].from, Party::Bob);
  EXPECT_EQ(t.messages[2].step, ProtocolStep::SendF);
  EXPECT_EQ(t.total_bits, t.bits_from(Party::Alice) + t.bits_from(Party::Bob));
  const std::string s = serialize(t);
  EXPECT_NE(s.find("AliceToBob CompareNorms 1 1\n"), std::string::npos);
  EXPECT_NE(s.find("VERDICT Accept d=0"), std::string::npos);
}

TEST(RunProtocol, SmallerNormEncodes) {
  // AND_3 has a larger approximate norm than a parity, so Bob encodes.
  // d = 3/8 clears the reject threshold 0.05 + 3 * 0.3 / 4.
  const Transcript t = run_protocol(and_function(3), parity_function(3, 1), {0.05, 0.3, DistanceMode::Linear}, 3);
  EXPECT_EQ(t.encoder, Party::Bob);
  EXPECT_EQ(t.messages.back().from, Party::Bob);
  EXPECT_EQ(*t.verdict, Verdict::Reject);
  EXPECT_EQ(t.distance, Rational(3, 8));
}

TEST(RunProtocol, InvariantUnderRenamingOfEitherInput) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const BooleanFunction f = random_function(3, rng);
    const BooleanFunction g = random_function(3, rng);
    const MatrixF2 a = random_invertible(3, rng);
    const MatrixF2 b = random_invertible(3, rng);
    const ProtocolParams p{0.1, 0.4, DistanceMode::Linear};
    const Transcript t0 = run_protocol(f, g, p, 9);
    const Transcript t1 = run_protocol(compose(f, a), compose(g, b), p, 9);
    EXPECT_EQ(t0.alice_norm_ceiling, t1.alice_norm_ceiling);
    EXPECT_EQ(t0.bob_norm_ceiling, t1.bob_norm_ceiling);
    // The decoded distance is renaming invariant; the sample itself may differ.
    const Rational truth = linear_distance(f, g).distance;
    EXPECT_LE(abs(t0.distance - truth), Rational(1, 10));
    EXPECT_LE(abs(t1.distance - truth), Rational(1, 10));
  }
}

TEST(RunProtocol, CorrectOnPromisePairs) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const BooleanFunction f = random_function(4, rng);
    BooleanFunction g = compose(f, random_invertible(4, rng));
    g.flip(static_cast<Word>(trial % 16));
    const Transcript t = run_protocol(f, g, {0.1, 0.4, DistanceMode::Linear}, static_cast<std::uint64_t>(trial));
    EXPECT_EQ(*t.verdict, Verdict::Accept) << trial;
    const Transcript r = run_protocol(f, -g, {0.0, 0.4, DistanceMode::Linear}, static_cast<std::uint64_t>(trial));
    if (linear_distance(f, -g).distance >= Rational(2, 5)) {
      EXPECT_EQ(*r.verdict, Verdict::Reject) << trial;
    }
  }
}

TEST(RunProtocol, AffineModeAndRefusals) {
  const BooleanFunction f = random_function(4, 43);
  const Transcript t = run_protocol(f, shift(f, 0b0110), {0.0, 0.4, DistanceMode::Affine}, 1);
  EXPECT_EQ(*t.verdict, Verdict::Accept);
  EXPECT_THROW(run_protocol(random_function(5, 1), random_function(5, 2), {0.1, 0.4, DistanceMode::Affine}, 1),
               std::domain_error);
  EXPECT_THROW(run_protocol(random_function(6, 1), random_function(6, 2), {0.1, 0.4, DistanceMode::Linear}, 1),
               std::domain_error);
  EXPECT_THROW(run_protocol(f, random_function(3, 2), {0.1, 0.4, DistanceMode::Linear}, 1), std::invalid_argument);
}

TEST(EstimateLinearDistance, WithinEpsilon) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 15; ++trial) {
    const BooleanFunction f = random_function(4, rng);
    const BooleanFunction g = random_function(4, rng);
    const DistanceEstimate e = estimate_linear_distance(f, g, 0.1, static_cast<std::uint64_t>(trial));
    EXPECT_LE(abs(e.estimate - linear_distance(f, g).distance), Rational(1, 10));
    EXPECT_FALSE(e.transcript.verdict.has_value());
    EXPECT_NE(serialize(e.transcript).find("ESTIMATE d="), std::string::npos);
  }
}

TEST(BitBudget, Formula) {
  EXPECT_DOUBLE_EQ(bit_budget(1.0, 2.0, 0.25), 16.0 * 4.0);
  EXPECT_DOUBLE_EQ(bit_budget(3.0, 1.0, 0.5), 3.0);
}

}  // namespace
}  // namespace liniso
