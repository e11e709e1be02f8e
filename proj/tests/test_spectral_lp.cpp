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

#include <gtest/gtest.h>

#include "liniso/generators.hpp"
#include "liniso/spectral_lp.hpp"

namespace liniso {
namespace {

TEST(ApproxNorm, ParityIsShrunkByAlpha) {
  for (unsigned n = 1; n <= 5; ++n) {
    const auto r = approx_spectral_norm(parity_function(n, dim_mask(n)), 1.0 / 3.0);
    EXPECT_NEAR(r.value, 2.0 / 3.0, 1e-9);
    EXPECT_NEAR(r.witness.coefficient(dim_mask(n)), 2.0 / 3.0, 1e-9);
    EXPECT_EQ(r.witness.coefficients().size(), 1U);
  }
}

TEST(ApproxNorm, AndOfTwoBits) {
  // Reference optimum: (1/3)(chi_0 + chi_1 + chi_2 - chi_3).
  const auto r = approx_spectral_norm(and_function(2), 1.0 / 3.0);
  EXPECT_NEAR(r.value, 4.0 / 3.0, 1e-9);
  EXPECT_TRUE(verify_approximation(r.witness, and_function(2), 1.0 / 3.0));
}

TEST(ApproxNorm, BallReferenceValues) {
  const double expected[] = {4.0 / 3.0, 4.0 / 3.0, 13.0 / 6.0, 8.0 / 3.0};
  for (unsigned n = 2; n <= 5; ++n) {
    EXPECT_NEAR(approx_spectral_norm(gen_ball(n), 1.0 / 3.0).value, expected[n - 2], 1e-9) << n;
  }
}

TEST(ApproxNorm, AlphaZeroRecoversSpectralNorm) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 10; ++i) {
    const BooleanFunction f = random_function(3 + i % 2, rng);
    EXPECT_NEAR(approx_spectral_norm(f, 0.0).value, to_double(spectral_norm(wht(f))), 1e-9);
  }
}

TEST(ApproxNorm, WitnessIsFeasibleAndNonIncreasingInAlpha) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 5; ++i) {
    const BooleanFunction f = random_function(4, rng);
    double previous = 1e9;
    for (const double alpha : {0.0, 0.1, 0.2, 1.0 / 3.0, 0.5, 0.9}) {
      const auto r = approx_spectral_norm(f, alpha);
      EXPECT_TRUE(verify_approximation(r.witness, f, alpha));
      EXPECT_NEAR(r.value, r.witness.spectral_norm(), 1e-12);
      EXPECT_LE(r.value, previous + 1e-9);
      previous = r.value;
    }
  }
}

TEST(ApproxNorm, InvariantUnderRenaming) {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 5; ++i) {
    const BooleanFunction f = random_function(3, rng);
    const MatrixF2 m = random_invertible(3, rng);
    EXPECT_NEAR(approx_spectral_norm(f, 1.0 / 3.0).value, approx_spectral_norm(compose(f, m), 1.0 / 3.0).value, 1e-6);
  }
}

TEST(ApproxNorm, NegationInvariant) {
  const BooleanFunction f = random_function(4, 34);
  EXPECT_NEAR(approx_spectral_norm(f, 0.25).value, approx_spectral_norm(-f, 0.25).value, 1e-9);
}

TEST(ApproxNorm, Refusals) {
  EXPECT_THROW(approx_spectral_norm(random_function(7, 1), 0.2), std::domain_error);
  EXPECT_THROW(approx_spectral_norm(random_function(3, 1), 1.0), std::invalid_argument);
  EXPECT_THROW(approx_spectral_norm(random_function(3, 1), -0.1), std::invalid_argument);
}

TEST(VerifyApproximation, DetectsViolation) {
  RealFunction p(2);
  p.set(0, 0.5);
  EXPECT_FALSE(verify_approximation(p, BooleanFunction::constant(2, 1), 0.4));
  EXPECT_TRUE(verify_approximation(p, BooleanFunction::constant(2, 1), 0.5));
}

TEST(NormCeiling, AbsorbsSolverNoise) {
  EXPECT_EQ(norm_ceiling(2.0 / 3.0), 1);
  EXPECT_EQ(norm_ceiling(1.0 + 1e-12), 1);
  EXPECT_EQ(norm_ceiling(4.0 / 3.0), 2);
  EXPECT_EQ(norm_ceiling(0.0), 1);
  EXPECT_EQ(norm_ceiling(2.0 - 1e-12), 2);
}

}  // namespace
}  // namespace liniso
