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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "liniso/fourier.hpp"
#include "liniso/simplex.hpp"

namespace liniso {

inline constexpr unsigned kMaxLpDim = 6;
inline constexpr double kApproxTolerance = 1e-9;

struct ApproxNormResult {
  double value = 0.0;      // ||f||_{1,alpha}
  RealFunction witness;    // p attaining it
  double alpha = 0.0;
};

// True iff |p(x) - f(x)| <= alpha (+1e-9) at every point.
inline bool verify_approximation(const RealFunction& p, const BooleanFunction& f, double alpha) {
  check_same_dim(p.dim(), f.dim());
  const auto values = p.evaluate_all();
  for (std::size_t x = 0; x < values.size(); ++x) {
    if (std::abs(values[x] - f.values()[x]) > alpha + kApproxTolerance) return false;
  }
  return true;
}

// Minimizes sum_S (c+_S + c-_S) subject to
//   f(x) - alpha <= sum_S (c+_S - c-_S) chi_S(x) <= f(x) + alpha   for all x,
// with c+, c- >= 0. The witness has coefficients c+ - c-.
inline ApproxNormResult approx_spectral_norm(const BooleanFunction& f, double alpha) {
  const unsigned n = f.dim();
  if (n > kMaxLpDim) {
    throw std::domain_error("approximate spectral norm refused for n = " + std::to_string(n) +
                            " (supported: 1.." + std::to_string(kMaxLpDim) + ")");
  }
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");

  const std::size_t size = f.size();
  LinearProgram lp;
  lp.objective.assign(2 * size, 1.0);
  lp.a_ub.reserve(2 * size);
  lp.b_ub.reserve(2 * size);
  for (std::size_t x = 0; x < size; ++x) {
    std::vector<double> upper(2 * size);
    std::vector<double> lower(2 * size);
    for (std::size_t s = 0; s < size; ++s) {
      const double c = chi(static_cast<Word>(s), static_cast<Word>(x));
      upper[s] = c;
      upper[size + s] = -c;
      lower[s] = -c;
      lower[size + s] = c;
    }
    lp.a_ub.push_back(std::move(upper));
    lp.b_ub.push_back(f.values()[x] + alpha);
    lp.a_ub.push_back(std::move(lower));
    lp.b_ub.push_back(-(f.values()[x] - alpha));
  }

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) {
    // p = f is always feasible and the objective is bounded below by 0.
    throw LpError("approximate spectral norm LP did not reach an optimum");
  }

  ApproxNormResult out{0.0, RealFunction(n), alpha};
  for (std::size_t s = 0; s < size; ++s) {
    const double c = sol.x[s] - sol.x[size + s];
    if (std::abs(c) > 1e-12) out.witness.set(static_cast<Word>(s), c);
  }
  out.value = out.witness.spectral_norm();
  if (!verify_approximation(out.witness, f, alpha)) {
    throw LpError("approximate spectral norm witness failed the feasibility recheck");
  }
  return out;
}

// ceil(||f||_{1,alpha}) with solver noise around integers absorbed; at least 1.
inline int norm_ceiling(double value) {
  return std::max(1, static_cast<int>(std::ceil(value - kApproxTolerance)));
}

}  // namespace liniso
