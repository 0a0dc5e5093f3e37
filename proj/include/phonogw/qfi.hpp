// Copyright 2026 The phonogw Authors
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

// Quantum Fisher information from the fidelity increment
//
//   H = 8 (1 - sqrt F(sigma(x), sigma(x + h))) / h^2
//
// evaluated on a geometric ladder of steps and Richardson-extrapolated. The
// one-sided increment carries an O(h) error, so the extrapolation removes the
// h and h^2 terms in turn.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "phonogw/error.hpp"
#include "phonogw/fidelity.hpp"
#include "phonogw/scalar.hpp"

namespace phonogw {

struct DifferencingPolicy {
  double base_step = 1e-3;
  std::vector<double> ladder{1.0, 0.5, 0.25};
  // The base step is shrunk until 1 - sqrt F falls below this, which keeps
  // the ladder inside the quadratic regime even when H is huge.
  double max_deficit = 1e-14;
  // Deficits at or below this are rounding noise: the map carries no
  // information and H = 0.
  double noise_floor = 1e-45;
  double spread_tol = 1e-3;
  int max_shrinks = 200;
};

/// Defaults suited to plain double arithmetic (moderate squeezing only). The
/// root in the fidelity carries about 1e-8 absolute error in double, so the
/// deficit is kept near 1e-4 and results are good to roughly 1e-3.
inline DifferencingPolicy double_precision_policy() {
  DifferencingPolicy p;
  p.base_step = 1e-2;
  p.max_deficit = 1e-4;
  p.noise_floor = 1e-7;
  p.spread_tol = 1e-2;
  return p;
}

struct QfiRung {
  double step = 0;
  double estimate = 0;
  double one_minus_sqrt_f = 0;
  // Pieces of D - 1 = (sqrt(Gamma) - 1) + sqrt(Lambda) - sqrt(root argument).
  double sqrt_gamma_minus_one = 0;
  double sqrt_lambda = 0;
  double sqrt_root_argument = 0;
};

struct QfiResult {
  double value = 0;
  double step = 0;  // base step of the ladder actually used
  std::vector<QfiRung> ladder;
  double spread = 0;  // max relative disagreement between raw rungs
};

template <class Scalar, class StateMap>
QfiResult qfi(StateMap&& state_map, const Scalar& x0, const DifferencingPolicy& policy = {}) {
  require(!policy.ladder.empty() && policy.base_step > 0, ErrorKind::InvalidArgument,
          "qfi: empty ladder or non-positive step");
  const auto reference = state_map(x0);

  auto rung_at = [&](double h) {
    const auto shifted = state_map(Scalar(x0 + Scalar(h)));
    const auto fid = uhlmann_fidelity<Scalar>(reference, shifted);
    using std::sqrt;
    QfiRung rung;
    rung.step = h;
    rung.one_minus_sqrt_f = to_double(fid.one_minus_sqrt_f);
    rung.estimate = 8.0 * rung.one_minus_sqrt_f / (h * h);
    rung.sqrt_gamma_minus_one = to_double(Scalar((fid.gamma - Scalar(1)) / (sqrt(fid.gamma) + Scalar(1))));
    rung.sqrt_lambda = to_double(Scalar(sqrt(fid.lambda)));
    rung.sqrt_root_argument = to_double(Scalar(sqrt(fid.root_argument)));
    return rung;
  };

  QfiResult result;
  double h = policy.base_step;
  QfiRung probe = rung_at(h);
  if (std::abs(probe.one_minus_sqrt_f) <= policy.noise_floor) {
    result.step = h;
    result.ladder.push_back(probe);
    result.value = 0;
    return result;
  }
  int shrinks = 0;
  while (probe.one_minus_sqrt_f > policy.max_deficit) {
    require(++shrinks <= policy.max_shrinks, ErrorKind::NumericFailure,
            "qfi: could not reach the quadratic regime by shrinking the step");
    h *= 0.5 * std::sqrt(policy.max_deficit / probe.one_minus_sqrt_f);
    probe = rung_at(h);
  }
  result.step = h;

  for (double factor : policy.ladder) {
    result.ladder.push_back(factor == 1.0 ? probe : rung_at(h * factor));
  }

  // Richardson with error exponents 1, 2, ... on a ladder of constant ratio.
  std::vector<double> table;
  for (const auto& rung : result.ladder) table.push_back(rung.estimate);
  bool geometric = result.ladder.size() >= 2;
  for (std::size_t i = 2; geometric && i < policy.ladder.size(); ++i) {
    const double r0 = policy.ladder[1] / policy.ladder[0];
    geometric = std::abs(policy.ladder[i] / policy.ladder[i - 1] - r0) < 1e-12;
  }
  if (geometric) {
    const double ratio = policy.ladder[0] / policy.ladder[1];
    for (std::size_t order = 1; order < table.size(); ++order) {
      const double weight = std::pow(ratio, static_cast<double>(order));
      for (std::size_t i = table.size() - 1; i >= order; --i) {
        table[i] = (weight * table[i] - table[i - 1]) / (weight - 1.0);
      }
    }
  }
  result.value = table.back();

  double lo = result.ladder.front().estimate;
  double hi = lo;
  for (const auto& rung : result.ladder) {
    lo = std::min(lo, rung.estimate);
    hi = std::max(hi, rung.estimate);
  }
  result.spread = (hi - lo) / std::max(std::abs(result.value), std::numeric_limits<double>::min());
  if (result.spread > policy.spread_tol) {
    std::string rungs;
    for (const auto& rung : result.ladder) {
      rungs += fmt::format(" (h={:.3e}, H={:.10e})", rung.step, rung.estimate);
    }
    fail(ErrorKind::NumericFailure,
         fmt::format("qfi ladder did not converge: spread {:.3e} > {:.1e};{}", result.spread,
                     policy.spread_tol, rungs));
  }
  return result;
}

}  // namespace phonogw
