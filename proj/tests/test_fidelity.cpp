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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "phonogw/bec_model.hpp"
#include "phonogw/fidelity.hpp"
#include "phonogw/gaussian.hpp"

namespace phonogw {
namespace {

using Cov = CovarianceMatrix<double>;
using HpCov = CovarianceMatrix<HighPrecision>;

Cov tmsv(double s, double theta = 0) {
  return apply_symplectic(two_mode_squeezer<double>(s, theta), Cov::vacuum(2));
}

Cov thermal(double nu_a, double nu_b) {
  Matrix<double> m = Matrix<double>::Zero(4, 4);
  m(0, 0) = m(1, 1) = nu_a;
  m(2, 2) = m(3, 3) = nu_b;
  return Cov(m);
}

TEST(Fidelity, IdenticalStatesGiveOne) {
  // For mixed states the root argument cancels to zero, so double precision
  // keeps only about half its digits there.
  for (const auto& st : {Cov::vacuum(2), tmsv(0.7, 0.3), thermal(1.5, 3.0)}) {
    const auto f = uhlmann_fidelity(st, st);
    EXPECT_NEAR(f.fidelity, 1.0, 1e-7);
    EXPECT_NEAR(f.one_minus_sqrt_f, 0.0, 1e-7);
  }
  Matrix<HighPrecision> m = Matrix<HighPrecision>::Zero(4, 4);
  m(0, 0) = m(1, 1) = HighPrecision("1.5");
  m(2, 2) = m(3, 3) = HighPrecision(3);
  const auto st = apply_symplectic(two_mode_squeezer<HighPrecision>(HighPrecision("0.7"),
                                                                    HighPrecision("0.3")),
                                   HpCov(m));
  const auto f = uhlmann_fidelity<HighPrecision>(st, st);
  EXPECT_LT(std::abs(to_double(f.one_minus_sqrt_f)), 1e-12);
}

TEST(Fidelity, VacuumAgainstTwoModeSqueezedVacuum) {
  for (double s : {0.01, 0.1, 0.5, 1.0, 2.0}) {
    const double expected = 1.0 / std::pow(std::cosh(s), 2);
    EXPECT_NEAR(uhlmann_fidelity(Cov::vacuum(2), tmsv(s)).fidelity / expected, 1.0, 1e-10)
        << "s=" << s;
  }
}

TEST(Fidelity, ThermalProductStates) {
  // Commuting (diagonal) states: F is the squared Bhattacharyya sum over
  // the geometric photon-number distributions, mode by mode.
  auto bhattacharyya = [](double a, double b) {
    const double na = (a - 1) / 2, nb = (b - 1) / 2;
    double sum = 0;
    for (int k = 0; k < 4000; ++k) {
      const double pa = std::pow(na, k) / std::pow(na + 1, k + 1);
      const double pb = std::pow(nb, k) / std::pow(nb + 1, k + 1);
      sum += std::sqrt(pa * pb);
    }
    return sum * sum;
  };
  const double a1 = 1.5, b1 = 3.0, a2 = 2.0, b2 = 1.2;
  const double expected = bhattacharyya(a1, b1) * bhattacharyya(a2, b2);
  EXPECT_NEAR(uhlmann_fidelity(thermal(a1, a2), thermal(b1, b2)).fidelity, expected, 1e-9);
}

TEST(Fidelity, SymmetricAndBounded) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.5);
  std::uniform_real_distribution<double> nu(1.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const auto a = apply_symplectic(two_mode_squeezer<double>(u(rng), 4 * u(rng)),
                                    thermal(nu(rng), nu(rng)));
    const auto b = apply_symplectic(two_mode_squeezer<double>(u(rng), 4 * u(rng)),
                                    thermal(nu(rng), nu(rng)));
    const double fab = uhlmann_fidelity(a, b).fidelity;
    const double fba = uhlmann_fidelity(b, a).fidelity;
    EXPECT_NEAR(fab, fba, 1e-10 * std::max(1.0, fab));
    EXPECT_GT(fab, 0.0);
    EXPECT_LE(fab, 1.0 + 1e-10);
  }
}

TEST(Fidelity, InvariantUnderJointSymplectic) {
  const auto a = apply_symplectic(two_mode_squeezer<double>(0.4, 0.2), thermal(1.3, 2.1));
  const auto b = apply_symplectic(two_mode_squeezer<double>(0.6, 1.1), thermal(1.1, 1.7));
  const auto u = two_mode_squeezer<double>(0.8, -0.5) * local_rotation<double>({0.3, 1.9});
  EXPECT_NEAR(uhlmann_fidelity(a, b).fidelity,
              uhlmann_fidelity(apply_symplectic(u, a), apply_symplectic(u, b)).fidelity, 1e-10);
}

TEST(Fidelity, DeficitKeepsPrecisionForNearbyStates) {
  // 1 - sqrt F for TMSV(s) against vacuum is 1 - sech s ~ s^2 / 2.
  const double s = 1e-4;
  const auto f = uhlmann_fidelity(Cov::vacuum(2), tmsv(s));
  EXPECT_NEAR(f.one_minus_sqrt_f / (s * s / 2), 1.0, 1e-4);

  const HighPrecision hs("1e-30");
  const auto hf = uhlmann_fidelity<HighPrecision>(
      HpCov::vacuum(2), apply_symplectic(two_mode_squeezer<HighPrecision>(hs, HighPrecision(0)),
                                         HpCov::vacuum(2)));
  EXPECT_NEAR(to_double(HighPrecision(hf.one_minus_sqrt_f / (hs * hs / 2))), 1.0, 1e-12);
}

TEST(Fidelity, RejectsNonPhysicalStates) {
  Matrix<double> m = Matrix<double>::Identity(4, 4) * 0.5;
  EXPECT_THROW(uhlmann_fidelity(Cov(m), Cov::vacuum(2)), Error);
  EXPECT_THROW(uhlmann_fidelity(Cov::vacuum(1), Cov::vacuum(1)), Error);
}

}  // namespace
}  // namespace phonogw
