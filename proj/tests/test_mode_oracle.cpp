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
#include <vector>

#include <gtest/gtest.h>

#include "phonogw/fit.hpp"
#include "phonogw/gw_channel.hpp"
#include "phonogw/mode_oracle.hpp"

namespace phonogw {
namespace {

// Fitted with the default calibration sweep (L = 1 um, c_s = 10 mm/s).
constexpr double kRate12 = 11105.409750825518;

PhysicalParams params() { return PhysicalParams{}; }

double abs_beta(const PhysicalParams& p, double eps, double w1t, OracleConfig cfg = {}) {
  cfg.samples = 1;
  return simulate_moving_boundary(p, {1, 2}, resonant_wave(p, {1, 2}, eps, w1t), cfg)
      .series.back()
      .abs_beta;
}

TEST(OracleConfig, Validation) {
  OracleConfig cfg;
  cfg.truncation = 5;
  EXPECT_THROW(validate(cfg, {1, 2}), Error);
  cfg.truncation = 8;
  EXPECT_NO_THROW(validate(cfg, {1, 2}));
  EXPECT_THROW(validate(cfg, {1, 6}), Error);
  cfg.rel_tol = 1e-6;
  EXPECT_THROW(validate(cfg, {1, 2}), Error);
}

TEST(MovingBoundary, FreeEvolutionWithoutStrain) {
  const auto p = params();
  const auto r = simulate_moving_boundary(p, {1, 2}, resonant_wave(p, {1, 2}, 0.0, 50.0));
  EXPECT_LE(r.final.beta.cwiseAbs().maxCoeff(), 1e-12);
  for (int k = 0; k < r.final.n_modes(); ++k) {
    EXPECT_NEAR(std::abs(r.final.alpha(k, k)), 1.0, 1e-9);
  }
  const double w1t = 50.0;
  // alpha_11 = e^{-i omega_1 t}.
  EXPECT_NEAR(std::abs(std::remainder(std::arg(r.final.alpha(0, 0)) + w1t, 2 * constants::kPi)),
              0.0, 1e-7);
}

TEST(MovingBoundary, ResonantGrowthIsLinear) {
  const auto p = params();
  OracleConfig cfg;
  cfg.samples = 20;
  const auto r = simulate_moving_boundary(p, {1, 2}, resonant_wave(p, {1, 2}, 1e-5, 200.0), cfg);
  std::vector<double> t, b;
  for (const auto& s : r.series) {
    if (mode_frequency(p, 1) * s.time < 20.0) continue;
    t.push_back(s.time);
    b.push_back(s.abs_beta);
  }
  const auto fit = linear_fit(t, b);
  EXPECT_LT(fit.max_abs_residual / b.back(), 0.02);
  EXPECT_NEAR(fit.slope / (1e-5 * kRate12), 1.0, 0.01);
}

TEST(MovingBoundary, MatchesFirstOrderRate) {
  // |beta_12| at omega_1 t = 100 from an independent DOP853 run (scipy), and
  // the rotating-wave value eps omega_1 t sqrt(2) / 4.
  const double b = abs_beta(params(), 1e-5, 100.0);
  EXPECT_NEAR(b / 3.5358e-4, 1.0, 1e-3);
  EXPECT_NEAR(b / (1e-5 * 100.0 * std::sqrt(2.0) / 4), 1.0, 0.01);
}

TEST(MovingBoundary, LinearInStrain) {
  const double a = abs_beta(params(), 1e-5, 100.0);
  const double b = abs_beta(params(), 5e-6, 100.0);
  EXPECT_NEAR(a / b, 2.0, 0.02);
  const double c = abs_beta(params(), 1e-3, 100.0);
  EXPECT_NEAR(c / a, 100.0, 1.0);
}

TEST(MovingBoundary, DetunedDriveStaysBounded) {
  const auto p = params();
  auto wave = resonant_wave(p, {1, 2}, 1e-5, 200.0);
  wave.omega *= 1.1;
  const auto r = simulate_moving_boundary(p, {1, 2}, wave);
  double peak = 0;
  for (const auto& s : r.series) peak = std::max(peak, s.abs_beta);
  EXPECT_LT(peak, 0.05 * abs_beta(p, 1e-5, 200.0));
}

TEST(MovingBoundary, IdentityResidualWithinTenTolerances) {
  const auto p = params();
  OracleConfig cfg;
  const auto r = simulate_moving_boundary(p, {1, 2}, resonant_wave(p, {1, 2}, 1e-3, 200.0), cfg);
  EXPECT_LE(r.identity_residual, 10 * cfg.rel_tol);
}

TEST(MovingBoundary, Convergence) {
  const auto p = params();
  OracleConfig cfg;
  cfg.check_convergence = true;
  const auto r = simulate_moving_boundary(p, {1, 2}, resonant_wave(p, {1, 2}, 1e-5, 100.0), cfg);
  ASSERT_TRUE(r.convergence.computed);
  EXPECT_LT(r.convergence.truncation_delta, 5e-3);
  EXPECT_LT(r.convergence.tolerance_delta, 1e-3);
}

TEST(MovingBoundary, FullStrainConventionDoublesRate) {
  OracleConfig full;
  full.convention = LengthConvention::FullStrain;
  EXPECT_NEAR(abs_beta(params(), 1e-5, 100.0, full) / abs_beta(params(), 1e-5, 100.0), 2.0,
              0.02);
}

TEST(ExtractRate, DefaultSweepReproducesShippedRate) {
  const auto p = params();
  const auto cal = extract_rate(p, {1, 2}, default_calibration_sweep(p));
  EXPECT_NEAR(cal.model.rate_per_strain / kRate12, 1.0, 1e-8);
  EXPECT_LT(cal.fit_residual, 0.02);
  EXPECT_LE(cal.identity_residual, 1e-6);
  EXPECT_NE(cal.model.provenance.find("mode-oracle"), std::string::npos);
}

TEST(ExtractRate, ScalesWithFundamental) {
  std::vector<double> ratio;
  for (double length : {0.5e-6, 1e-6, 2e-6}) {
    PhysicalParams p;
    p.trap_length = length;
    const auto cal = extract_rate(p, {1, 2}, default_calibration_sweep(p));
    ratio.push_back(cal.model.rate_per_strain / mode_frequency(p, 1));
  }
  EXPECT_NEAR(ratio[0] / ratio[1], 1.0, 0.01);
  EXPECT_NEAR(ratio[2] / ratio[1], 1.0, 0.01);
}

TEST(ExtractRate, RejectsBadSweeps) {
  const auto p = params();
  const double w1 = mode_frequency(p, 1);
  std::vector<std::pair<double, double>> few{{1e-5, 50 / w1}, {1e-5, 100 / w1}};
  EXPECT_THROW(extract_rate(p, {1, 2}, few), Error);
  auto sweep = default_calibration_sweep(p);
  sweep.front().first = 1e-2;
  EXPECT_THROW(extract_rate(p, {1, 2}, sweep), Error);
  sweep = default_calibration_sweep(p);
  sweep.front().second = 500 / w1;
  EXPECT_THROW(extract_rate(p, {1, 2}, sweep), Error);
}

TEST(ExtractRate, ChannelSqueezingMatchesOracle) {
  // s = eps R t against |beta_12| from the oracle; linearity carries the
  // comparison down to physical strains.
  const auto p = params();
  const auto wave = resonant_wave(p, {1, 2}, 1e-6, 100.0);
  const ChannelModel m{kRate12, constants::kPi / 2, "oracle"};
  EXPECT_NEAR(channel_squeezing(wave, m) / abs_beta(p, 1e-6, 100.0), 1.0, 0.05);
}

TEST(ExtractRate, OracleOutputIsSymplectic) {
  const auto p = params();
  const auto r = simulate_moving_boundary(p, {1, 2}, resonant_wave(p, {1, 2}, 1e-3, 100.0));
  const auto s = bogoliubov_to_symplectic(r.final);
  EXPECT_LE(symplectic_residual<double>(s.matrix()), 1e-6);
}

}  // namespace
}  // namespace phonogw
