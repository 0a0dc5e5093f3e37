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

#include <gtest/gtest.h>

#include "phonogw/bounds.hpp"
#include "phonogw/bulk.hpp"
#include "phonogw/gw_channel.hpp"

namespace phonogw {
namespace {

WaveParams resonant(double eps) {
  const PhysicalParams p;
  return {eps, resonant_frequency(p, {1, 2}), 1.0};
}

TEST(Bulk, WavenumberConventions) {
  const PhysicalParams p;
  EXPECT_DOUBLE_EQ(bulk_wavenumber(p, BulkWavenumber::PiOverL), constants::kPi / 1e-6);
  EXPECT_DOUBLE_EQ(bulk_wavenumber(p, BulkWavenumber::TwoPiOverL), 2 * constants::kPi / 1e-6);
  EXPECT_EQ(parse_bulk_wavenumber("two_pi_over_L"), BulkWavenumber::TwoPiOverL);
  EXPECT_EQ(parse_bulk_wavenumber("pi_over_L"), BulkWavenumber::PiOverL);
  EXPECT_THROW(parse_bulk_wavenumber("pi"), Error);
}

TEST(Bulk, FreePhaseWithoutStrain) {
  const PhysicalParams p;
  const double k = constants::kPi / p.trap_length;
  const double rate = constants::kHbar * k * k / (2 * p.atom_mass);
  EXPECT_NEAR(bulk_phase(p, resonant(0.0), 0.3) / (-rate * 0.3), 1.0, 1e-14);
}

TEST(Bulk, DerivativeMatchesFiniteDifference) {
  const PhysicalParams p;
  const double t = 0.123;
  const double h = 1e-4;
  const double fd = (bulk_phase(p, resonant(h), t) - bulk_phase(p, resonant(-h), t)) / (2 * h);
  EXPECT_NEAR(bulk_state(p, resonant(0.0), t).dphase_deps / fd, 1.0, 1e-8);
}

TEST(Bulk, QfiIsBoundedByItsMaximum) {
  const PhysicalParams p;
  const double max = bulk_state(p, resonant(1e-21), 0.0).qfi_max;
  EXPECT_NEAR(max / 1.46392914950916e-3, 1.0, 1e-9);
  EXPECT_NEAR(bulk_state(p, resonant(1e-21), 0.0, BulkWavenumber::TwoPiOverL).qfi_max /
                  2.34228663921466e-2,
              1.0, 1e-9);
  for (double t : {1e-3, 0.01, 0.5, 7.0, 100.0}) {
    EXPECT_LE(bulk_qfi(p, resonant(1e-21), t), max * (1 + 1e-12));
  }
  // Maximum reached at Omega t = 0 mod pi.
  EXPECT_NEAR(bulk_qfi(p, resonant(1e-21), 0.0) / max, 1.0, 1e-12);
}

TEST(Bulk, SignOfStrainDoesNotChangeInformation) {
  const PhysicalParams p;
  EXPECT_DOUBLE_EQ(bulk_qfi(p, resonant(1e-3), 0.2), bulk_qfi(p, resonant(-1e-3), 0.2));
}

TEST(Bulk, RequiresPositiveFrequency) {
  WaveParams w = resonant(0.0);
  w.omega = 0;
  EXPECT_THROW(bulk_state(PhysicalParams{}, w, 1.0), Error);
}

TEST(Bulk, CrossoverTime) {
  const double t = bulk_crossover_time(4.0, 1e4, 1.6e-3);
  EXPECT_NEAR(4.0 * std::pow(1e4 * t, 2), 1.6e-3, 1e-15);
  EXPECT_THROW(bulk_crossover_time(0.0, 1e4, 1.0), Error);
}

TEST(Bounds, CramerRao) {
  EXPECT_DOUBLE_EQ(cramer_rao_bound(4.0, 1), 0.5);
  EXPECT_DOUBLE_EQ(cramer_rao_bound(4.0, 100), 0.05);
  EXPECT_THROW(cramer_rao_bound(4.0, 0), Error);
  try {
    cramer_rao_bound(0.0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UndefinedBound);
  }
  EXPECT_THROW(cramer_rao_bound(std::nan(""), 1), Error);
}

TEST(Bounds, SensitivityDensity) {
  EXPECT_DOUBLE_EQ(sensitivity_density(2e-20, 4.0), 4e-20);
  EXPECT_THROW(sensitivity_density(1.0, 0.0), Error);
}

}  // namespace
}  // namespace phonogw
