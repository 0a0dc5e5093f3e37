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
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "phonogw/fit.hpp"
#include "phonogw/sweep.hpp"

namespace phonogw {
namespace {

std::string config_path(const std::string& name) {
  return std::string(PHONOGW_CONFIG_DIR) + "/" + name;
}

std::string csv_of(const SweepTable& table) {
  std::ostringstream out;
  write_csv(table, out);
  return out.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(PHONOGW_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Sweep, ByteIdenticalAcrossWorkerCounts) {
  const auto cfg = load_config(config_path("fig2a_m2_T0.ini"));
  const std::string one = csv_of(scan(cfg, 1));
  EXPECT_EQ(one, csv_of(scan(cfg, 3)));
  EXPECT_EQ(one, csv_of(scan(cfg, 8)));
  EXPECT_EQ(one, csv_of(scan(cfg, 1)));
}

TEST(Sweep, BoundFallsAsInverseTime) {
  const auto table = scan(load_config(config_path("fig2a_m2_T0.ini")), 1);
  std::vector<double> t, d;
  for (const auto& row : table.rows) {
    ASSERT_FALSE(row.failed);
    t.push_back(row.time);
    d.push_back(row.delta_eps);
  }
  EXPECT_NEAR(loglog_slope(t, d), -1.0, 1e-6);
  EXPECT_NEAR(table.rows.front().h_s / 2.3538526683702e17, 1.0, 1e-9);
}

TEST(Sweep, OneNanokelvinMatchesZeroTemperature) {
  auto cfg = load_config(config_path("fig2a_m2_T0.ini"));
  const auto cold = scan(cfg, 1);
  cfg.physics.temperature = 1e-9;
  const auto warm = scan(cfg, 1);
  for (std::size_t i = 0; i < cold.rows.size(); ++i) {
    EXPECT_NEAR(warm.rows[i].delta_eps / cold.rows[i].delta_eps, 1.0, 1e-3);
  }
}

TEST(Sweep, ModePairsGiveDistinctCurves) {
  const auto m2 = scan(load_config(config_path("fig2a_m2_T0.ini")), 1);
  const auto m6 = scan(load_config(config_path("fig2a_m6_T0.ini")), 1);
  ASSERT_EQ(m2.rows.size(), m6.rows.size());
  EXPECT_GT(std::abs(m6.rows.back().delta_eps / m2.rows.back().delta_eps - 1.0), 0.1);
}

TEST(Sweep, FixedPhaseTimeFrequencySweepHasFlatBound) {
  // With omega_1 t held fixed, R t is constant: the bound does not move and
  // the density scales as omega_1^{-1/2}.
  const auto table = scan(load_config(config_path("fig3a_m2_T0_w1t.ini")), 1);
  const auto& a = table.rows.front();
  const auto& b = table.rows.back();
  EXPECT_NEAR(b.delta_eps / a.delta_eps, 1.0, 1e-9);
  EXPECT_NEAR(b.density / a.density, std::sqrt(a.omega1 / b.omega1), 1e-9);
}

TEST(Sweep, CountingColumnsOnlyWhenRequested) {
  const auto fig4 = scan(load_config(config_path("fig4.ini")), 1);
  for (const auto& row : fig4.rows) {
    ASSERT_TRUE(row.cfi);
    EXPECT_LE(*row.cfi, row.h_eps * (1 + 1e-9));
  }
  const auto fig2 = scan(load_config(config_path("fig2a_m2_T0.ini")), 1);
  EXPECT_FALSE(fig2.rows.front().cfi);
  EXPECT_TRUE(fig2.rows.front().bulk_qfi);
}

TEST(Sweep, CsvLayout) {
  const std::string csv = csv_of(scan(load_config(config_path("fig4.ini")), 1));
  EXPECT_EQ(csv.rfind("# phonogw ", 0), 0u);
  EXPECT_NE(csv.find(std::string(kSweepColumns) + "\n"), std::string::npos);
  EXPECT_NE(csv.find("# config_hash "), std::string::npos);
}

TEST(Cli, ExitCodes) {
  const auto out = (std::filesystem::temp_directory_path() / "phonogw_test_scan.csv").string();
  EXPECT_EQ(run_cli("scan -c " + config_path("fig4.ini") + " -o " + out), 0);
  EXPECT_TRUE(std::filesystem::exists(out));
  std::filesystem::remove(out);
  EXPECT_EQ(run_cli("validate -c " + config_path("fig2a_m2_T0.ini")), 0);
  // 150 nK exceeds the chemical potential of 100 nK: depletion check fails.
  EXPECT_EQ(run_cli("validate -c " + config_path("fig2a_m2_T150.ini")), 4);
  EXPECT_EQ(run_cli("scan -c " + config_path("oracle_m2.ini") + " -o -"), 2);
  EXPECT_EQ(run_cli("qfi -c /nonexistent.ini"), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
}

TEST(Cli, ScanMatchesLibrary) {
  const auto out = (std::filesystem::temp_directory_path() / "phonogw_test_scan2.csv").string();
  ASSERT_EQ(run_cli("scan -w 2 -c " + config_path("fig2a_m2_T0.ini") + " -o " + out), 0);
  std::ifstream in(out);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), csv_of(scan(load_config(config_path("fig2a_m2_T0.ini")), 1)));
  std::filesystem::remove(out);
}

}  // namespace
}  // namespace phonogw
