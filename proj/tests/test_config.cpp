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
#include <cstdlib>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "phonogw/config.hpp"
#include "phonogw/overlay.hpp"

namespace phonogw {
namespace {

const std::string kBase = R"(
[physics]
trap_length = 1 um
sound_speed = 10 mm_per_s
temperature = 50 nK

[seed]
r = 2

[channel]
rate_per_strain_hz = 11105.4
reference_fundamental = 5 kHz

[wave]
epsilon = 1e-21
duration = 1 s

[sweep]
axis = time
values = 1 ms, 10 ms, 1000 w1t
)";

std::string data_path(const std::string& name) {
  const char* dir = std::getenv("PHONOGW_TEST_DATA");
  return std::string(dir ? dir : "tests/data") + "/" + name;
}

ErrorKind parse_error_kind(const std::string& text) {
  try {
    parse_config_string(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "config parsed without error:\n" << text;
  return ErrorKind::InvalidArgument;
}

TEST(Config, ParsesUnitsToSi) {
  const auto cfg = parse_config_string(kBase);
  EXPECT_DOUBLE_EQ(cfg.physics.trap_length, 1e-6);
  EXPECT_DOUBLE_EQ(cfg.physics.sound_speed, 1e-2);
  EXPECT_NEAR(cfg.physics.temperature, 50e-9, 1e-21);
  EXPECT_NEAR(cfg.reference_fundamental, 2 * constants::kPi * 5e3, 1e-9);
  EXPECT_DOUBLE_EQ(cfg.channel.channel_phase, constants::kPi / 2);
  EXPECT_EQ(cfg.channel.provenance, "unspecified");
  ASSERT_EQ(cfg.grid.size(), 3u);
  EXPECT_DOUBLE_EQ(cfg.grid[0], 1e-3);
  EXPECT_NEAR(cfg.grid[2], 1000 / (2 * constants::kPi * 5e3), 1e-15);
  EXPECT_FALSE(cfg.omega);
}

TEST(Config, FundamentalReplacesSoundSpeed) {
  std::string text = kBase;
  text.replace(text.find("sound_speed = 10 mm_per_s"), 25, "fundamental = 5 kHz");
  const auto cfg = parse_config_string(text);
  EXPECT_NEAR(cfg.fundamental(), 2 * constants::kPi * 5e3, 1e-9);
  EXPECT_NEAR(cfg.physics.sound_speed, 1e-2, 1e-15);
}

TEST(Config, RejectsBadInput) {
  auto with = [](const std::string& from, const std::string& to) {
    std::string t = kBase;
    t.replace(t.find(from), from.size(), to);
    return t;
  };
  EXPECT_EQ(parse_error_kind(with("r = 2", "r = 2\nfoo = 1")), ErrorKind::Parse);
  EXPECT_EQ(parse_error_kind(with("1 um", "1 kg")), ErrorKind::Parse);
  EXPECT_EQ(parse_error_kind(with("1 um", "1")), ErrorKind::Parse);
  EXPECT_EQ(parse_error_kind(with("50 nK", "50 parsecs")), ErrorKind::Parse);
  EXPECT_EQ(parse_error_kind(with("1 ms, 10 ms", "10 ms, 1 ms")), ErrorKind::Parse);
  EXPECT_EQ(parse_error_kind(with("axis = time", "axis = wavelength")), ErrorKind::Parse);
  EXPECT_EQ(parse_error_kind(with("duration = 1 s", "")), ErrorKind::Parse);
  EXPECT_EQ(parse_error_kind(with("[seed]", "[extras]\nx = 1\n[seed]")), ErrorKind::Parse);
  EXPECT_EQ(parse_error_kind(with("sound_speed = 10 mm_per_s",
                                  "sound_speed = 10 mm_per_s\nfundamental = 5 kHz")),
            ErrorKind::Parse);
  EXPECT_EQ(parse_error_kind(with("temperature = 50 nK", "temperature = -5 nK")),
            ErrorKind::Parse);
  EXPECT_EQ(parse_error_kind(with("r = 2", "r = two")), ErrorKind::Parse);
}

TEST(Config, GeneratedGrid) {
  std::string t = kBase;
  t.replace(t.find("values = 1 ms, 10 ms, 1000 w1t"), 30,
            "start = 1 ms\nstop = 1 s\npoints = 4\nspacing = log");
  const auto cfg = parse_config_string(t);
  ASSERT_EQ(cfg.grid.size(), 4u);
  EXPECT_NEAR(cfg.grid[1], 1e-2, 1e-15);
  EXPECT_NEAR(cfg.grid[3], 1.0, 1e-14);
}

TEST(Config, HashIgnoresFormattingOnly) {
  const auto a = parse_config_string(kBase);
  std::string spaced = kBase;
  spaced.replace(spaced.find("r = 2"), 5, "r   =   2   ");
  spaced.insert(0, "; comment\n");
  const auto b = parse_config_string(spaced);
  EXPECT_EQ(a.hash, b.hash);
  EXPECT_EQ(a.canonical, b.canonical);
  std::string changed = kBase;
  changed.replace(changed.find("r = 2"), 5, "r = 3");
  EXPECT_NE(parse_config_string(changed).hash, a.hash);
}

TEST(Config, PointSetupRescalesRateWithFundamental) {
  std::string t = kBase;
  t.replace(t.find("axis = time"), 11, "axis = frequency");
  t.replace(t.find("values = 1 ms, 10 ms, 1000 w1t"), 30, "values = 5 kHz, 10 kHz");
  t.replace(t.find("duration = 1 s"), 14, "duration = 10 w1t");
  const auto cfg = parse_config_string(t);
  const auto a = point_setup(cfg, cfg.grid[0]);
  const auto b = point_setup(cfg, cfg.grid[1]);
  EXPECT_NEAR(b.channel.rate_per_strain / a.channel.rate_per_strain, 2.0, 1e-12);
  EXPECT_NEAR(a.wave.duration / b.wave.duration, 2.0, 1e-12);
  EXPECT_NEAR(b.wave.omega, 3 * cfg.grid[1], 1e-6);
}

TEST(Config, MissingChannelAsksForCalibration) {
  std::string t = kBase;
  t.replace(t.find("[channel]"), 9, "[output]");
  t.replace(t.find("rate_per_strain_hz = 11105.4\nreference_fundamental = 5 kHz"), 58,
            "path = x.csv");
  const auto cfg = parse_config_string(t);
  EXPECT_FALSE(cfg.has_channel);
  EXPECT_THROW(point_setup(cfg, cfg.grid[0]), Error);
}

TEST(Config, ShippedConfigsParse) {
  for (const char* name : {"fig2a_m2_T0.ini", "fig3b_m6_T150_w1t.ini", "fig4.ini",
                           "oracle_m2.ini"}) {
    EXPECT_NO_THROW(load_config(std::string(PHONOGW_CONFIG_DIR) + "/" + name)) << name;
  }
}

TEST(Overlay, ReadsWellFormedCurve) {
  const auto c = overlay_ingest(data_path("overlay_ok.csv"));
  ASSERT_EQ(c.frequency_hz.size(), 3u);
  EXPECT_DOUBLE_EQ(c.characteristic_strain[1], 3e-23);
  EXPECT_TRUE(c.warnings.empty());
}

TEST(Overlay, EmptyCurveWarns) {
  const auto c = overlay_ingest(data_path("overlay_empty.csv"));
  EXPECT_TRUE(c.frequency_hz.empty());
  EXPECT_EQ(c.warnings.size(), 1u);
}

TEST(Overlay, ErrorsCarryLineNumbers) {
  const std::pair<const char*, const char*> cases[] = {
      {"overlay_negative.csv", ":3:"},
      {"overlay_bad_header.csv", ":1:"},
      {"overlay_unsorted.csv", ":3:"}};
  for (const auto& [file, where] : cases) {
    try {
      overlay_ingest(data_path(file));
      ADD_FAILURE() << file;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Parse);
      EXPECT_NE(std::string(e.what()).find(where), std::string::npos) << e.what();
    }
  }
  EXPECT_THROW(overlay_ingest(data_path("missing.csv")), Error);
}

TEST(Overlay, StreamSkipsComments) {
  std::istringstream in("# source: test\nfrequency_hz,characteristic_strain\n1,2\n");
  EXPECT_EQ(overlay_ingest_stream(in, "mem").frequency_hz.size(), 1u);
}

}  // namespace
}  // namespace phonogw
