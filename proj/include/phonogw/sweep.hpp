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

// Parameter sweeps over time, fundamental frequency, temperature or seed
// squeezing. Points are evaluated concurrently and assembled in grid order.

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "phonogw/bounds.hpp"
#include "phonogw/bulk.hpp"
#include "phonogw/config.hpp"
#include "phonogw/metrology.hpp"
#include "phonogw/overlay.hpp"
#include "phonogw/phonon_counting.hpp"
#include "phonogw/version.hpp"

namespace phonogw {

struct SweepRow {
  double axis_value = 0;
  double time = 0;
  double omega1 = 0;
  double temperature = 0;
  double r = 0;
  double s = 0;  // channel squeezing eps R t
  double h_s = NAN;
  double h_eps = NAN;
  double qfi_spread = NAN;
  double delta_eps = NAN;
  double density = NAN;
  std::optional<double> cfi;
  std::optional<double> cfi_delta_eps;
  std::optional<double> bulk_qfi;
  std::optional<double> bulk_qfi_max;
  std::optional<double> bulk_density;  // from the time maximum of the bulk QFI
  std::string regime;
  std::vector<std::string> flags;
  bool failed = false;
  ErrorKind failure = ErrorKind::NumericFailure;
};

struct SweepTable {
  std::vector<std::string> metadata;
  std::vector<SweepRow> rows;
  std::vector<std::string> warnings;
  double failed_fraction = 0;

  bool run_failed() const { return failed_fraction > 0.2; }
};

inline constexpr const char* kSweepColumns =
    "axis_value,time_s,omega1_rad_per_s,temperature_k,r,s,h_s,h_eps,qfi_spread,"
    "delta_eps_bound,sensitivity_density,cfi,cfi_delta_eps_bound,bulk_qfi,bulk_qfi_max,"
    "bulk_sensitivity_density,regime_flags,status";

/// Worker count from PHONOGW_WORKERS, else the hardware concurrency.
inline int default_workers() {
  if (const char* env = std::getenv("PHONOGW_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

inline SweepRow evaluate_point(const SweepConfig& cfg, double axis_value) {
  SweepRow row;
  row.axis_value = axis_value;
  const auto pt = point_setup(cfg, axis_value);
  row.time = pt.wave.duration;
  row.omega1 = mode_frequency(pt.physics, 1);
  row.temperature = pt.physics.temperature;
  row.r = pt.r;
  row.s = channel_squeezing(pt.wave, pt.channel);
  row.regime = validate_regime(pt.physics, cfg.modes, row.time).flags();

  auto record = [&](const Error& e, const char* stage) {
    row.flags.push_back(fmt::format("{}:{}", stage, to_string(e.kind())));
  };

  try {
    const auto thermal = thermal_spec(pt.physics, cfg.modes);
    const auto q = strain_qfi<HighPrecision>(thermal, pt.r, cfg.theta, pt.wave, pt.channel);
    row.h_s = q.h_s;
    row.h_eps = q.h_eps;
    row.qfi_spread = q.ladder.spread;
    row.delta_eps = cramer_rao_bound(row.h_eps, cfg.probes);
    row.density = sensitivity_density(row.delta_eps, row.time);
  } catch (const Error& e) {
    record(e, "qfi");
    row.failed = true;
    row.failure = e.kind();
  }

  if (cfg.cfi) {
    const double phase = std::remainder(cfg.channel.channel_phase, 2.0 * constants::kPi);
    if (std::abs(phase) > 1e-12) {
      row.flags.push_back("cfi:phase_not_aligned");
    } else {
      try {
        const auto thermal = thermal_spec(pt.physics, cfg.modes);
        const double u = pt.r + row.s;
        const auto dist =
            phonon_distribution(pt.r, row.s, thermal, suggested_jmax(u), cfg.cfi_variant);
        const auto f = classical_fisher(dist, pt.channel.rate_per_strain * row.time);
        row.cfi = f.value;
        if (f.value > 0) row.cfi_delta_eps = cramer_rao_bound(f.value, cfg.probes);
        if (f.excluded_outcomes > 0) row.flags.push_back("cfi:excluded_outcomes");
      } catch (const Error& e) {
        record(e, "cfi");
      }
    }
  }

  if (cfg.bulk) {
    try {
      const auto b = bulk_state(pt.physics, pt.wave, row.time, cfg.bulk_wavenumber);
      row.bulk_qfi = b.qfi;
      row.bulk_qfi_max = b.qfi_max;
      if (row.time > 0) {
        row.bulk_density = sensitivity_density(cramer_rao_bound(b.qfi_max, cfg.probes), row.time);
      }
    } catch (const Error& e) {
      record(e, "bulk");
    }
  }
  return row;
}

inline SweepTable scan(const SweepConfig& cfg, int workers = default_workers()) {
  SweepTable table;
  table.rows.resize(cfg.grid.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cfg.grid.size(); i = next++) {
      table.rows[i] = evaluate_point(cfg, cfg.grid[i]);
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(cfg.grid.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::size_t failed = 0;
  for (const auto& row : table.rows) failed += row.failed ? 1 : 0;
  table.failed_fraction = static_cast<double>(failed) / static_cast<double>(table.rows.size());

  auto& md = table.metadata;
  md.push_back(fmt::format("phonogw {}", kVersion));
  md.push_back(fmt::format("config_hash {:016x}", cfg.hash));
  md.push_back(fmt::format("axis {}", to_string(cfg.axis)));
  md.push_back(fmt::format("modes {} {}", cfg.modes.n, cfg.modes.m));
  md.push_back(fmt::format("channel_provenance {}", cfg.channel.provenance));
  md.push_back(fmt::format("channel_rate_per_strain {:.17g} at omega1 {:.17g}",
                           cfg.channel.rate_per_strain, cfg.reference_fundamental));
  md.push_back(fmt::format("probes {}", cfg.probes));
  if (cfg.cfi) md.push_back(fmt::format("cfi_variant {}", to_string(cfg.cfi_variant)));
  if (cfg.bulk) md.push_back(fmt::format("bulk_wavenumber {}", to_string(cfg.bulk_wavenumber)));
  if (!cfg.overlay_path.empty()) {
    const auto overlay = overlay_ingest(cfg.overlay_path);
    md.push_back(fmt::format("overlay {} points {}", overlay.source, overlay.frequency_hz.size()));
    for (const auto& w : overlay.warnings) table.warnings.push_back(w);
  }
  md.push_back(fmt::format("flagged_fraction {:.17g}", table.failed_fraction));
  std::string line;
  for (char c : cfg.canonical) {
    if (c == '\n') {
      md.push_back("config " + line);
      line.clear();
    } else {
      line += c;
    }
  }
  return table;
}

inline void write_csv(const SweepTable& table, std::ostream& out) {
  auto num = [](double v) { return fmt::format("{:.17g}", v); };
  auto opt = [&](const std::optional<double>& v) { return v ? num(*v) : std::string(); };
  for (const auto& m : table.metadata) out << "# " << m << '\n';
  out << kSweepColumns << '\n';
  for (const auto& row : table.rows) {
    std::string status = row.failed ? "failed" : "ok";
    for (const auto& f : row.flags) status += "|" + f;
    out << num(row.axis_value) << ',' << num(row.time) << ',' << num(row.omega1) << ','
        << num(row.temperature) << ',' << num(row.r) << ',' << num(row.s) << ','
        << num(row.h_s) << ',' << num(row.h_eps) << ',' << num(row.qfi_spread) << ','
        << num(row.delta_eps) << ',' << num(row.density) << ',' << opt(row.cfi) << ','
        << opt(row.cfi_delta_eps) << ',' << opt(row.bulk_qfi) << ',' << opt(row.bulk_qfi_max)
        << ',' << opt(row.bulk_density) << ',' << row.regime << ',' << status << '\n';
  }
}

}  // namespace phonogw
