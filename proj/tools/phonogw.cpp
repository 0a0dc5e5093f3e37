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

// Command-line front end: single-point diagnostics, sweeps and the mode
// oracle calibration.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "phonogw/bogoliubov.hpp"
#include "phonogw/bounds.hpp"
#include "phonogw/bulk.hpp"
#include "phonogw/config.hpp"
#include "phonogw/metrology.hpp"
#include "phonogw/mode_oracle.hpp"
#include "phonogw/phonon_counting.hpp"
#include "phonogw/sweep.hpp"
#include "phonogw/version.hpp"

namespace {

using namespace phonogw;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitRegime = 4;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::InvalidArgument: return kExitConfig;
    case ErrorKind::RegimeViolation: return kExitRegime;
    default: return kExitNumeric;
  }
}

void print_matrix(const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::string line;
    for (Eigen::Index j = 0; j < m.cols(); ++j) line += fmt::format(" {:>24.17g}", m(i, j));
    fmt::print("{}\n", line);
  }
}

void print_report(const ValidityReport& report) {
  for (const auto& c : report.checks) {
    fmt::print("  {:<20} ratio {:<12.6g} {}\n", c.name, c.ratio, to_string(c.grade));
  }
}

struct PointOptions {
  std::string config;
  std::size_t index = 0;
};

std::pair<SweepConfig, PointSetup> load_point(const PointOptions& o) {
  auto cfg = load_config(o.config);
  require(o.index < cfg.grid.size(), ErrorKind::InvalidArgument,
          fmt::format("--index {} outside the {}-point grid", o.index, cfg.grid.size()));
  auto pt = point_setup(cfg, cfg.grid[o.index]);
  return {std::move(cfg), pt};
}

int cmd_state(const PointOptions& o) {
  const auto [cfg, pt] = load_point(o);
  const auto thermal = thermal_spec(pt.physics, cfg.modes);
  fmt::print("omega_1 {:.17g} rad/s\n", mode_frequency(pt.physics, 1));
  fmt::print("beta_n {:.17g} beta_m {:.17g}\n", thermal.beta_n, thermal.beta_m);
  fmt::print("nu_n {:.17g} nu_m {:.17g}\n", thermal.nu_n, thermal.nu_m);
  fmt::print("x_n {:.17g} x_m {:.17g}\n", thermal.x_n, thermal.x_m);
  fmt::print("quantum_regime {}\n", to_string(thermal.regime));
  const auto sigma = thermal_squeezed_state<HighPrecision>(thermal, HighPrecision(pt.r),
                                                           HighPrecision(cfg.theta));
  fmt::print("sigma_0 (x1 p1 x2 p2):\n");
  print_matrix(matrix_cast<double>(sigma.matrix()));
  const auto nus = symplectic_eigenvalues(sigma);
  fmt::print("symplectic_eigenvalues {:.17g} {:.17g}\n", to_double(nus[0]), to_double(nus[1]));
  fmt::print("purity {:.17g}\n", to_double(purity(sigma)));
  fmt::print("regime at t = {:.6g} s:\n", pt.wave.duration);
  print_report(validate_regime(pt.physics, cfg.modes, pt.wave.duration));
  return 0;
}

int cmd_channel(const PointOptions& o) {
  const auto [cfg, pt] = load_point(o);
  const auto s = channel_symplectic<double>(pt.wave, pt.channel, cfg.theta);
  fmt::print("rate_per_strain {:.17g} /s\n", pt.channel.rate_per_strain);
  fmt::print("channel_squeezing {:.17g}\n", channel_squeezing(pt.wave, pt.channel));
  fmt::print("absolute_phase {:.17g} rad\n", cfg.theta + pt.channel.channel_phase);
  fmt::print("S_eps:\n");
  print_matrix(s.matrix());
  fmt::print("symplectic_residual {:.3e}\n", symplectic_residual<double>(s.matrix()));
  return 0;
}

int cmd_qfi(const PointOptions& o) {
  const auto [cfg, pt] = load_point(o);
  const auto thermal = thermal_spec(pt.physics, cfg.modes);
  const auto q = strain_qfi<HighPrecision>(thermal, pt.r, cfg.theta, pt.wave, pt.channel);
  fmt::print("t {:.17g} s\n", pt.wave.duration);
  fmt::print("R_t {:.17g}\n", q.rate_time);
  fmt::print("H_s {:.17g}\n", q.h_s);
  fmt::print("H_eps {:.17g}\n", q.h_eps);
  fmt::print("ladder_spread {:.3e}\n", q.ladder.spread);
  for (const auto& rung : q.ladder.ladder) {
    fmt::print("  ds {:.6e} H {:.17g} 1-sqrtF {:.6e} sqrtLambda {:.6e} sqrtRoot {:.17g}\n",
               rung.step * q.rate_time, rung.estimate, rung.one_minus_sqrt_f, rung.sqrt_lambda,
               rung.sqrt_root_argument);
  }
  if (q.h_eps > 0) {
    const double d = cramer_rao_bound(q.h_eps, cfg.probes);
    fmt::print("delta_eps_bound {:.17g}\n", d);
    fmt::print("sensitivity_density {:.17g}\n", sensitivity_density(d, pt.wave.duration));
  }
  return 0;
}

int cmd_cfi(const PointOptions& o) {
  const auto [cfg, pt] = load_point(o);
  const auto thermal = thermal_spec(pt.physics, cfg.modes);
  const double rt = pt.channel.rate_per_strain * pt.wave.duration;
  const double s = channel_squeezing(pt.wave, pt.channel);
  const auto q = strain_qfi<HighPrecision>(thermal, pt.r, cfg.theta, pt.wave, pt.channel);
  fmt::print("H_eps {:.17g}\n", q.h_eps);
  for (auto variant : {CountVariant::NormalizedExact, CountVariant::PaperLiteral}) {
    const auto d =
        phonon_distribution(pt.r, s, thermal, suggested_jmax(pt.r + s), variant);
    const auto f = classical_fisher(d, rt);
    fmt::print("{}: F_eps {:.17g} F_eps/H_eps {:.6g} total_mass {:.10g} tail {:.3e}{}\n",
               to_string(variant), f.value, q.h_eps > 0 ? f.value / q.h_eps : 0.0,
               d.total_mass, d.tail_mass, variant == cfg.cfi_variant ? " (configured)" : "");
  }
  if (std::abs(std::remainder(cfg.channel.channel_phase, 2.0 * constants::kPi)) > 1e-12) {
    fmt::print("warning: channel phase is not aligned with the seed; the counting model "
               "assumes u = r + beta_nm\n");
  }
  return 0;
}

int cmd_bulk(const PointOptions& o) {
  const auto [cfg, pt] = load_point(o);
  const auto b = bulk_state(pt.physics, pt.wave, pt.wave.duration, cfg.bulk_wavenumber);
  fmt::print("wavenumber {:.17g} 1/m ({})\n", b.wavenumber, to_string(cfg.bulk_wavenumber));
  fmt::print("phase {:.17g} rad\n", b.phase);
  fmt::print("bulk_qfi {:.17g}\n", b.qfi);
  fmt::print("bulk_qfi_max {:.17g}\n", b.qfi_max);
  const auto thermal = thermal_spec(pt.physics, cfg.modes);
  const auto q = strain_qfi<HighPrecision>(thermal, pt.r, cfg.theta, pt.wave, pt.channel);
  if (q.h_s > 0 && pt.channel.rate_per_strain > 0) {
    fmt::print("crossover_time {:.17g} s\n",
               bulk_crossover_time(q.h_s, pt.channel.rate_per_strain, b.qfi_max));
  }
  return 0;
}

int cmd_scan(const PointOptions& o, std::string output, int workers) {
  const auto cfg = load_config(o.config);
  if (output.empty()) output = cfg.output_path;
  const auto table = scan(cfg, workers > 0 ? workers : default_workers());
  for (const auto& w : table.warnings) fmt::print(stderr, "warning: {}\n", w);
  if (output.empty() || output == "-") {
    write_csv(table, std::cout);
  } else {
    std::ofstream out(output, std::ios::binary);
    require(out.good(), ErrorKind::Parse, fmt::format("cannot write '{}'", output));
    write_csv(table, out);
  }
  if (table.run_failed()) {
    bool regime_only = true;
    for (const auto& row : table.rows) {
      if (row.failed && row.failure != ErrorKind::RegimeViolation) regime_only = false;
    }
    fmt::print(stderr, "error: {:.0f}% of rows flagged as failed\n", 100 * table.failed_fraction);
    return regime_only ? kExitRegime : kExitNumeric;
  }
  return 0;
}

struct OracleOptions {
  double epsilon = 1e-5;
  double w1t = 200;
  int truncation = 8;
  int samples = 40;
  std::string convention = "half";
  std::string csv;
};

int cmd_oracle(const PointOptions& o, const OracleOptions& opt) {
  const auto cfg = load_config(o.config);
  OracleConfig oc;
  oc.truncation = opt.truncation;
  oc.samples = opt.samples;
  require(opt.convention == "half" || opt.convention == "full", ErrorKind::Parse,
          "--convention must be half or full");
  oc.convention = opt.convention == "half" ? LengthConvention::HalfStrain
                                           : LengthConvention::FullStrain;
  const auto cal = extract_rate(cfg.physics, cfg.modes, default_calibration_sweep(cfg.physics),
                                oc, cfg.channel.channel_phase);
  fmt::print("[channel]\n");
  fmt::print("rate_per_strain_hz = {:.17g}\n", cal.model.rate_per_strain);
  fmt::print("reference_fundamental = {:.17g} rad_per_s\n", mode_frequency(cfg.physics, 1));
  fmt::print("channel_phase_rad = {:.17g}\n", cal.model.channel_phase);
  fmt::print("provenance_note = {}\n", cal.model.provenance);

  oc.check_convergence = true;
  const auto wave = resonant_wave(cfg.physics, cfg.modes, opt.epsilon, opt.w1t);
  const auto run = simulate_moving_boundary(cfg.physics, cfg.modes, wave, oc);
  fmt::print(stderr, "identity_residual {:.3e} truncation_delta {:.3e} tolerance_delta {:.3e}\n",
             run.identity_residual, run.convergence.truncation_delta,
             run.convergence.tolerance_delta);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!opt.csv.empty() && opt.csv != "-") {
    file.open(opt.csv, std::ios::binary);
    require(file.good(), ErrorKind::Parse, fmt::format("cannot write '{}'", opt.csv));
    out = &file;
  } else {
    *out << '\n';
  }
  *out << "t,abs_beta_nm,arg_beta_nm,identity_residual\n";
  for (const auto& s : run.series) {
    *out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", s.time, s.abs_beta, s.arg_beta,
                        s.identity_residual);
  }
  return 0;
}

int cmd_validate(const PointOptions& o) {
  const auto cfg = load_config(o.config);
  fmt::print("config ok: {} grid points, hash {:016x}\n", cfg.grid.size(), cfg.hash);
  Grade worst = Grade::Pass;
  for (double v : cfg.grid) {
    const auto pt = point_setup(cfg, v);
    const auto report = validate_regime(pt.physics, cfg.modes, pt.wave.duration);
    worst = std::max(worst, report.worst());
  }
  const auto first = point_setup(cfg, cfg.grid.front());
  fmt::print("regime at the first grid point:\n");
  print_report(validate_regime(first.physics, cfg.modes, first.wave.duration));
  fmt::print("worst grade over the grid: {}\n", to_string(worst));
  if (!cfg.overlay_path.empty()) {
    const auto overlay = overlay_ingest(cfg.overlay_path);
    fmt::print("overlay {}: {} points\n", overlay.source, overlay.frequency_hz.size());
    for (const auto& w : overlay.warnings) fmt::print(stderr, "warning: {}\n", w);
  }
  return worst == Grade::Fail ? kExitRegime : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phononic gravitational-wave detector simulator"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  PointOptions point;
  auto add_point = [&](CLI::App* sub) {
    sub->add_option("-c,--config", point.config, "run configuration (INI)")->required();
    sub->add_option("-i,--index", point.index, "grid point used for single-point output");
  };

  auto* state = app.add_subcommand("state", "initial covariance matrix and diagnostics");
  auto* channel = app.add_subcommand("channel", "channel symplectic matrix");
  auto* qfi_cmd = app.add_subcommand("qfi", "strain QFI and Cramer-Rao bound");
  auto* cfi_cmd = app.add_subcommand("cfi", "classical Fisher information of phonon counting");
  auto* bulk = app.add_subcommand("bulk", "condensate bulk phase comparison");
  auto* scan_cmd = app.add_subcommand("scan", "parameter sweep to CSV");
  auto* oracle = app.add_subcommand("oracle", "calibrate the channel rate from mode dynamics");
  auto* validate_cmd = app.add_subcommand("validate", "check a configuration and its regime");
  for (auto* sub : {state, channel, qfi_cmd, cfi_cmd, bulk, scan_cmd, oracle, validate_cmd}) {
    add_point(sub);
  }

  std::string output;
  int workers = 0;
  scan_cmd->add_option("-o,--output", output, "CSV path, '-' for stdout");
  scan_cmd->add_option("-w,--workers", workers, "worker threads (default PHONOGW_WORKERS)");

  OracleOptions oracle_opt;
  oracle->add_option("--epsilon", oracle_opt.epsilon, "strain of the reported time series");
  oracle->add_option("--w1t", oracle_opt.w1t, "duration of the time series in omega_1 t");
  oracle->add_option("--truncation", oracle_opt.truncation, "number of cavity modes");
  oracle->add_option("--samples", oracle_opt.samples, "time-series samples");
  oracle->add_option("--convention", oracle_opt.convention, "length convention: half or full");
  oracle->add_option("--csv", oracle_opt.csv, "time-series CSV path, '-' for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*state) return cmd_state(point);
    if (*channel) return cmd_channel(point);
    if (*qfi_cmd) return cmd_qfi(point);
    if (*cfi_cmd) return cmd_cfi(point);
    if (*bulk) return cmd_bulk(point);
    if (*scan_cmd) return cmd_scan(point, output, workers);
    if (*oracle) return cmd_oracle(point, oracle_opt);
    if (*validate_cmd) return cmd_validate(point);
  } catch (const Error& e) {
    fmt::print(stderr, "error ({}): {}\n", to_string(e.kind()), e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitNumeric;
  }
  return 0;
}
