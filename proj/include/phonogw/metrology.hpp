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

// Strain QFI of the thermal two-mode squeezed probe and the diagnostics built
// on it: scaling of the fidelity invariants with strain and temperature, and
// the temperature correction to the zero-temperature QFI.

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phonogw/bec_model.hpp"
#include "phonogw/fidelity.hpp"
#include "phonogw/fit.hpp"
#include "phonogw/gw_channel.hpp"
#include "phonogw/qfi.hpp"

namespace phonogw {

struct StrainQfi {
  double h_eps = 0;      // per unit strain squared
  double h_s = 0;        // per unit channel squeezing squared
  double rate_time = 0;  // R_nm t = ds / d eps
  QfiResult ladder;
};

/// H_eps of sigma_eps = S_eps^T sigma_0 S_eps at eps = wave.epsilon. The
/// ladder is laid out in the channel parameter s = eps R t, so the step
/// never underflows for physical strains.
template <class Scalar = HighPrecision>
StrainQfi strain_qfi(const ThermalSpec& thermal, double r, double seed_phase,
                     const WaveParams& wave, const ChannelModel& model,
                     DifferencingPolicy policy = {}) {
  StrainQfi out;
  out.rate_time = model.rate_per_strain * wave.duration;
  if (out.rate_time == 0.0) return out;
  const auto sigma0 = thermal_squeezed_state<Scalar>(thermal, Scalar(r), Scalar(seed_phase));
  auto state_map = [&](const Scalar& eps) {
    return evolved_state<Scalar>(sigma0, eps, wave, model, seed_phase);
  };
  policy.base_step /= out.rate_time;
  out.ladder = qfi<Scalar>(state_map, Scalar(wave.epsilon), policy);
  out.h_eps = out.ladder.value;
  out.h_s = out.h_eps / (out.rate_time * out.rate_time);
  return out;
}

struct TermOrderRow {
  double temperature = 0;
  double x_n = 0;
  double x_m = 0;
  double s = 0;  // channel squeezing separating the two states
  double gamma_minus_delta = 0;
  double gamma_minus_delta_shift = 0;  // minus its value at s = 0
  double lambda = 0;
  double lambda_shift = 0;
};

struct TermOrderReport {
  std::vector<TermOrderRow> rows;
  std::optional<double> gamma_eps_exponent;
  std::optional<double> gamma_x_exponent;
  std::optional<double> lambda_eps_exponent;
  std::optional<double> lambda_x_exponent;
  std::vector<std::string> notes;
};

namespace detail {

// Values below this are cancellation noise of the 100-digit determinants.
inline constexpr double kInvariantNoise = 1e-50;

inline std::optional<double> mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  double sum = 0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

}  // namespace detail

/// Compares sigma at s = 0 with sigma at each s of the grid, for each
/// temperature, and fits log-log exponents of the strain-dependent parts of
/// Gamma - Delta and Lambda against s and against x_n + x_m.
inline TermOrderReport qfi_term_orders(const PhysicalParams& base, const ModePair& modes,
                                       double r, double channel_phase,
                                       std::span<const double> temperatures,
                                       std::span<const double> s_grid) {
  using Scalar = HighPrecision;
  require(!temperatures.empty() && s_grid.size() >= 2, ErrorKind::InvalidArgument,
          "qfi_term_orders needs temperatures and at least two strain points");
  TermOrderReport report;
  const std::size_t ns = s_grid.size();

  for (double temperature : temperatures) {
    PhysicalParams p = base;
    p.temperature = temperature;
    const auto thermal = thermal_spec(p, modes);
    const auto sigma0 = thermal_squeezed_state<Scalar>(thermal, Scalar(r), Scalar(0));
    const auto at_zero = uhlmann_fidelity<Scalar>(sigma0, sigma0);
    const Scalar gd0 = at_zero.gamma - at_zero.delta;
    for (double s : s_grid) {
      const auto shifted = apply_symplectic(
          two_mode_squeezer<Scalar>(Scalar(s), Scalar(channel_phase)), sigma0);
      const auto f = uhlmann_fidelity<Scalar>(sigma0, shifted);
      TermOrderRow row;
      row.temperature = temperature;
      row.x_n = thermal.x_n;
      row.x_m = thermal.x_m;
      row.s = s;
      row.gamma_minus_delta = to_double(Scalar(f.gamma - f.delta));
      row.gamma_minus_delta_shift = to_double(Scalar(f.gamma - f.delta - gd0));
      row.lambda = to_double(f.lambda);
      row.lambda_shift = to_double(Scalar(f.lambda - at_zero.lambda));
      report.rows.push_back(row);
    }
    if (temperature == 0.0) {
      report.notes.push_back(
          "T=0: pure probe, Gamma-Delta and Lambda carry no temperature dependence; "
          "x-exponents undefined for this row");
    }
  }

  auto significant = [](double v) { return std::abs(v) > detail::kInvariantNoise; };
  std::vector<double> gamma_eps, lambda_eps;
  for (std::size_t t = 0; t < temperatures.size(); ++t) {
    std::vector<double> s, g, l;
    std::vector<double> sl;
    for (std::size_t i = 0; i < ns; ++i) {
      const auto& row = report.rows[t * ns + i];
      if (row.x_n + row.x_m == 0.0) continue;
      if (significant(row.gamma_minus_delta_shift)) {
        s.push_back(row.s);
        g.push_back(std::abs(row.gamma_minus_delta_shift));
      }
      if (significant(row.lambda_shift) &&
          std::abs(row.lambda_shift) > 1e-30 * std::abs(row.lambda)) {
        sl.push_back(row.s);
        l.push_back(std::abs(row.lambda_shift));
      }
    }
    if (s.size() >= 2) gamma_eps.push_back(loglog_slope(s, g));
    if (sl.size() >= 2) lambda_eps.push_back(loglog_slope(sl, l));
  }
  report.gamma_eps_exponent = detail::mean_of(gamma_eps);
  report.lambda_eps_exponent = detail::mean_of(lambda_eps);
  if (!report.lambda_eps_exponent) {
    report.notes.push_back(
        "Lambda is independent of the strain: it is a product of symplectic invariants, "
        "which the channel preserves; strain exponent undefined");
  }

  std::vector<double> gamma_x, lambda_x;
  for (std::size_t i = 0; i < ns; ++i) {
    std::vector<double> xs, g, xl, l;
    for (std::size_t t = 0; t < temperatures.size(); ++t) {
      const auto& row = report.rows[t * ns + i];
      const double x = row.x_n + row.x_m;
      if (x == 0.0) continue;
      if (significant(row.gamma_minus_delta_shift)) {
        xs.push_back(x);
        g.push_back(std::abs(row.gamma_minus_delta_shift));
      }
      if (significant(row.lambda)) {
        xl.push_back(x);
        l.push_back(std::abs(row.lambda));
      }
    }
    if (xs.size() >= 2) gamma_x.push_back(loglog_slope(xs, g));
    if (xl.size() >= 2) lambda_x.push_back(loglog_slope(xl, l));
  }
  report.gamma_x_exponent = detail::mean_of(gamma_x);
  report.lambda_x_exponent = detail::mean_of(lambda_x);
  return report;
}

struct TemperatureCorrectionRow {
  double temperature = 0;
  double x_n = 0;
  double x_m = 0;
  double h_eps = 0;
  double correction = 0;  // H(T) - H(0)
  double relative = 0;    // correction / H(0)
};

struct TemperatureCorrection {
  double h_zero = 0;
  std::vector<TemperatureCorrectionRow> rows;
  LinearFit fit;                 // correction against x_n
  double residual_fraction = 0;  // max |residual| / range of corrections
};

inline TemperatureCorrection temperature_correction_scan(
    const PhysicalParams& base, const ModePair& modes, double r, double seed_phase,
    const WaveParams& wave, const ChannelModel& model, std::span<const double> temperatures) {
  require(temperatures.size() >= 2, ErrorKind::InvalidArgument,
          "temperature_correction_scan needs at least two temperatures");
  auto h_at = [&](double temperature) {
    PhysicalParams p = base;
    p.temperature = temperature;
    return strain_qfi<HighPrecision>(thermal_spec(p, modes), r, seed_phase, wave, model).h_eps;
  };
  TemperatureCorrection out;
  out.h_zero = h_at(0.0);
  std::vector<double> xs, ys;
  double lo = 1e300, hi = -1e300;
  for (double temperature : temperatures) {
    PhysicalParams p = base;
    p.temperature = temperature;
    const auto thermal = thermal_spec(p, modes);
    TemperatureCorrectionRow row;
    row.temperature = temperature;
    row.x_n = thermal.x_n;
    row.x_m = thermal.x_m;
    row.h_eps = h_at(temperature);
    row.correction = row.h_eps - out.h_zero;
    row.relative = out.h_zero != 0.0 ? row.correction / out.h_zero : 0.0;
    out.rows.push_back(row);
    xs.push_back(row.x_n);
    ys.push_back(row.correction);
    lo = std::min(lo, row.correction);
    hi = std::max(hi, row.correction);
  }
  out.fit = linear_fit(xs, ys);
  out.residual_fraction = hi > lo ? out.fit.max_abs_residual / (hi - lo) : 0.0;
  return out;
}

}  // namespace phonogw
