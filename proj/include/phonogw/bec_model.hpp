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

// Phonons of a condensate in a one-dimensional box trap: spectrum, thermal
// symplectic eigenvalues, the thermal two-mode squeezed initial state and the
// validity checks of the hydrodynamic description.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "phonogw/constants.hpp"
#include "phonogw/error.hpp"
#include "phonogw/gaussian.hpp"

namespace phonogw {

struct PhysicalParams {
  double trap_length = 1e-6;                          // m
  double sound_speed = 1e-2;                          // m/s
  double atom_mass = constants::kRubidium87Mass;      // kg
  double chemical_potential_over_kb = 100e-9;         // K
  double temperature = 0.0;                           // K
};

inline void validate(const PhysicalParams& p) {
  require(p.trap_length > 0 && std::isfinite(p.trap_length), ErrorKind::InvalidArgument,
          "trap length must be positive");
  require(p.sound_speed > 0 && std::isfinite(p.sound_speed), ErrorKind::InvalidArgument,
          "sound speed must be positive");
  require(p.sound_speed < 1e-3 * constants::kSpeedOfLight, ErrorKind::InvalidArgument,
          fmt::format("sound speed {} m/s is not small against c", p.sound_speed));
  require(p.atom_mass > 0 && std::isfinite(p.atom_mass), ErrorKind::InvalidArgument,
          "atom mass must be positive");
  require(p.chemical_potential_over_kb > 0, ErrorKind::InvalidArgument,
          "chemical potential must be positive");
  require(p.temperature >= 0 && std::isfinite(p.temperature), ErrorKind::InvalidArgument,
          "temperature must be non-negative");
}

struct ModePair {
  int n = 1;
  int m = 2;
};

inline void validate(const ModePair& modes) {
  require(modes.n >= 1 && modes.m > modes.n, ErrorKind::InvalidArgument,
          fmt::format("mode pair needs 1 <= n < m, got ({}, {})", modes.n, modes.m));
}

/// omega_n = n pi c_s / L.
inline double mode_frequency(const PhysicalParams& p, int n) {
  require(n >= 1, ErrorKind::InvalidArgument, "mode index must be >= 1");
  return n * constants::kPi * (p.sound_speed / p.trap_length);
}

/// Sound speed that puts the fundamental at the given angular frequency.
inline double sound_speed_for(double omega1, double trap_length) {
  return omega1 * trap_length / constants::kPi;
}

/// beta = hbar omega / (k_B T); infinite at T = 0.
inline double thermal_beta(double omega, double temperature) {
  if (temperature == 0.0) return std::numeric_limits<double>::infinity();
  return constants::kHbar * omega / (constants::kBoltzmann * temperature);
}

/// Symplectic eigenvalue coth(hbar omega / 2 k_B T) of a thermal mode.
inline double thermal_nu(double omega, double temperature) {
  require(omega > 0, ErrorKind::InvalidArgument, "thermal_nu: omega must be positive");
  require(temperature >= 0, ErrorKind::InvalidArgument,
          "thermal_nu: temperature must be non-negative");
  if (temperature == 0.0) return 1.0;
  return 1.0 / std::tanh(0.5 * thermal_beta(omega, temperature));
}

/// Occupation factor x = e^{-beta} written as nu = (1 + x) / (1 - x).
inline double nu_from_occupation(double x) { return 1.0 + 2.0 * x / (1.0 - x); }

/// Temperature at which e^{-beta} equals x for the given mode frequency.
inline double temperature_for_occupation(double omega, double x) {
  require(x > 0 && x < 1, ErrorKind::InvalidArgument,
          "temperature_for_occupation: x must lie in (0, 1)");
  return constants::kHbar * omega / (constants::kBoltzmann * -std::log(x));
}

enum class QuantumRegime { Comfortable, Marginal, Weak };

inline const char* to_string(QuantumRegime r) {
  switch (r) {
    case QuantumRegime::Comfortable: return "comfortable";
    case QuantumRegime::Marginal: return "marginal";
    case QuantumRegime::Weak: return "weak";
  }
  return "?";
}

struct ThermalSpec {
  double beta_n = 0;
  double beta_m = 0;
  double nu_n = 1;
  double nu_m = 1;
  double x_n = 0;
  double x_m = 0;
  QuantumRegime regime = QuantumRegime::Comfortable;
};

/// Thermal data of both modes. beta >= 3 is comfortably quantum, beta >= 1
/// marginal; beta_n < 0.1 is rejected.
inline ThermalSpec thermal_spec(const PhysicalParams& p, const ModePair& modes) {
  validate(p);
  validate(modes);
  ThermalSpec spec;
  const double wn = mode_frequency(p, modes.n);
  const double wm = mode_frequency(p, modes.m);
  spec.beta_n = thermal_beta(wn, p.temperature);
  spec.beta_m = thermal_beta(wm, p.temperature);
  if (spec.beta_n < 0.1) {
    fail(ErrorKind::RegimeViolation,
         fmt::format("hbar omega_n / k_B T = {:.4g} < 0.1: far outside the quantum regime",
                     spec.beta_n));
  }
  spec.x_n = std::exp(-spec.beta_n);
  spec.x_m = std::exp(-spec.beta_m);
  spec.nu_n = thermal_nu(wn, p.temperature);
  spec.nu_m = thermal_nu(wm, p.temperature);
  spec.regime = spec.beta_n >= 3.0   ? QuantumRegime::Comfortable
                : spec.beta_n >= 1.0 ? QuantumRegime::Marginal
                                     : QuantumRegime::Weak;
  return spec;
}

/// sigma_0 = S^T diag(nu_n, nu_n, nu_m, nu_m) S with S the seed two-mode
/// squeezer. nu is rebuilt from x = e^{-beta} in the target precision, which
/// is the exact coth(beta/2) without losing nu - 1 to rounding.
template <class Scalar = double>
CovarianceMatrix<Scalar> thermal_squeezed_state(const ThermalSpec& thermal,
                                                const Scalar& r, const Scalar& theta) {
  const Scalar xn(thermal.x_n);
  const Scalar xm(thermal.x_m);
  const Scalar nun = Scalar(1) + Scalar(2) * xn / (Scalar(1) - xn);
  const Scalar num = Scalar(1) + Scalar(2) * xm / (Scalar(1) - xm);
  Matrix<Scalar> nu = Matrix<Scalar>::Zero(4, 4);
  nu(0, 0) = nu(1, 1) = nun;
  nu(2, 2) = nu(3, 3) = num;
  return apply_symplectic(two_mode_squeezer<Scalar>(r, theta), CovarianceMatrix<Scalar>(nu));
}

template <class Scalar = double>
CovarianceMatrix<Scalar> initial_state(const PhysicalParams& p, const ModePair& modes,
                                       const Scalar& r, const Scalar& theta = Scalar(0)) {
  require(is_finite(r), ErrorKind::InvalidArgument, "initial_state: non-finite r");
  return thermal_squeezed_state<Scalar>(thermal_spec(p, modes), r, theta);
}

enum class Grade { Pass, Warn, Fail };

inline const char* to_string(Grade g) {
  switch (g) {
    case Grade::Pass: return "pass";
    case Grade::Warn: return "warn";
    case Grade::Fail: return "fail";
  }
  return "?";
}

struct RegimeCheck {
  std::string name;
  double ratio = 0;
  Grade grade = Grade::Pass;
};

struct ValidityReport {
  std::vector<RegimeCheck> checks;

  Grade worst() const {
    Grade w = Grade::Pass;
    for (const auto& c : checks) {
      if (static_cast<int>(c.grade) > static_cast<int>(w)) w = c.grade;
    }
    return w;
  }

  /// "name=grade;..." in check order.
  std::string flags() const {
    std::string out;
    for (const auto& c : checks) {
      if (!out.empty()) out += ';';
      out += c.name + '=' + to_string(c.grade);
    }
    return out;
  }
};

namespace detail {

// Boundaries are inclusive up to rounding of the ratio itself.
inline constexpr double kGradeSlack = 1e-9;

inline Grade grade_small(double ratio) {
  if (ratio <= 0.1 * (1 + kGradeSlack)) return Grade::Pass;
  if (ratio <= 1.0 * (1 + kGradeSlack)) return Grade::Warn;
  return Grade::Fail;
}

inline Grade grade_large(double ratio) {
  if (ratio >= 10.0 * (1 - kGradeSlack)) return Grade::Pass;
  if (ratio >= 1.0 * (1 - kGradeSlack)) return Grade::Warn;
  return Grade::Fail;
}

}  // namespace detail

/// Four checks, in this order:
///   linear_dispersion  hbar k_m / (m0 c_s), k_m = m pi / L      want <= 0.1
///   quantum_regime     k_B T / (hbar omega_n)                   want <= 0.1
///   thermal_depletion  k_B T / mu                               want <= 0.1
///   long_interaction   omega_1 t                                want >= 10
inline ValidityReport validate_regime(const PhysicalParams& p, const ModePair& modes,
                                      double t) {
  ValidityReport report;
  const double km = modes.m * constants::kPi / p.trap_length;
  const double dispersion = constants::kHbar * km / (p.atom_mass * p.sound_speed);
  report.checks.push_back({"linear_dispersion", dispersion, detail::grade_small(dispersion)});

  const double wn = mode_frequency(p, modes.n);
  const double quantum =
      constants::kBoltzmann * p.temperature / (constants::kHbar * wn);
  report.checks.push_back({"quantum_regime", quantum, detail::grade_small(quantum)});

  const double depletion = p.temperature / p.chemical_potential_over_kb;
  report.checks.push_back({"thermal_depletion", depletion, detail::grade_small(depletion)});

  const double duration = mode_frequency(p, 1) * t;
  report.checks.push_back({"long_interaction", duration, detail::grade_large(duration)});
  return report;
}

}  // namespace phonogw
