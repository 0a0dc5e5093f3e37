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

// Phase acquired by the condensate bulk under the same wave, for comparison
// with the phononic probe.

#include <cmath>
#include <string_view>

#include "phonogw/bec_model.hpp"
#include "phonogw/error.hpp"
#include "phonogw/gw_channel.hpp"

namespace phonogw {

enum class BulkWavenumber { PiOverL, TwoPiOverL };

inline BulkWavenumber parse_bulk_wavenumber(std::string_view s) {
  if (s == "pi_over_L") return BulkWavenumber::PiOverL;
  if (s == "two_pi_over_L") return BulkWavenumber::TwoPiOverL;
  fail(ErrorKind::Parse, "bulk wavenumber must be pi_over_L or two_pi_over_L");
}

inline const char* to_string(BulkWavenumber k) {
  return k == BulkWavenumber::PiOverL ? "pi_over_L" : "two_pi_over_L";
}

inline double bulk_wavenumber(const PhysicalParams& p, BulkWavenumber convention) {
  const double factor = convention == BulkWavenumber::PiOverL ? 1.0 : 2.0;
  return factor * constants::kPi / p.trap_length;
}

struct BulkState {
  double wavenumber = 0;
  double phase = 0;
  double dphase_deps = 0;
  double qfi = 0;
  double qfi_max = 0;  // time maximum of the QFI
};

/// Psi(t) = -hbar k^2 / (2 m0) (t - eps cos(Omega t) / Omega).
inline BulkState bulk_state(const PhysicalParams& p, const WaveParams& wave, double time,
                            BulkWavenumber convention = BulkWavenumber::PiOverL) {
  require(wave.omega > 0, ErrorKind::InvalidArgument, "bulk phase needs Omega > 0");
  BulkState b;
  b.wavenumber = bulk_wavenumber(p, convention);
  const double rate = constants::kHbar * b.wavenumber * b.wavenumber / (2.0 * p.atom_mass);
  const double c = std::cos(wave.omega * time);
  b.phase = -rate * (time - wave.epsilon * c / wave.omega);
  b.dphase_deps = rate * c / wave.omega;
  b.qfi = b.dphase_deps * b.dphase_deps;
  const double amplitude = rate / wave.omega;
  b.qfi_max = amplitude * amplitude;
  return b;
}

inline double bulk_phase(const PhysicalParams& p, const WaveParams& wave, double time,
                         BulkWavenumber convention = BulkWavenumber::PiOverL) {
  return bulk_state(p, wave, time, convention).phase;
}

inline double bulk_qfi(const PhysicalParams& p, const WaveParams& wave, double time,
                       BulkWavenumber convention = BulkWavenumber::PiOverL) {
  return bulk_state(p, wave, time, convention).qfi;
}

/// Time after which H_s (R t)^2 exceeds the bulk maximum.
inline double bulk_crossover_time(double h_s, double rate_per_strain, double bulk_qfi_max) {
  require(h_s > 0 && rate_per_strain > 0, ErrorKind::InvalidArgument,
          "crossover time needs positive H_s and channel rate");
  return std::sqrt(bulk_qfi_max / h_s) / rate_per_strain;
}

}  // namespace phonogw
