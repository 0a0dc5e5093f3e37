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

// The Bogoliubov channel a resonant gravitational wave imprints on a pair of
// phonon modes. At resonance (Omega = omega_n + omega_m) the pair is two-mode
// squeezed with a parameter that grows linearly in time, s = eps R_nm t; the
// channel is built as the exact squeezer with that parameter.

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "phonogw/bec_model.hpp"
#include "phonogw/error.hpp"
#include "phonogw/gaussian.hpp"

namespace phonogw {

struct WaveParams {
  double epsilon = 0;   // strain amplitude
  double omega = 0;     // rad/s
  double duration = 0;  // s
};

inline void validate(const WaveParams& wave, double strain_cap = 1e-2) {
  require(wave.epsilon >= 0 && wave.epsilon <= strain_cap, ErrorKind::InvalidArgument,
          fmt::format("strain amplitude {} outside [0, {}]", wave.epsilon, strain_cap));
  require(wave.omega > 0, ErrorKind::InvalidArgument, "wave frequency must be positive");
  require(wave.duration >= 0, ErrorKind::InvalidArgument, "duration must be non-negative");
}

struct ChannelModel {
  double rate_per_strain = 0;  // R_nm in 1/s per unit strain
  double channel_phase = constants::kPi / 2;  // rad, relative to the seed squeezing phase
  std::string provenance;
};

/// h_+(t) = eps sin(Omega t).
inline double gw_strain(const WaveParams& wave, double time) {
  return wave.epsilon * std::sin(wave.omega * time);
}

inline double resonant_frequency(const PhysicalParams& p, const ModePair& modes) {
  validate(modes);
  return mode_frequency(p, modes.n) + mode_frequency(p, modes.m);
}

/// s = eps R_nm t, evaluated at an arbitrary strain in the caller's precision.
template <class Scalar>
Scalar channel_squeezing(const Scalar& epsilon, const WaveParams& wave,
                         const ChannelModel& model) {
  return epsilon * Scalar(model.rate_per_strain) * Scalar(wave.duration);
}

inline double channel_squeezing(const WaveParams& wave, const ChannelModel& model) {
  return channel_squeezing<double>(wave.epsilon, wave, model);
}

/// S_eps as a two-mode squeezer of strength s and absolute phase
/// seed_phase + channel_phase.
template <class Scalar = double>
SymplecticMatrix<Scalar> channel_symplectic(const Scalar& epsilon, const WaveParams& wave,
                                            const ChannelModel& model,
                                            double seed_phase = 0.0) {
  const Scalar s = channel_squeezing<Scalar>(epsilon, wave, model);
  require(is_finite(s), ErrorKind::InvalidArgument, "channel squeezing is not finite");
  return two_mode_squeezer<Scalar>(s, Scalar(seed_phase) + Scalar(model.channel_phase));
}

template <class Scalar = double>
SymplecticMatrix<Scalar> channel_symplectic(const WaveParams& wave, const ChannelModel& model,
                                            double seed_phase = 0.0) {
  return channel_symplectic<Scalar>(Scalar(wave.epsilon), wave, model, seed_phase);
}

/// sigma_eps = S_eps^T sigma_0 S_eps.
template <class Scalar = double>
CovarianceMatrix<Scalar> evolved_state(const CovarianceMatrix<Scalar>& sigma0,
                                       const Scalar& epsilon, const WaveParams& wave,
                                       const ChannelModel& model, double seed_phase = 0.0) {
  return apply_symplectic(channel_symplectic<Scalar>(epsilon, wave, model, seed_phase),
                          sigma0);
}

template <class Scalar = double>
CovarianceMatrix<Scalar> evolved_state(const CovarianceMatrix<Scalar>& sigma0,
                                       const WaveParams& wave, const ChannelModel& model,
                                       double seed_phase = 0.0) {
  return evolved_state<Scalar>(sigma0, Scalar(wave.epsilon), wave, model, seed_phase);
}

}  // namespace phonogw
