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

// Equal-number phonon counting on the evolved probe and its classical Fisher
// information. The distribution depends on the strain only through
// u = r + beta_nm, so derivatives are taken analytically in u.

#include <cmath>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "phonogw/bec_model.hpp"
#include "phonogw/error.hpp"

namespace phonogw {

enum class CountVariant {
  // (1 - x_n - x_m) tanh^j(u) / cosh(u), as printed; does not sum to one.
  PaperLiteral,
  // P(j, j) of the thermal two-mode squeezed state, renormalized over j.
  NormalizedExact,
};

inline const char* to_string(CountVariant v) {
  return v == CountVariant::PaperLiteral ? "paper-literal" : "normalized-exact";
}

struct CountDistribution {
  CountVariant variant = CountVariant::NormalizedExact;
  double u = 0;
  std::vector<double> probs;
  std::vector<double> dprobs_du;
  double tail_mass = 0;   // estimated mass beyond j_max
  double total_mass = 0;  // sum over 0..j_max (before renormalizing, for the exact variant)
};

inline constexpr double kCountTailBound = 1e-8;

namespace detail {

inline double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// t^a / cosh^b and its u-derivative, with t = tanh u.
struct PowerTerm {
  double value;
  double derivative;
};

inline PowerTerm tanh_sech_power(double t, double sech, int a, int b) {
  const double base = std::pow(sech, b);
  PowerTerm out;
  out.value = std::pow(t, a) * base;
  const double da = a > 0 ? a * std::pow(t, a - 1) * sech * sech * base : 0.0;
  out.derivative = da - b * std::pow(t, a + 1) * base;
  return out;
}

// <j, j| S(u) |c, c> for the two-mode squeezer, and its u-derivative.
inline PowerTerm squeezed_amplitude(int j, int c, double t, double sech) {
  PowerTerm out{0.0, 0.0};
  for (int k = 0; k <= std::min(j, c); ++k) {
    const double weight = std::exp(log_binomial(j, k) + log_binomial(c, k));
    const double sign = (j - k) % 2 == 0 ? 1.0 : -1.0;
    const auto term = tanh_sech_power(t, sech, j + c - 2 * k, 2 * k + 1);
    out.value += sign * weight * term.value;
    out.derivative += sign * weight * term.derivative;
  }
  return out;
}

}  // namespace detail

/// Smallest j_max for which the tail of either variant is below the bound.
inline int suggested_jmax(double u) {
  const double t = std::tanh(u);
  if (t < 1e-3) return 20;
  const double j = std::log(kCountTailBound * 1e-2 * (1.0 - t)) / std::log(t);
  require(j < 1e7, ErrorKind::IncreaseJmax,
          fmt::format("counting distribution at u={:.6g} needs j_max beyond 1e7", u));
  return std::max(20, static_cast<int>(std::ceil(j)));
}

inline CountDistribution phonon_distribution(double r, double beta_nm, const ThermalSpec& thermal,
                                             int jmax, CountVariant variant) {
  const double u = r + beta_nm;
  require(jmax >= 20, ErrorKind::InvalidArgument, "phonon_distribution needs j_max >= 20");
  require(std::isfinite(u) && u >= 0, ErrorKind::InvalidArgument,
          "phonon_distribution needs r + beta_nm >= 0");
  const double t = std::tanh(u);
  const double sech = 1.0 / std::cosh(u);

  CountDistribution d;
  d.variant = variant;
  d.u = u;
  d.probs.resize(static_cast<std::size_t>(jmax) + 1);
  d.dprobs_du.resize(d.probs.size());

  if (variant == CountVariant::PaperLiteral) {
    const double prefactor = 1.0 - thermal.x_n - thermal.x_m;
    for (int j = 0; j <= jmax; ++j) {
      const auto term = detail::tanh_sech_power(t, sech, j, 1);
      d.probs[j] = prefactor * term.value;
      d.dprobs_du[j] = prefactor * term.derivative;
      d.total_mass += d.probs[j];
    }
    d.tail_mass = t < 1.0 ? d.probs.back() * t / (1.0 - t) : INFINITY;
  } else {
    const double q = thermal.x_n * thermal.x_m;
    std::vector<double> weights{(1.0 - thermal.x_n) * (1.0 - thermal.x_m)};
    while (q > 0 && weights.size() < 64 && std::pow(q, weights.size()) >= 1e-18) {
      weights.push_back(weights.front() * std::pow(q, weights.size()));
    }
    for (int j = 0; j <= jmax; ++j) {
      double p = 0, dp = 0;
      for (std::size_t c = 0; c < weights.size(); ++c) {
        const auto a = detail::squeezed_amplitude(j, static_cast<int>(c), t, sech);
        p += weights[c] * a.value * a.value;
        dp += weights[c] * 2.0 * a.value * a.derivative;
      }
      d.probs[j] = p;
      d.dprobs_du[j] = dp;
      d.total_mass += p;
    }
    require(d.total_mass > 0, ErrorKind::NumericFailure,
            "phonon_distribution: equal-number outcomes carry no mass");
    double dz = 0;
    for (double v : d.dprobs_du) dz += v;
    const double t2 = t * t;
    d.tail_mass = t2 < 1.0 ? d.probs.back() * t2 / (1.0 - t2) / d.total_mass : INFINITY;
    for (std::size_t j = 0; j < d.probs.size(); ++j) {
      const double p = d.probs[j] / d.total_mass;
      d.dprobs_du[j] = (d.dprobs_du[j] - p * dz) / d.total_mass;
      d.probs[j] = p;
    }
  }
  require(d.tail_mass <= kCountTailBound, ErrorKind::IncreaseJmax,
          fmt::format("tail mass {:.3e} beyond j_max={} exceeds {:.0e}; raise j_max to about {}",
                      d.tail_mass, jmax, kCountTailBound, suggested_jmax(u)));
  return d;
}

struct ClassicalFisher {
  double value = 0;            // per unit strain squared
  double per_u = 0;            // per unit u squared
  int excluded_outcomes = 0;   // P = 0 with non-zero derivative
  double excluded_derivative = 0;
  double tail_mass = 0;
};

/// F_eps = (d beta / d eps)^2 sum_j (dP_j/du)^2 / P_j.
inline ClassicalFisher classical_fisher(const CountDistribution& dist, double dbeta_deps) {
  ClassicalFisher out;
  out.tail_mass = dist.tail_mass;
  for (std::size_t j = 0; j < dist.probs.size(); ++j) {
    const double p = dist.probs[j];
    const double dp = dist.dprobs_du[j];
    if (p <= 0.0) {
      if (dp != 0.0) {
        ++out.excluded_outcomes;
        out.excluded_derivative += std::abs(dp);
      }
      continue;
    }
    out.per_u += dp * dp / p;
  }
  out.value = out.per_u * dbeta_deps * dbeta_deps;
  return out;
}

}  // namespace phonogw
