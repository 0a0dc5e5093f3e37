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

// Independent numerical route to the Bogoliubov coefficients of the resonant
// channel: a massless 1D field in a box whose length is modulated by the wave,
// expanded on instantaneous Dirichlet modes sqrt(2/L) sin(k pi x / L).
//
// With lambda = L'/L and g_kj = (-1)^{k+j} 2kj / (j^2 - k^2) (zero diagonal),
// the mode amplitudes follow the Hamiltonian system
//
//   dQ_k/dt = P_k - lambda sum_j g_kj Q_j
//   dP_k/dt = -omega_k(t)^2 Q_k + lambda sum_j g_jk P_j,   omega_k = k pi c_s / L(t)
//
// integrated for every phase-space unit vector to get the full linear flow,
// with an adaptive symplectic Gauss-Legendre scheme.
// Coefficients are read off in normalised quadratures x = sqrt(omega) Q,
// p = P / sqrt(omega) at the instantaneous frequency. The integration runs in
// units with c_s = L = 1.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <future>
#include <map>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "phonogw/bec_model.hpp"
#include "phonogw/bogoliubov.hpp"
#include "phonogw/error.hpp"
#include "phonogw/gw_channel.hpp"

namespace phonogw {

/// L(t) = L [1 + f eps sin(Omega t)], f = 1/2 (proper length of g_xx = 1 + h)
/// or f = 1.
enum class LengthConvention { HalfStrain, FullStrain };

inline const char* to_string(LengthConvention c) {
  return c == LengthConvention::HalfStrain ? "half-strain" : "full-strain";
}

struct OracleConfig {
  int truncation = 8;
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  LengthConvention convention = LengthConvention::HalfStrain;
  int samples = 40;  // time-series points after t = 0
  double identity_bound = 1e-6;
  bool check_convergence = false;
  long max_steps = 5'000'000;
};

inline void validate(const OracleConfig& cfg, const ModePair& modes) {
  require(cfg.truncation >= 2 && cfg.truncation >= modes.m + 4, ErrorKind::InvalidArgument,
          fmt::format("oracle truncation {} must be >= max(n, m) + 4 = {}", cfg.truncation,
                      modes.m + 4));
  require(cfg.rel_tol > 0 && cfg.rel_tol <= 1e-8 && cfg.abs_tol > 0 && cfg.abs_tol <= 1e-8,
          ErrorKind::InvalidArgument, "oracle tolerances must lie in (0, 1e-8]");
  require(cfg.samples >= 1, ErrorKind::InvalidArgument, "oracle needs at least one sample");
}

struct OracleSample {
  double time = 0;  // s
  double abs_beta = 0;
  double arg_beta = 0;
  double identity_residual = 0;
};

struct OracleConvergence {
  bool computed = false;
  double truncation_delta = 0;  // relative change of |beta_nm| with truncation + 4
  double tolerance_delta = 0;   // relative change with both tolerances halved
};

struct OracleResult {
  BogoliubovSet final;
  std::vector<OracleSample> series;
  double identity_residual = 0;  // worst over the series
  OracleConvergence convergence;
  long steps = 0;
};

namespace detail {

class MovingBoundarySystem {
 public:
  MovingBoundarySystem(int n_modes, double epsilon, double omega, LengthConvention conv)
      : n_(n_modes),
        depth_((conv == LengthConvention::HalfStrain ? 0.5 : 1.0) * epsilon),
        omega_(omega),
        coupling_(n_modes, n_modes) {
    for (int k = 1; k <= n_; ++k)
      for (int j = 1; j <= n_; ++j)
        coupling_(k - 1, j - 1) =
            k == j ? 0.0
                   : (((k + j) % 2 == 0) ? 1.0 : -1.0) * 2.0 * k * j /
                         static_cast<double>(j * j - k * k);
  }

  int dimension() const { return 2 * n_; }

  double length(double t) const { return 1.0 + depth_ * std::sin(omega_ * t); }

  double mode_omega(int k, double t) const { return k * constants::kPi / length(t); }

  /// A(t) of dY/dt = A(t) Y with Y = (Q; P).
  Eigen::MatrixXd generator(double t) const {
    const double len = length(t);
    const double lambda = depth_ * omega_ * std::cos(omega_ * t) / len;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * n_, 2 * n_);
    a.topLeftCorner(n_, n_) = -lambda * coupling_;
    a.topRightCorner(n_, n_).setIdentity();
    a.bottomRightCorner(n_, n_) = lambda * coupling_.transpose();
    for (int k = 0; k < n_; ++k) {
      const double w = (k + 1) * constants::kPi / len;
      a(n_ + k, k) = -w * w;
    }
    return a;
  }

  /// Columns are the solutions started from the phase-space unit vectors in
  /// normalised quadratures.
  Eigen::MatrixXd initial_state() const {
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(2 * n_, 2 * n_);
    for (int k = 0; k < n_; ++k) {
      const double w = mode_omega(k + 1, 0.0);
      y(k, 2 * k) = 1.0 / std::sqrt(w);
      y(n_ + k, 2 * k + 1) = std::sqrt(w);
    }
    return y;
  }

  /// Phase-space flow Phi (x_out = Phi x_in); the channel matrix is Phi^T.
  Eigen::MatrixXd flow(const Eigen::MatrixXd& y, double t) const {
    Eigen::MatrixXd phi(2 * n_, 2 * n_);
    for (int k = 0; k < n_; ++k) {
      const double w = mode_omega(k + 1, t);
      phi.row(2 * k) = std::sqrt(w) * y.row(k);
      phi.row(2 * k + 1) = y.row(n_ + k) / std::sqrt(w);
    }
    return phi;
  }

 private:
  int n_;
  double depth_;
  double omega_;
  Eigen::MatrixXd coupling_;
};

/// Three-stage Gauss-Legendre collocation (order 6) for dY/dt = A(t) Y. The
/// scheme is symplectic, so the Bogoliubov identities hold to rounding at
/// any step size and the tolerances only control the accuracy of beta.
class GaussLegendreStepper {
 public:
  explicit GaussLegendreStepper(const MovingBoundarySystem& system) : system_(system) {
    const double r = std::sqrt(15.0);
    c_ = {0.5 - r / 10, 0.5, 0.5 + r / 10};
    a_ = {{{5.0 / 36, 2.0 / 9 - r / 15, 5.0 / 36 - r / 30},
           {5.0 / 36 + r / 24, 2.0 / 9, 5.0 / 36 - r / 24},
           {5.0 / 36 + r / 30, 2.0 / 9 + r / 15, 5.0 / 36}}};
    b_ = {5.0 / 18, 4.0 / 9, 5.0 / 18};
  }

  Eigen::MatrixXd step(const Eigen::MatrixXd& y, double t, double h) const {
    const Eigen::Index d = system_.dimension();
    std::array<Eigen::MatrixXd, 3> gen;
    for (int i = 0; i < 3; ++i) gen[i] = system_.generator(t + c_[i] * h);
    Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(3 * d, 3 * d);
    Eigen::MatrixXd rhs(3 * d, y.cols());
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) lhs.block(i * d, j * d, d, d) -= h * a_[i][j] * gen[i];
      rhs.middleRows(i * d, d) = gen[i] * y;
    }
    const Eigen::MatrixXd k = lhs.partialPivLu().solve(rhs);
    Eigen::MatrixXd out = y;
    for (int i = 0; i < 3; ++i) out += h * b_[i] * k.middleRows(i * d, d);
    return out;
  }

 private:
  const MovingBoundarySystem& system_;
  std::array<double, 3> c_;
  std::array<std::array<double, 3>, 3> a_;
  std::array<double, 3> b_;
};

/// Adaptive integration by step doubling; stops exactly on each sample time.
template <class Observer>
long integrate_adaptive(const MovingBoundarySystem& system, Eigen::MatrixXd& y,
                        const std::vector<double>& times, const OracleConfig& cfg,
                        Observer&& observe) {
  const GaussLegendreStepper stepper(system);
  constexpr int kOrder = 6;
  double t = 0.0;
  double h = 1e-2;
  long steps = 0;
  for (double target : times) {
    while (t < target) {
      require(steps < cfg.max_steps, ErrorKind::NumericFailure,
              fmt::format("mode oracle exceeded {} steps at t={:.6g} (h={:.3e})", cfg.max_steps,
                          t, h));
      const bool last = t + h >= target;
      const double step = last ? target - t : h;
      const Eigen::MatrixXd whole = stepper.step(y, t, step);
      const Eigen::MatrixXd half = stepper.step(stepper.step(y, t, step / 2), t + step / 2, step / 2);
      const double scale = cfg.abs_tol + cfg.rel_tol * half.cwiseAbs().maxCoeff();
      const double err =
          (half - whole).cwiseAbs().maxCoeff() / (std::pow(2.0, kOrder) - 1.0) / scale;
      require(std::isfinite(err), ErrorKind::NumericFailure,
              fmt::format("mode oracle produced non-finite values at t={:.6g}", t));
      if (err <= 1.0) {
        y = half;
        t = last ? target : t + step;
        ++steps;
      }
      const double grow = err > 0 ? 0.9 * std::pow(err, -1.0 / (kOrder + 1)) : 4.0;
      const double next = step * std::clamp(grow, 0.2, 4.0);
      require(next > 1e-14, ErrorKind::NumericFailure,
              fmt::format("mode oracle step size underflow at t={:.6g}", t));
      if (!(last && err <= 1.0)) h = next;
    }
    observe(y, t);
  }
  return steps;
}

inline OracleResult run_oracle(const PhysicalParams& params, const ModePair& modes,
                               const WaveParams& wave, const OracleConfig& cfg,
                               const std::vector<double>& sample_times) {
  const double time_unit = params.trap_length / params.sound_speed;
  MovingBoundarySystem system(cfg.truncation, wave.epsilon, wave.omega * time_unit,
                              cfg.convention);

  std::vector<double> times;
  for (double t : sample_times) times.push_back(t / time_unit);

  OracleResult result;
  auto observer = [&](const Eigen::MatrixXd& y, double t) {
    const auto bg = symplectic_to_bogoliubov(system.flow(y, t).transpose());
    const auto beta = bg.beta(modes.n - 1, modes.m - 1);
    const auto residuals = check_bogoliubov_identities(bg);
    result.series.push_back({t * time_unit, std::abs(beta), std::arg(beta), residuals.max()});
    result.identity_residual = std::max(result.identity_residual, residuals.max());
    result.final = bg;
  };

  auto state = system.initial_state();
  result.steps = integrate_adaptive(system, state, times, cfg, observer);
  if (result.identity_residual > cfg.identity_bound) {
    fail(ErrorKind::ConvergenceFailure,
         fmt::format("Bogoliubov identity residual {:.3e} exceeds {:.1e}",
                     result.identity_residual, cfg.identity_bound));
  }
  return result;
}

inline std::vector<double> uniform_times(double duration, int samples) {
  std::vector<double> t;
  for (int i = 1; i <= samples; ++i) t.push_back(duration * i / samples);
  return t;
}

}  // namespace detail

/// Integrates the coupled mode equations for wave.duration seconds and returns
/// the final Bogoliubov set plus a uniformly sampled |beta_nm(t)| series.
inline OracleResult simulate_moving_boundary(const PhysicalParams& params,
                                             const ModePair& modes, const WaveParams& wave,
                                             const OracleConfig& cfg = {}) {
  validate(params);
  validate(modes);
  validate(cfg, modes);
  validate(wave);
  require(wave.duration > 0, ErrorKind::InvalidArgument, "oracle needs a positive duration");
  const auto times = detail::uniform_times(wave.duration, cfg.samples);
  auto result = detail::run_oracle(params, modes, wave, cfg, times);
  if (cfg.check_convergence) {
    const double base = result.series.back().abs_beta;
    OracleConfig wider = cfg;
    wider.truncation += 4;
    OracleConfig tighter = cfg;
    tighter.rel_tol /= 2;
    tighter.abs_tol /= 2;
    const double b_wide =
        detail::run_oracle(params, modes, wave, wider, {wave.duration}).series.back().abs_beta;
    const double b_tight =
        detail::run_oracle(params, modes, wave, tighter, {wave.duration}).series.back().abs_beta;
    result.convergence.computed = true;
    result.convergence.truncation_delta = std::abs(b_wide - base) / base;
    result.convergence.tolerance_delta = std::abs(b_tight - base) / base;
  }
  return result;
}

/// Convenience: resonant wave Omega = omega_n + omega_m lasting omega_1 t = w1t.
inline WaveParams resonant_wave(const PhysicalParams& params, const ModePair& modes,
                                double epsilon, double w1t) {
  return {epsilon, resonant_frequency(params, modes), w1t / mode_frequency(params, 1)};
}

struct CalibrationPoint {
  double epsilon = 0;
  double time = 0;  // s
  double abs_beta = 0;
  double arg_beta = 0;
};

struct Calibration {
  ChannelModel model;
  double fit_residual = 0;  // max relative deviation from eps R t
  double phase_drift = 0;   // spread of arg(beta_nm) over the sweep, rad
  double identity_residual = 0;
  std::vector<CalibrationPoint> points;
};

/// Least-squares fit of |beta_nm| = eps R_nm t over (eps, t) points in the
/// linear regime omega_1 t in [20, 200], eps in [1e-6, 1e-3].
inline Calibration extract_rate(const PhysicalParams& params, const ModePair& modes,
                                const std::vector<std::pair<double, double>>& sweep,
                                const OracleConfig& cfg = {}, double channel_phase = 0.0,
                                unsigned workers = 1) {
  validate(params);
  validate(modes);
  require(sweep.size() >= 4, ErrorKind::InvalidArgument,
          "rate extraction needs at least 4 sweep points");
  const double w1 = mode_frequency(params, 1);
  std::map<double, std::vector<double>> by_epsilon;
  for (const auto& [eps, t] : sweep) {
    require(eps >= 1e-6 * (1 - 1e-9) && eps <= 1e-3 * (1 + 1e-9), ErrorKind::InvalidArgument,
            fmt::format("calibration strain {} outside [1e-6, 1e-3]", eps));
    const double w1t = w1 * t;
    require(w1t >= 20 * (1 - 1e-9) && w1t <= 200 * (1 + 1e-9), ErrorKind::InvalidArgument,
            fmt::format("calibration time omega_1 t = {} outside [20, 200]", w1t));
    by_epsilon[eps].push_back(t);
  }
  const double omega = resonant_frequency(params, modes);

  std::vector<std::pair<double, std::vector<double>>> jobs(by_epsilon.begin(), by_epsilon.end());
  for (auto& job : jobs) {
    std::sort(job.second.begin(), job.second.end());
    job.second.erase(std::unique(job.second.begin(), job.second.end()), job.second.end());
  }
  auto run = [&](const std::pair<double, std::vector<double>>& job) {
    WaveParams wave{job.first, omega, job.second.back()};
    return detail::run_oracle(params, modes, wave, cfg, job.second);
  };
  std::vector<OracleResult> results(jobs.size());
  if (workers > 1) {
    std::vector<std::future<OracleResult>> futures;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      futures.push_back(std::async(std::launch::async, run, std::cref(jobs[i])));
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = run(jobs[i]);
  }

  Calibration cal;
  double num = 0;
  double den = 0;
  double arg_lo = 1e300;
  double arg_hi = -1e300;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    cal.identity_residual = std::max(cal.identity_residual, results[i].identity_residual);
    for (const auto& sample : results[i].series) {
      cal.points.push_back({jobs[i].first, sample.time, sample.abs_beta, sample.arg_beta});
      const double z = jobs[i].first * sample.time;
      num += z * sample.abs_beta;
      den += z * z;
      arg_lo = std::min(arg_lo, sample.arg_beta);
      arg_hi = std::max(arg_hi, sample.arg_beta);
    }
  }
  const double rate = num / den;
  for (const auto& pt : cal.points) {
    const double fit = rate * pt.epsilon * pt.time;
    cal.fit_residual = std::max(cal.fit_residual, std::abs(pt.abs_beta - fit) / pt.abs_beta);
  }
  cal.phase_drift = arg_hi - arg_lo;
  if (cal.fit_residual > 0.02) {
    fail(ErrorKind::CalibrationFailure,
         fmt::format("|beta_nm| is not linear in eps t: fit residual {:.3f} > 0.02",
                     cal.fit_residual));
  }
  cal.model.rate_per_strain = rate;
  cal.model.channel_phase = channel_phase;
  cal.model.provenance = fmt::format(
      "mode-oracle fit n={} m={} L={:.6g} m c_s={:.6g} m/s omega1={:.10g} rad/s "
      "length-convention={} truncation={} rtol={:.1e} fit-residual={:.2e}",
      modes.n, modes.m, params.trap_length, params.sound_speed, w1, to_string(cfg.convention),
      cfg.truncation, cfg.rel_tol, cal.fit_residual);
  return cal;
}

/// Default calibration grid: eps in {1e-5, 5e-6}, omega_1 t in {20, 50, 100, 200}.
inline std::vector<std::pair<double, double>> default_calibration_sweep(
    const PhysicalParams& params) {
  const double w1 = mode_frequency(params, 1);
  std::vector<std::pair<double, double>> sweep;
  for (double eps : {1e-5, 5e-6})
    for (double w1t : {20.0, 50.0, 100.0, 200.0}) sweep.emplace_back(eps, w1t / w1);
  return sweep;
}

}  // namespace phonogw
