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

// Uhlmann fidelity between two-mode Gaussian states with zero first moments,
// written through the three determinant invariants
//
//   Gamma  = det(i Omega sA i Omega sB + I) / 16
//   Lambda = det(i Omega sA + I) det(i Omega sB + I) / 16
//   Delta  = det(sA + sB) / 16
//
//   F = 1 / (sqrt(Lambda) + sqrt(Gamma) - sqrt((sqrt(Lambda) + sqrt(Gamma))^2 - Delta))
//
// For pure states F is the squared overlap |<a|b>|^2.

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "phonogw/error.hpp"
#include "phonogw/gaussian.hpp"
#include "phonogw/scalar.hpp"

namespace phonogw {

template <class Scalar>
struct FidelityBreakdown {
  Scalar gamma{0};
  Scalar lambda{0};
  Scalar delta{0};
  Scalar root_argument{0};  // (sqrt(Lambda) + sqrt(Gamma))^2 - Delta
  Scalar fidelity{0};
  Scalar one_minus_sqrt_f{0};
  double imag_residual = 0;  // relative imaginary part left in det(I + i Omega s)
};

namespace detail {

/// det(I + i M) for real M, from the characteristic polynomial of M
/// (Faddeev-LeVerrier). Returns real and imaginary parts and the magnitude of
/// the largest term, which sets the rounding scale.
template <class Scalar>
struct ComplexDet {
  Scalar re{0};
  Scalar im{0};
  Scalar scale{0};
};

template <class Scalar>
ComplexDet<Scalar> det_identity_plus_i(const Matrix<Scalar>& a) {
  const auto n = a.rows();
  // p(lambda) = det(lambda I - A) = sum_k c[k] lambda^k.
  std::vector<Scalar> c(static_cast<std::size_t>(n + 1), Scalar(0));
  c[static_cast<std::size_t>(n)] = Scalar(1);
  Matrix<Scalar> mk = Matrix<Scalar>::Zero(n, n);
  const Matrix<Scalar> id = Matrix<Scalar>::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = a * mk + c[static_cast<std::size_t>(n - k + 1)] * id;
    c[static_cast<std::size_t>(n - k)] = -Scalar((a * mk).trace()) / Scalar(k);
  }
  // det(I + iA) = (-i)^n p(i).
  ComplexDet<Scalar> out;
  Scalar pre(0), pim(0);
  for (Eigen::Index k = 0; k <= n; ++k) {
    const Scalar term = c[static_cast<std::size_t>(k)];
    using std::abs;
    if (abs(term) > out.scale) out.scale = abs(term);
    switch (k % 4) {
      case 0: pre += term; break;
      case 1: pim += term; break;
      case 2: pre -= term; break;
      case 3: pim -= term; break;
    }
  }
  switch (n % 4) {
    case 0: out.re = pre; out.im = pim; break;
    case 1: out.re = pim; out.im = -pre; break;
    case 2: out.re = -pre; out.im = -pim; break;
    case 3: out.re = -pim; out.im = pre; break;
  }
  return out;
}

template <class Scalar>
Scalar clamp_small_negative(const Scalar& value, const Scalar& scale, const char* what) {
  if (value >= Scalar(0)) return value;
  const Scalar allowed = Scalar(1e-12) * std::max(Scalar(1), scale);
  if (-value <= allowed) return Scalar(0);
  fail(ErrorKind::NumericFailure,
       fmt::format("uhlmann_fidelity: {} is negative ({:.3e}) beyond rounding", what,
                   to_double(value)));
}

}  // namespace detail

template <class Scalar>
FidelityBreakdown<Scalar> uhlmann_fidelity(const CovarianceMatrix<Scalar>& a,
                                           const CovarianceMatrix<Scalar>& b,
                                           double physical_tol = Tolerances{}.physical) {
  require(a.n_modes() == 2 && b.n_modes() == 2, ErrorKind::InvalidArgument,
          "uhlmann_fidelity: closed form is for two-mode states");
  require(is_physical_state(a, physical_tol) && is_physical_state(b, physical_tol),
          ErrorKind::InvalidArgument, "uhlmann_fidelity: non-physical covariance matrix");
  using std::abs;
  using std::sqrt;

  const Matrix<Scalar> omega = symplectic_form<Scalar>(2).matrix();
  const Matrix<Scalar> oa = omega * a.matrix();
  const Matrix<Scalar> ob = omega * b.matrix();
  const Matrix<Scalar> id = Matrix<Scalar>::Identity(4, 4);

  FidelityBreakdown<Scalar> out;
  out.gamma = Matrix<Scalar>(id - oa * ob).determinant() / Scalar(16);
  out.delta = Matrix<Scalar>(a.matrix() + b.matrix()).determinant() / Scalar(16);

  const auto da = detail::det_identity_plus_i<Scalar>(oa);
  const auto db = detail::det_identity_plus_i<Scalar>(ob);
  out.imag_residual = std::max(to_double(Scalar(abs(da.im) / std::max(Scalar(1), da.scale))),
                               to_double(Scalar(abs(db.im) / std::max(Scalar(1), db.scale))));
  const Scalar det_a = detail::clamp_small_negative(da.re, da.scale, "det(I + i Omega sA)");
  const Scalar det_b = detail::clamp_small_negative(db.re, db.scale, "det(I + i Omega sB)");
  out.lambda = det_a * det_b / Scalar(16);

  require(out.gamma > Scalar(0) && out.delta > Scalar(0), ErrorKind::NumericFailure,
          "uhlmann_fidelity: non-positive Gamma or Delta");
  const Scalar sqrt_gamma = sqrt(out.gamma);
  const Scalar sqrt_lambda = sqrt(out.lambda);
  const Scalar p = sqrt_lambda + sqrt_gamma;
  out.root_argument = detail::clamp_small_negative(
      Scalar(p * p - out.delta), std::max(Scalar(p * p), out.delta), "root argument");
  const Scalar root = sqrt(out.root_argument);
  const Scalar d = p - root;
  require(d > Scalar(0), ErrorKind::NumericFailure, "uhlmann_fidelity: non-positive denominator");
  out.fidelity = Scalar(1) / d;
  // D - 1 without forming sqrt(Gamma) - 1 by subtraction.
  const Scalar d_minus_one = sqrt_lambda + (out.gamma - Scalar(1)) / (sqrt_gamma + Scalar(1)) - root;
  const Scalar sqrt_d = sqrt(d);
  out.one_minus_sqrt_f = d_minus_one / (sqrt_d * (Scalar(1) + sqrt_d));
  return out;
}

}  // namespace phonogw
