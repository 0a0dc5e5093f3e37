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

#include <complex>

#include <fmt/format.h>

#include "phonogw/error.hpp"
#include "phonogw/gaussian.hpp"

namespace phonogw {

/// Field transformation a_k -> sum_j (alpha*_kj a_j + beta*_kj a_j^dag).
struct BogoliubovSet {
  Eigen::MatrixXcd alpha;
  Eigen::MatrixXcd beta;

  int n_modes() const { return static_cast<int>(alpha.rows()); }

  static BogoliubovSet identity(int n_modes) {
    return {Eigen::MatrixXcd::Identity(n_modes, n_modes),
            Eigen::MatrixXcd::Zero(n_modes, n_modes)};
  }
};

struct BogoliubovResiduals {
  double normalization = 0;  // max |alpha alpha^dag - beta beta^dag - I|
  double symmetry = 0;       // max |alpha beta^T - beta alpha^T|

  double max() const { return std::max(normalization, symmetry); }
};

inline BogoliubovResiduals check_bogoliubov_identities(const BogoliubovSet& bg) {
  require(bg.alpha.rows() == bg.alpha.cols() && bg.beta.rows() == bg.alpha.rows() &&
              bg.beta.cols() == bg.alpha.cols(),
          ErrorKind::InvalidArgument, "Bogoliubov set: alpha/beta shape mismatch");
  const auto n = bg.alpha.rows();
  BogoliubovResiduals res;
  res.normalization = (bg.alpha * bg.alpha.adjoint() - bg.beta * bg.beta.adjoint() -
                       Eigen::MatrixXcd::Identity(n, n))
                          .cwiseAbs()
                          .maxCoeff();
  res.symmetry = (bg.alpha * bg.beta.transpose() - bg.beta * bg.alpha.transpose())
                     .cwiseAbs()
                     .maxCoeff();
  return res;
}

/// Assembles the phase-space matrix from the 2x2 blocks
///   M_mn = [[Re(a - b), Im(a + b)], [-Im(a - b), Re(a + b)]]
/// with a = alpha_mn, b = beta_mn.
inline SymplecticMatrix<double> bogoliubov_to_symplectic(const BogoliubovSet& bg,
                                                         double tol = 1e-6) {
  const auto res = check_bogoliubov_identities(bg);
  require(res.max() <= tol, ErrorKind::InvalidArgument,
          fmt::format("Bogoliubov identities violated: residual {:.3e} > {:.1e}",
                      res.max(), tol));
  const auto n = bg.alpha.rows();
  Eigen::MatrixXd s(2 * n, 2 * n);
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto a = bg.alpha(m, k);
      const auto b = bg.beta(m, k);
      s(2 * m, 2 * k) = (a - b).real();
      s(2 * m, 2 * k + 1) = (a + b).imag();
      s(2 * m + 1, 2 * k) = -(a - b).imag();
      s(2 * m + 1, 2 * k + 1) = (a + b).real();
    }
  }
  return SymplecticMatrix<double>(std::move(s));
}

/// Inverse of the block assembly above.
inline BogoliubovSet symplectic_to_bogoliubov(const Eigen::MatrixXd& s) {
  detail::require_even_square(s.rows(), s.cols(), "symplectic_to_bogoliubov");
  const auto n = s.rows() / 2;
  BogoliubovSet bg{Eigen::MatrixXcd(n, n), Eigen::MatrixXcd(n, n)};
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double m00 = s(2 * m, 2 * k);
      const double m01 = s(2 * m, 2 * k + 1);
      const double m10 = s(2 * m + 1, 2 * k);
      const double m11 = s(2 * m + 1, 2 * k + 1);
      bg.alpha(m, k) = {(m00 + m11) / 2, (m01 - m10) / 2};
      bg.beta(m, k) = {(m11 - m00) / 2, (m01 + m10) / 2};
    }
  }
  return bg;
}

}  // namespace phonogw
