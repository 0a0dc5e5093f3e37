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

// Symplectic linear algebra on the real phase space of N bosonic modes.
//
// Conventions used throughout the library:
//   * quadratures are ordered (x1, p1, x2, p2, ...);
//   * covariance matrices are normalised so that the vacuum is the identity;
//   * a Gaussian unitary acts on covariance matrices as sigma -> S^T sigma S.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "phonogw/error.hpp"
#include "phonogw/scalar.hpp"

namespace phonogw {

struct Tolerances {
  double structural = 1e-10;
  double physical = 1e-8;
};

namespace detail {

inline void require_even_square(Eigen::Index rows, Eigen::Index cols,
                                const char* what) {
  require(rows == cols && rows > 0 && rows % 2 == 0, ErrorKind::InvalidArgument,
          fmt::format("{}: expected a non-empty even square matrix, got {}x{}",
                      what, rows, cols));
}

}  // namespace detail

/// The block-diagonal form Omega = (+) [[0, 1], [-1, 0]].
template <class Scalar = double>
class SymplecticForm {
 public:
  explicit SymplecticForm(int n_modes) : n_modes_(n_modes) {
    require(n_modes >= 1, ErrorKind::InvalidArgument,
            "symplectic form needs at least one mode");
    matrix_ = Matrix<Scalar>::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
      matrix_(2 * k, 2 * k + 1) = Scalar(1);
      matrix_(2 * k + 1, 2 * k) = Scalar(-1);
    }
  }

  int n_modes() const { return n_modes_; }
  const Matrix<Scalar>& matrix() const { return matrix_; }

 private:
  int n_modes_;
  Matrix<Scalar> matrix_;
};

template <class Scalar = double>
SymplecticForm<Scalar> symplectic_form(int n_modes) {
  return SymplecticForm<Scalar>(n_modes);
}

/// Real symmetric 2N x 2N second-moment matrix of a zero-mean Gaussian state.
template <class Scalar = double>
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(Matrix<Scalar> m, double symmetry_tol = 1e-10)
      : matrix_(std::move(m)) {
    detail::require_even_square(matrix_.rows(), matrix_.cols(),
                                "covariance matrix");
    const Scalar scale = std::max(Scalar(1), max_abs<Scalar>(matrix_));
    const Scalar asym = max_abs<Scalar>(Matrix<Scalar>(matrix_ - matrix_.transpose()));
    require(asym <= Scalar(symmetry_tol) * scale, ErrorKind::InvalidArgument,
            fmt::format("covariance matrix is not symmetric (residual {:.3e})",
                        to_double(asym)));
    matrix_ = (matrix_ + matrix_.transpose()) / Scalar(2);
  }

  static CovarianceMatrix vacuum(int n_modes) {
    require(n_modes >= 1, ErrorKind::InvalidArgument, "vacuum needs a mode");
    return CovarianceMatrix(Matrix<Scalar>::Identity(2 * n_modes, 2 * n_modes));
  }

  int n_modes() const { return static_cast<int>(matrix_.rows() / 2); }
  const Matrix<Scalar>& matrix() const { return matrix_; }

 private:
  Matrix<Scalar> matrix_;
};

/// Linear phase-space map. Shape is checked on construction; symplecticity is
/// guaranteed by the builders below and can be verified with is_symplectic.
template <class Scalar = double>
class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(Matrix<Scalar> m) : matrix_(std::move(m)) {
    detail::require_even_square(matrix_.rows(), matrix_.cols(),
                                "symplectic matrix");
  }

  static SymplecticMatrix identity(int n_modes) {
    return SymplecticMatrix(Matrix<Scalar>::Identity(2 * n_modes, 2 * n_modes));
  }

  int n_modes() const { return static_cast<int>(matrix_.rows() / 2); }
  const Matrix<Scalar>& matrix() const { return matrix_; }

  SymplecticMatrix operator*(const SymplecticMatrix& rhs) const {
    require(rhs.matrix_.rows() == matrix_.rows(), ErrorKind::InvalidArgument,
            "symplectic product: dimension mismatch");
    return SymplecticMatrix(matrix_ * rhs.matrix_);
  }

 private:
  Matrix<Scalar> matrix_;
};

/// max |S^T Omega S - Omega|.
template <class Scalar>
Scalar symplectic_residual(const Matrix<Scalar>& s) {
  require(s.rows() == s.cols() && s.rows() % 2 == 0, ErrorKind::InvalidArgument,
          fmt::format("symplectic check needs an even square matrix, got {}x{}",
                      s.rows(), s.cols()));
  const auto omega = symplectic_form<Scalar>(static_cast<int>(s.rows() / 2)).matrix();
  return max_abs<Scalar>(Matrix<Scalar>(s.transpose() * omega * s - omega));
}

template <class Scalar>
bool is_symplectic(const Matrix<Scalar>& s, double tol = Tolerances{}.structural) {
  return symplectic_residual<Scalar>(s) <= Scalar(tol);
}

template <class Scalar>
bool is_symplectic(const SymplecticMatrix<Scalar>& s,
                   double tol = Tolerances{}.structural) {
  return is_symplectic<Scalar>(s.matrix(), tol);
}

/// Two-mode squeezer exp[r(e^{-i theta} a b - e^{i theta} a^dag b^dag)] on
/// (x_a, p_a, x_b, p_b): diagonal blocks cosh(r) I, off-diagonal blocks
/// sinh(r) R(theta) Z with Z = diag(1, -1).
template <class Scalar = double>
SymplecticMatrix<Scalar> two_mode_squeezer(const Scalar& r, const Scalar& theta) {
  require(is_finite(r) && is_finite(theta), ErrorKind::InvalidArgument,
          "two_mode_squeezer: non-finite parameter");
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  const Scalar c = cosh(r);
  const Scalar s = sinh(r);
  const Scalar ct = cos(theta);
  const Scalar st = sin(theta);
  Matrix<Scalar> m = Matrix<Scalar>::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 2) = m(3, 3) = c;
  // R(theta) Z = [[cos, sin], [sin, -cos]] (symmetric), same in both corners.
  for (int off : {0, 2}) {
    const int row = off;
    const int col = 2 - off;
    m(row, col) = s * ct;
    m(row, col + 1) = s * st;
    m(row + 1, col) = s * st;
    m(row + 1, col + 1) = -s * ct;
  }
  return SymplecticMatrix<Scalar>(std::move(m));
}

/// Independent phase rotations of each mode: x -> x cos + p sin.
template <class Scalar = double>
SymplecticMatrix<Scalar> local_rotation(const std::vector<Scalar>& angles) {
  require(!angles.empty(), ErrorKind::InvalidArgument, "local_rotation: no modes");
  const auto n = static_cast<Eigen::Index>(angles.size());
  Matrix<Scalar> m = Matrix<Scalar>::Zero(2 * n, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    using std::cos;
    using std::sin;
    const Scalar c = cos(angles[k]);
    const Scalar s = sin(angles[k]);
    m(2 * k, 2 * k) = c;
    m(2 * k, 2 * k + 1) = s;
    m(2 * k + 1, 2 * k) = -s;
    m(2 * k + 1, 2 * k + 1) = c;
  }
  return SymplecticMatrix<Scalar>(std::move(m));
}

template <class Scalar>
CovarianceMatrix<Scalar> apply_symplectic(const SymplecticMatrix<Scalar>& s,
                                          const CovarianceMatrix<Scalar>& sigma) {
  require(s.matrix().rows() == sigma.matrix().rows(), ErrorKind::InvalidArgument,
          fmt::format("apply_symplectic: {}-mode map on {}-mode state",
                      s.n_modes(), sigma.n_modes()));
  Matrix<Scalar> out = s.matrix().transpose() * sigma.matrix() * s.matrix();
  return CovarianceMatrix<Scalar>((out + out.transpose()) / Scalar(2));
}

/// Moduli of the eigenvalues of Omega sigma (they come in +-i nu pairs),
/// one per mode, largest first.
template <class Scalar>
std::vector<Scalar> symplectic_eigenvalues(const CovarianceMatrix<Scalar>& sigma) {
  const Matrix<Scalar>& m = sigma.matrix();
  Eigen::LLT<Matrix<Scalar>> llt(m);
  if (llt.info() != Eigen::Success) {
    fail(ErrorKind::NumericFailure,
         fmt::format("symplectic_eigenvalues: covariance matrix is not positive "
                     "definite (diagonal min {:.6e})",
                     to_double(Scalar(m.diagonal().minCoeff()))));
  }
  const auto omega = symplectic_form<Scalar>(sigma.n_modes()).matrix();
  Eigen::EigenSolver<Matrix<Scalar>> solver(Matrix<Scalar>(omega * m), false);
  if (solver.info() != Eigen::Success) {
    fail(ErrorKind::NumericFailure, "symplectic_eigenvalues: eigensolver failed");
  }
  std::vector<Scalar> moduli;
  moduli.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    using std::abs;
    moduli.push_back(abs(solver.eigenvalues()(i)));
  }
  std::sort(moduli.begin(), moduli.end(), [](const Scalar& a, const Scalar& b) { return a > b; });
  // Conjugate pairs are adjacent after sorting; average each pair.
  std::vector<Scalar> nu;
  nu.reserve(moduli.size() / 2);
  for (std::size_t i = 0; i + 1 < moduli.size(); i += 2) {
    nu.push_back((moduli[i] + moduli[i + 1]) / Scalar(2));
  }
  return nu;
}

template <class Scalar>
bool is_physical_state(const CovarianceMatrix<Scalar>& sigma,
                       double tol = Tolerances{}.physical) {
  Eigen::LLT<Matrix<Scalar>> llt(sigma.matrix());
  if (llt.info() != Eigen::Success) return false;
  const auto nu = symplectic_eigenvalues(sigma);
  return std::all_of(nu.begin(), nu.end(),
                     [&](const Scalar& v) { return v >= Scalar(1) - Scalar(tol); });
}

/// 1/sqrt(det sigma); one exactly for pure states.
template <class Scalar>
Scalar purity(const CovarianceMatrix<Scalar>& sigma) {
  using std::sqrt;
  const Scalar det = sigma.matrix().determinant();
  require(det > Scalar(0), ErrorKind::NumericFailure,
          "purity: non-positive determinant");
  return Scalar(1) / sqrt(det);
}

}  // namespace phonogw
