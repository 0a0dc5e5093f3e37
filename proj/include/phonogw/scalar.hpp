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

// Scalar plumbing shared by every templated routine. Any arithmetic type with
// an Eigen NumTraits specialisation works; HighPrecision is the one used where
// covariance matrices of strongly squeezed states lose most of their digits
// to cancellation.

#include <cmath>
#include <complex>
#include <type_traits>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace phonogw {

using HighPrecision = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<100>,
    boost::multiprecision::et_off>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
double to_double(const Scalar& value) {
  if constexpr (std::is_floating_point_v<Scalar>) {
    return static_cast<double>(value);
  } else {
    return value.template convert_to<double>();
  }
}

template <class To, class From>
Matrix<To> matrix_cast(const Matrix<From>& m) {
  Matrix<To> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<To, double>) {
        out(i, j) = to_double(m(i, j));
      } else {
        out(i, j) = To(m(i, j));
      }
    }
  return out;
}

template <class Scalar>
bool is_finite(const Scalar& value) {
  using std::isfinite;
  using boost::multiprecision::isfinite;
  return isfinite(value);
}

template <class Scalar>
Scalar max_abs(const Matrix<Scalar>& m) {
  Scalar best(0);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      using std::abs;
      Scalar a = abs(m(i, j));
      if (a > best) best = a;
    }
  return best;
}

}  // namespace phonogw
