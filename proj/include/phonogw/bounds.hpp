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

#include <cmath>

#include <fmt/format.h>

#include "phonogw/error.hpp"

namespace phonogw {

/// Delta eps >= 1 / sqrt(M H_eps) for M independent probes.
inline double cramer_rao_bound(double h_eps, int probes) {
  require(probes >= 1, ErrorKind::InvalidArgument, "cramer_rao_bound needs M >= 1");
  require(h_eps > 0 && std::isfinite(h_eps), ErrorKind::UndefinedBound,
          fmt::format("no Cramer-Rao bound for H_eps = {:.6g}", h_eps));
  return 1.0 / std::sqrt(static_cast<double>(probes) * h_eps);
}

/// Delta eps sqrt(t), in 1/sqrt(Hz).
inline double sensitivity_density(double delta_eps, double time) {
  require(time > 0, ErrorKind::InvalidArgument, "sensitivity_density needs t > 0");
  return delta_eps * std::sqrt(time);
}

}  // namespace phonogw
