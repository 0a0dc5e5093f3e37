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

#include <numbers>

namespace phonogw::constants {

// CODATA 2018, exact where the SI fixes them.
inline constexpr double kHbar = 1.054571817e-34;       // J s
inline constexpr double kBoltzmann = 1.380649e-23;     // J / K
inline constexpr double kSpeedOfLight = 299792458.0;   // m / s
inline constexpr double kRubidium87Mass = 1.4431609e-25;  // kg
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg

inline constexpr double kPi = std::numbers::pi;

}  // namespace phonogw::constants
