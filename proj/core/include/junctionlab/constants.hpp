// Copyright 2026 The junctionlab Authors
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

// CODATA 2018 exact and recommended values. Every unit conversion in the
// library goes through this header.

#include <numbers>

namespace junctionlab::constants {

inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kPlanck = 6.62607015e-34;             // J s
inline constexpr double kBoltzmann = 1.380649e-23;            // J/K
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m

inline constexpr double kFluxQuantum = kPlanck / (2.0 * kElementaryCharge);  // Wb

/// e^2 / 2h expressed in GHz * fF, so that E_C/h [GHz] = kChargingGHzfF / C [fF].
inline constexpr double kChargingGHzfF =
    kElementaryCharge * kElementaryCharge / (2.0 * kPlanck) / 1e-15 / 1e9;

/// k_B / e in mV/K (thermal energy in meV at temperature T [K]).
inline constexpr double kBoltzmannMeVPerK = kBoltzmann / kElementaryCharge * 1e3;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace junctionlab::constants
