// Copyright 2026 The srcool Authors
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

#ifndef SRCOOL_CONSTANTS_HPP
#define SRCOOL_CONSTANTS_HPP

#include <numbers>

// CODATA 2018 values, SI unless the name says otherwise.
namespace srcool::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline constexpr double speed_of_light = 299792458.0;          // m/s
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double hbar = 1.054571817e-34;                 // J s
inline constexpr double elementary_charge = 1.602176634e-19;    // C
inline constexpr double bohr_radius = 5.29177210903e-11;        // m

inline constexpr double bohr_magneton_mhz_per_gauss = 1.39962449361;       // mu_B / h
inline constexpr double nuclear_magneton_mhz_per_gauss = 7.6225932291e-4;  // mu_N / h

/// e * a0 in C m.
inline constexpr double atomic_dipole_unit = elementary_charge * bohr_radius;

}  // namespace srcool::constants

#endif  // SRCOOL_CONSTANTS_HPP
