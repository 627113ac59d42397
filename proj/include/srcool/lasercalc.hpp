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

// Linewidth, dipole matrix element, field, intensity and power conversions.
//
//   Gamma = omega0^3 |d|^2 / (m pi eps0 hbar c^3)
//
// where the multiplicity m is 9 for a reduced element quoted between the
// fine-structure levels and 1 for a single-component element.

#ifndef SRCOOL_LASERCALC_HPP
#define SRCOOL_LASERCALC_HPP

#include <cmath>
#include <stdexcept>

#include "srcool/constants.hpp"

namespace srcool::laser {

enum class Multiplicity : int { nine = 9, one = 1 };

inline double factor(Multiplicity m) { return static_cast<double>(static_cast<int>(m)); }

struct BeamSpec {
  double spot_radius_um = 20.0;
};

/// Angular frequency (rad/s) of a vacuum wavelength in nm.
inline double omega_from_wavelength_nm(double wavelength_nm) {
  if (!(wavelength_nm > 0.0)) throw std::domain_error("wavelength must be positive");
  return constants::two_pi * constants::speed_of_light / (wavelength_nm * 1e-9);
}

/// Angular frequency (rad/s) of a frequency in Hz.
inline double omega_from_frequency_hz(double hz) { return constants::two_pi * hz; }

namespace detail {
inline double rate_prefactor(double omega0, Multiplicity m) {
  using namespace constants;
  return omega0 * omega0 * omega0 /
         (factor(m) * pi * vacuum_permittivity * hbar * speed_of_light * speed_of_light * speed_of_light);
}
}  // namespace detail

/// Linewidth (1/s) from |d| in e a0.
inline double linewidth_from_rdme(double d_ea0, double omega0, Multiplicity m) {
  if (!(omega0 > 0.0)) throw std::domain_error("transition frequency must be positive");
  const double d = d_ea0 * constants::atomic_dipole_unit;
  return detail::rate_prefactor(omega0, m) * d * d;
}

/// |d| in e a0 from a linewidth (1/s).
inline double rdme_from_linewidth(double gamma, double omega0, Multiplicity m) {
  if (!(omega0 > 0.0)) throw std::domain_error("transition frequency must be positive");
  if (gamma < 0.0) throw std::domain_error("linewidth must be non-negative");
  return std::sqrt(gamma / detail::rate_prefactor(omega0, m)) / constants::atomic_dipole_unit;
}

/// Field amplitude (V/m) for a Rabi frequency given as frequency/2pi in MHz.
inline double field_for_rabi(double rabi_mhz, double d_ea0) {
  if (!(d_ea0 > 0.0)) throw std::domain_error("dipole matrix element must be positive");
  return constants::two_pi * rabi_mhz * 1e6 * constants::hbar / (d_ea0 * constants::atomic_dipole_unit);
}

/// Intensity (W/m^2) of a plane wave with field amplitude E (V/m).
inline double intensity_from_field(double field) {
  return 0.5 * constants::vacuum_permittivity * constants::speed_of_light * field * field;
}

/// Power (W) of a flat-top beam of the given radius.
inline double power_from_intensity(double intensity, const BeamSpec& beam) {
  if (!(beam.spot_radius_um > 0.0)) throw std::domain_error("spot radius must be positive");
  const double r = beam.spot_radius_um * 1e-6;
  return intensity * constants::pi * r * r;
}

inline constexpr double w_per_m2_to_w_per_cm2 = 1e-4;

}  // namespace srcool::laser

#endif  // SRCOOL_LASERCALC_HPP
