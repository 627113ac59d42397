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

// The 13-state 87Sr cooling model. User-facing quantities are frequency/2pi
// in MHz; assembled operators are in rad/us.

#ifndef SRCOOL_MODEL_HPP
#define SRCOOL_MODEL_HPP

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "srcool/angmom.hpp"
#include "srcool/constants.hpp"
#include "srcool/hyperfine.hpp"
#include "srcool/lindblad.hpp"

namespace srcool {

/// Basis order of the model. Up is mI = -7/2, down is mI = -9/2.
enum class BasisState : int {
  d2_f13_m13 = 0,  // |5s15d 1D2, F=13/2, mF=-13/2>
  d2_f13_m11 = 1,  // |5s15d 1D2, F=13/2, mF=-11/2>
  d2_f11_m11 = 2,  // |5s15d 1D2, F=11/2, mF=-11/2>
  s6_down = 3,     // |5s6s 1S0, 0, down>
  p1_0_down = 4,   // |5s5p 1P1, mJ=0, down>
  p1_m1_up = 5,    // |5s5p 1P1, mJ=-1, up>
  p1_m1_down = 6,  // |5s5p 1P1, mJ=-1, down>
  clock_up = 7,    // |5s5p 3P0, up>
  clock_down = 8,  // |5s5p 3P0, down>
  ground_up = 9,   // |5s2 1S0, up>
  ground_down = 10,
  reservoir = 11,
  p1_p1_down = 12,  // |5s5p 1P1, mJ=+1, down>
};

inline constexpr int model_dim = 13;

constexpr Index idx(BasisState s) noexcept { return static_cast<Index>(s); }

inline constexpr std::array<std::string_view, model_dim> basis_labels = {
    "1D2(13/2,-13/2)", "1D2(13/2,-11/2)", "1D2(11/2,-11/2)", "6s(0,dn)",   "1P1(0,dn)",
    "1P1(-1,up)",      "1P1(-1,dn)",      "3P0(up)",         "3P0(dn)",    "1S0(up)",
    "1S0(dn)",         "reservoir",       "1P1(1,dn)"};

inline constexpr std::array<BasisState, 4> p1_states = {BasisState::p1_0_down, BasisState::p1_m1_up,
                                                        BasisState::p1_m1_down, BasisState::p1_p1_down};
inline constexpr std::array<BasisState, 3> d2_states = {BasisState::d2_f13_m13, BasisState::d2_f13_m11,
                                                        BasisState::d2_f11_m11};

/// (mJ, mI) of a 1P1 basis state.
inline std::pair<HalfInt, HalfInt> p1_quantum_numbers(BasisState s) {
  switch (s) {
    case BasisState::p1_0_down: return {HalfInt(0), half(-9)};
    case BasisState::p1_m1_up: return {HalfInt(-1), half(-7)};
    case BasisState::p1_m1_down: return {HalfInt(-1), half(-9)};
    case BasisState::p1_p1_down: return {HalfInt(1), half(-9)};
    default: throw std::invalid_argument("not a 1P1 basis state");
  }
}

struct ModelParams {
  double omega_eff = 1.0;  // MHz
  double omega_ps = 300.0;
  double omega_pd = 144.27;
  double delta = 3.8826;
  double delta_pd = -1700.0;
  double delta_ps_extra = 0.0;
  double gamma_p = 32.0;
  double gamma_s = 3.0;
  double gamma_d = 0.47;
  double B = 1.0;  // gauss
  HyperfineConstants p1_hf{-3.4, 39.0};
  double gJ = 1.0;
  double mu_nuclear = -1.0924;  // mu_N
  double E_hf = 1300.0;         // MHz, 1D2 F=13/2 to F=11/2
  XiFactors xi = xi_factors();

  void validate() const {
    const double vals[] = {omega_eff, omega_ps, omega_pd, delta, delta_pd, delta_ps_extra, gamma_p, gamma_s,
                           gamma_d,   B,        p1_hf.A,  p1_hf.Q, gJ, mu_nuclear, E_hf, xi.xi0, xi.xi1,
                           xi.xi2,    xi.xi3};
    for (double v : vals)
      if (!std::isfinite(v)) throw std::domain_error("model parameters must be finite");
    if (gamma_p < 0.0 || gamma_s < 0.0 || gamma_d < 0.0) throw std::domain_error("linewidths must be non-negative");
  }
};

inline const Spin sr87_nuclear_spin{half(9)};
inline const Spin p1_electronic{HalfInt(1)};

/// Hamiltonian in rad/us.
inline ComplexMatrix hamiltonian(const ModelParams& p) {
  p.validate();
  using B = BasisState;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(model_dim, model_dim);  // MHz
  auto couple = [&h](B a, B b, double rabi) {
    h(idx(a), idx(b)) += 0.5 * rabi;
    h(idx(b), idx(a)) += 0.5 * rabi;
  };

  h(idx(B::d2_f13_m13), idx(B::d2_f13_m13)) = p.delta_pd + p.delta;
  h(idx(B::d2_f13_m11), idx(B::d2_f13_m11)) = p.delta_pd + p.delta;
  h(idx(B::d2_f11_m11), idx(B::d2_f11_m11)) = p.delta_pd + p.E_hf + p.delta;
  h(idx(B::s6_down), idx(B::s6_down)) = p.delta + p.delta_ps_extra;
  h(idx(B::p1_0_down), idx(B::p1_0_down)) = p.delta;
  h(idx(B::p1_m1_up), idx(B::p1_m1_up)) = p.delta;
  h(idx(B::p1_m1_down), idx(B::p1_m1_down)) = p.delta;

  couple(B::d2_f13_m13, B::p1_m1_down, p.omega_pd);
  couple(B::d2_f13_m11, B::p1_0_down, p.xi.xi0 * p.omega_pd);
  couple(B::d2_f13_m11, B::p1_m1_up, p.xi.xi1 * p.omega_pd);
  couple(B::d2_f11_m11, B::p1_0_down, p.xi.xi2 * p.omega_pd);
  couple(B::d2_f11_m11, B::p1_m1_up, p.xi.xi3 * p.omega_pd);
  couple(B::s6_down, B::p1_0_down, p.omega_ps);
  couple(B::p1_m1_up, B::clock_up, p.omega_eff);
  couple(B::p1_m1_down, B::clock_down, p.omega_eff);

  const SpinSpace space{sr87_nuclear_spin, p1_electronic};
  const ZeemanParams z{p.B, p.gJ, p.mu_nuclear, sr87_nuclear_spin};
  for (B s : p1_states) {
    const auto [mJ, mI] = p1_quantum_numbers(s);
    h(idx(s), idx(s)) += hf_element(p.p1_hf, space, mJ, mI, mJ, mI) + zeeman_diag(z, mJ, mI);
  }
  const auto [mJa, mIa] = p1_quantum_numbers(B::p1_0_down);
  const auto [mJb, mIb] = p1_quantum_numbers(B::p1_m1_up);
  const double mix = hf_element(p.p1_hf, space, mJa, mIa, mJb, mIb);
  h(idx(B::p1_0_down), idx(B::p1_m1_up)) += mix;
  h(idx(B::p1_m1_up), idx(B::p1_0_down)) += mix;

  return (constants::two_pi * h).cast<Complex>();
}

/// The nine decay channels c0..c8.
inline std::vector<CollapseOp> collapse_ops(const ModelParams& p) {
  p.validate();
  using B = BasisState;
  const double sp = std::sqrt(constants::two_pi * p.gamma_p / 3.0);
  const double ss = std::sqrt(constants::two_pi * p.gamma_s);
  const double sd = std::sqrt(constants::two_pi * p.gamma_d);
  auto term = [](double a, B to, B from) { return JumpTerm{Complex(a, 0.0), idx(to), idx(from)}; };
  return {
      {"c0", {term(sp, B::ground_up, B::p1_m1_up), term(sp, B::ground_down, B::p1_m1_down)}},
      {"c1", {term(-sp, B::ground_down, B::p1_0_down)}},
      {"c2", {term(sp, B::ground_down, B::p1_p1_down)}},
      {"c3", {term(ss, B::p1_0_down, B::s6_down)}},
      {"c4", {term(ss, B::p1_p1_down, B::s6_down)}},
      {"c5", {term(ss, B::p1_m1_down, B::s6_down)}},
      {"c6", {term(sd, B::reservoir, B::d2_f13_m13)}},
      {"c7", {term(sd, B::reservoir, B::d2_f13_m11)}},
      {"c8", {term(sd, B::reservoir, B::d2_f11_m11)}},
  };
}

enum class ImpurityChannel { raman, dressing };

/// Raman: omega_eff -> (1 - chi) omega_eff. Dressing: omega_pd -> (1 - sqrt(chi)) omega_pd,
/// which scales every 1P1-1D2 coupling.
inline ModelParams with_polarization_impurity(ModelParams p, double chi, ImpurityChannel channel) {
  if (!(chi >= 0.0 && chi < 1.0)) throw std::domain_error("impurity fraction must lie in [0, 1)");
  if (channel == ImpurityChannel::raman)
    p.omega_eff *= 1.0 - chi;
  else
    p.omega_pd *= 1.0 - std::sqrt(chi);
  return p;
}

/// Population loss bound sin^2(2.4 pi chi) from the Raman impurity.
inline double impurity_loss_estimate(double chi) {
  const double s = std::sin(2.4 * constants::pi * chi);
  return s * s;
}

struct QubitVectors {
  StateVector psi0;     // clock manifold
  StateVector psi_f;    // ground manifold, same amplitudes
  StateVector psi_perp; // ground manifold, (beta*, -alpha*)
};

inline QubitVectors qubit_vectors(Complex alpha, Complex beta) {
  const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (n == 0.0) throw std::domain_error("qubit amplitudes must not both vanish");
  alpha /= n;
  beta /= n;
  QubitVectors q{StateVector::Zero(model_dim), StateVector::Zero(model_dim), StateVector::Zero(model_dim)};
  q.psi0(idx(BasisState::clock_up)) = alpha;
  q.psi0(idx(BasisState::clock_down)) = beta;
  q.psi_f(idx(BasisState::ground_up)) = alpha;
  q.psi_f(idx(BasisState::ground_down)) = beta;
  q.psi_perp(idx(BasisState::ground_up)) = std::conj(beta);
  q.psi_perp(idx(BasisState::ground_down)) = -std::conj(alpha);
  return q;
}

}  // namespace srcool

#endif  // SRCOOL_MODEL_HPP
