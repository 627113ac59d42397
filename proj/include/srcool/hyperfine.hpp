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

#ifndef SRCOOL_HYPERFINE_HPP
#define SRCOOL_HYPERFINE_HPP

#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

#include "srcool/angmom.hpp"
#include "srcool/constants.hpp"
#include "srcool/half_int.hpp"

namespace srcool {

/// Magnetic dipole (A) and electric quadrupole (Q) constants, frequency/2pi in MHz.
struct HyperfineConstants {
  double A = 0.0;
  double Q = 0.0;
};

/// Product space |mJ, mI> ordered with mJ as the outer (slow) index, both ascending.
struct SpinSpace {
  Spin I;
  Spin J;

  int dimension() const { return I.multiplicity() * J.multiplicity(); }

  int index(HalfInt mJ, HalfInt mI) const {
    return ((mJ.twice() + J.twice()) / 2) * I.multiplicity() + (mI.twice() + I.twice()) / 2;
  }

  /// (mJ, mI) of a basis index.
  std::pair<HalfInt, HalfInt> state(int idx) const {
    const int nI = I.multiplicity();
    return {HalfInt::from_twice(2 * (idx / nI) - J.twice()), HalfInt::from_twice(2 * (idx % nI) - I.twice())};
  }
};

struct ZeemanParams {
  double B = 0.0;              // gauss
  double gJ = 1.0;
  double mu_nuclear = 0.0;     // nuclear moment in units of mu_N
  Spin nuclear_spin{half(9)};  // the moment is spread over mI / I
};

namespace detail {

inline bool quadrupole_active(Spin I, Spin J) { return I.twice() >= 2 && J.twice() >= 2; }

// 2IJ(2I-1)(2J-1)
inline double quadrupole_denominator(Spin I, Spin J) {
  const double i = I.value().value(), j = J.value().value();
  return 2.0 * i * j * (2.0 * i - 1.0) * (2.0 * j - 1.0);
}

inline double step(double x) { return x > 0.0 ? 1.0 : 0.0; }

}  // namespace detail

/// <mJ', mI'| A I.J + Q [3(I.J)^2 + 1.5 I.J - I(I+1)J(J+1)] / [2IJ(2I-1)(2J-1)] |mJ, mI>
/// in MHz, evaluated term by term from the ladder-operator expansion.
inline double hf_element(const HyperfineConstants& c, const SpinSpace& s, HalfInt mJp, HalfInt mIp, HalfInt mJ,
                         HalfInt mI) {
  const Spin I = s.I, J = s.J;
  if (!I.admits(mI) || !I.admits(mIp) || !J.admits(mJ) || !J.admits(mJp)) return 0.0;
  if (mJp + mIp != mJ + mI) return 0.0;

  const double i = I.value().value(), j = J.value().value();
  const double mi = mI.value(), mj = mJ.value();
  const bool quad = detail::quadrupole_active(I, J) && c.Q != 0.0;
  const double den = quad ? detail::quadrupole_denominator(I, J) : 1.0;
  const double qd = quad ? c.Q / den : 0.0;
  const double qd4 = qd / 4.0;

  const int dmJ = mJp.twice() - mJ.twice();
  if (dmJ == 0) {
    double v = c.A * mi * mj;
    if (quad) {
      v += qd * (3.0 * mi * mi * mj * mj + 1.5 * mi * mj - i * j * (i + 1.0) * (j + 1.0));
      v += qd4 * 3.0 * (i + mi) * (i - mi + 1.0) * (j - mj) * (j + mj + 1.0) * detail::step(j - mj) *
           detail::step(mi + i);
      v += qd4 * 3.0 * (i - mi) * (i + mi + 1.0) * (j + mj) * (j - mj + 1.0) * detail::step(j + mj) *
           detail::step(i - mi);
    }
    return v;
  }
  if (dmJ == -2) {  // mJ' = mJ - 1, mI' = mI + 1
    const double a = ladder_a(I, J, mJ, mI);
    return 0.5 * c.A * a + qd * (1.5 * (mi * mj + (mi + 1.0) * (mj - 1.0)) * a + 0.75 * a);
  }
  if (dmJ == 2) {  // mJ' = mJ + 1, mI' = mI - 1
    const double b = ladder_b(I, J, mJ, mI);
    return 0.5 * c.A * b + qd * (1.5 * (mi * mj + (mi - 1.0) * (mj + 1.0)) * b + 0.75 * b);
  }
  if (dmJ == -4) {
    const double a1 = ladder_a(I, J, mJ, mI);
    const double a2 = ladder_a(I, J, mJ - HalfInt(1), mI + HalfInt(1));
    return qd4 * 3.0 * a1 * a2;
  }
  if (dmJ == 4) {
    const double b1 = ladder_b(I, J, mJ, mI);
    const double b2 = ladder_b(I, J, mJ + HalfInt(1), mI - HalfInt(1));
    return qd4 * 3.0 * b1 * b2;
  }
  return 0.0;
}

/// Hyperfine matrix over SpinSpace ordering (MHz); block diagonal in mJ + mI.
inline Eigen::MatrixXd hf_matrix(const HyperfineConstants& c, const SpinSpace& s) {
  const int n = s.dimension();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int row = 0; row < n; ++row) {
    const auto [mJp, mIp] = s.state(row);
    for (int col = row; col < n; ++col) {
      const auto [mJ, mI] = s.state(col);
      h(row, col) = h(col, row) = hf_element(c, s, mJp, mIp, mJ, mI);
    }
  }
  return h;
}

/// Energy (MHz) of the F multiplet: A K/2 + Q [1.5 K(K+1) - 2I(I+1)J(J+1)] / [2I(2I-1) 2J(2J-1)],
/// with K = F(F+1) - I(I+1) - J(J+1).
inline double f_level_energy(const HyperfineConstants& c, Spin I, Spin J, Spin F) {
  const int tI = I.twice(), tJ = J.twice(), tF = F.twice();
  if (tF > tI + tJ || tF < std::abs(tI - tJ) || (tI + tJ - tF) % 2 != 0)
    throw std::domain_error("F = " + F.value().str() + " is not in |I-J|..I+J");
  const double i = I.value().value(), j = J.value().value(), f = F.value().value();
  const double K = f * (f + 1.0) - i * (i + 1.0) - j * (j + 1.0);
  double e = 0.5 * c.A * K;
  if (detail::quadrupole_active(I, J)) {
    e += c.Q * (1.5 * K * (K + 1.0) - 2.0 * i * (i + 1.0) * j * (j + 1.0)) /
         (2.0 * i * (2.0 * i - 1.0) * 2.0 * j * (2.0 * j - 1.0));
  }
  return e;
}

/// E(F2) - E(F1) in MHz.
inline double f_splitting(const HyperfineConstants& c, Spin I, Spin J, Spin F1, Spin F2) {
  return f_level_energy(c, I, J, F2) - f_level_energy(c, I, J, F1);
}

/// gJ mu_B B mJ - (mu/I) mu_N B mI, in MHz.
inline double zeeman_diag(const ZeemanParams& z, HalfInt mJ, HalfInt mI) {
  const double electronic = z.gJ * constants::bohr_magneton_mhz_per_gauss * z.B * mJ.value();
  const double spin = z.nuclear_spin.value().value();
  const double nuclear =
      spin > 0.0 ? (z.mu_nuclear / spin) * constants::nuclear_magneton_mhz_per_gauss * z.B * mI.value() : 0.0;
  return electronic - nuclear;
}

}  // namespace srcool

#endif  // SRCOOL_HYPERFINE_HPP
