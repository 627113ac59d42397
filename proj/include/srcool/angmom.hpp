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

#ifndef SRCOOL_ANGMOM_HPP
#define SRCOOL_ANGMOM_HPP

#include <cmath>
#include <cstdlib>
#include <vector>

#include "srcool/half_int.hpp"

namespace srcool {

namespace detail {

// j(j+1) - m(m-1) in twice-integer units, divided by 4 at the end.
inline long double lowering_factor(int tj, int tm) {
  return std::sqrt(0.25L * static_cast<long double>(tj * (tj + 2) - tm * (tm - 2)));
}

inline long double raising_factor(int tj, int tm) {
  return std::sqrt(0.25L * static_cast<long double>(tj * (tj + 2) - tm * (tm + 2)));
}

// Coupled states of j1 x j2 expanded over the uncoupled product basis.
// Coefficients are indexed by k with m1 = -j1 + k; m2 follows from M.
class CouplingBuilder {
 public:
  CouplingBuilder(int tj1, int tj2) : tj1_(tj1), tj2_(tj2) {}

  // |J M> built by lowering from the highest-weight state; highest weights
  // below the stretched one are fixed by orthogonality to every larger J with
  // the Condon-Shortley choice <j1 j1; j2 J-j1 | J J> > 0.
  std::vector<long double> state(int tJ, int tM) {
    const int tmax = tj1_ + tj2_;
    std::vector<std::vector<long double>> highest;  // index (tmax - tJ') / 2
    for (int tJp = tmax; tJp >= tJ; tJp -= 2) {
      std::vector<long double> v(static_cast<std::size_t>(tj1_ + 1), 0.0L);
      if (tJp == tmax) {
        v[static_cast<std::size_t>(tj1_)] = 1.0;
      } else {
        v[static_cast<std::size_t>(tj1_)] = 1.0;
        for (std::size_t i = 0; i < highest.size(); ++i) {
          const int tJpp = tmax - 2 * static_cast<int>(i);
          const auto u = lower_to(highest[i], tJpp, tJpp, tJp);
          long double dot = 0.0;
          for (std::size_t k = 0; k < v.size(); ++k) dot += u[k] * v[k];
          for (std::size_t k = 0; k < v.size(); ++k) v[k] -= dot * u[k];
        }
        long double norm = 0.0;
        for (long double c : v) norm += c * c;
        norm = std::sqrt(norm);
        const long double sign = v[static_cast<std::size_t>(tj1_)] < 0.0 ? -1.0L : 1.0L;
        for (long double& c : v) c *= sign / norm;
      }
      highest.push_back(std::move(v));
    }
    return lower_to(highest.back(), tJ, tJ, tM);
  }

 private:
  bool valid_m2(int tm2) const { return std::abs(tm2) <= tj2_; }

  // Applies (J-)^n / norm to a state of total projection tM_from.
  std::vector<long double> lower_to(std::vector<long double> s, int tJ, int tM_from, int tM_to) const {
    for (int tM = tM_from; tM > tM_to; tM -= 2) {
      std::vector<long double> out(s.size(), 0.0L);
      for (int k = 0; k <= tj1_; ++k) {
        const long double c = s[static_cast<std::size_t>(k)];
        if (c == 0.0L) continue;
        const int tm1 = -tj1_ + 2 * k;
        const int tm2 = tM - tm1;
        if (!valid_m2(tm2)) continue;
        if (tm1 > -tj1_) out[static_cast<std::size_t>(k - 1)] += c * lowering_factor(tj1_, tm1);
        if (tm2 > -tj2_) out[static_cast<std::size_t>(k)] += c * lowering_factor(tj2_, tm2);
      }
      const long double norm = lowering_factor(tJ, tM);
      for (long double& c : out) c /= norm;
      s = std::move(out);
    }
    return s;
  }

  int tj1_;
  int tj2_;
};

}  // namespace detail

/// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> in the Condon-Shortley
/// convention. Zero whenever the coupling is forbidden.
inline double clebsch_gordan(Spin j1, HalfInt m1, Spin j2, HalfInt m2, Spin J, HalfInt M) {
  if (!j1.admits(m1) || !j2.admits(m2) || !J.admits(M)) return 0.0;
  if (m1 + m2 != M) return 0.0;
  const int tj1 = j1.twice(), tj2 = j2.twice(), tJ = J.twice();
  if (tJ > tj1 + tj2 || tJ < std::abs(tj1 - tj2) || (tj1 + tj2 - tJ) % 2 != 0) return 0.0;
  detail::CouplingBuilder builder(tj1, tj2);
  const auto coeffs = builder.state(tJ, M.twice());
  return static_cast<double>(coeffs[static_cast<std::size_t>((m1.twice() + tj1) / 2)]);
}

/// sqrt((I-mI)(I+mI+1)) * sqrt((J+mJ)(J-mJ+1)): the I+ J- ladder amplitude.
inline double ladder_a(Spin I, Spin J, HalfInt mJ, HalfInt mI) {
  if (!I.admits(mI) || !J.admits(mJ)) return 0.0;
  return static_cast<double>(detail::raising_factor(I.twice(), mI.twice()) * detail::lowering_factor(J.twice(), mJ.twice()));
}

/// sqrt((I+mI)(I-mI+1)) * sqrt((J-mJ)(J+mJ+1)): the I- J+ ladder amplitude.
inline double ladder_b(Spin I, Spin J, HalfInt mJ, HalfInt mI) {
  if (!I.admits(mI) || !J.admits(mJ)) return 0.0;
  return static_cast<double>(detail::lowering_factor(I.twice(), mI.twice()) * detail::raising_factor(J.twice(), mJ.twice()));
}

/// Relative dipole amplitude for |J mJ; I mI> -> |J' F mF> driven by a photon
/// of helicity q: sum over mJ' of <J mJ; 1 q | J' mJ'> <J' mJ'; I mI | F mF>.
inline double dressing_amplitude(Spin J, HalfInt mJ, Spin I, HalfInt mI, int q, Spin Jp, Spin F, HalfInt mF) {
  double sum = 0.0;
  const Spin photon(HalfInt(1));
  for (HalfInt mJp : Jp.projections()) {
    const double c1 = clebsch_gordan(J, mJ, photon, HalfInt(q), Jp, mJp);
    if (c1 == 0.0) continue;
    sum += c1 * clebsch_gordan(Jp, mJp, I, mI, F, mF);
  }
  return sum;
}

/// Angular factors for sigma- dressing of 1P1 (J=1) to 1D2 (J'=2) with I=9/2,
/// relative to the stretched |-1, -9/2> -> |F=13/2, mF=-13/2> amplitude.
struct XiFactors {
  double xi0 = 0.0;  // |0,-9/2>  -> |13/2,-11/2>
  double xi1 = 0.0;  // |-1,-7/2> -> |13/2,-11/2>
  double xi2 = 0.0;  // |0,-9/2>  -> |11/2,-11/2>
  double xi3 = 0.0;  // |-1,-7/2> -> |11/2,-11/2>
};

inline XiFactors xi_factors() {
  const Spin J(HalfInt(1)), Jp(HalfInt(2)), I(half(9));
  const Spin F13(half(13)), F11(half(11));
  constexpr int sigma_minus = -1;
  auto amp = [&](HalfInt mJ, HalfInt mI, Spin F, HalfInt mF) {
    return dressing_amplitude(J, mJ, I, mI, sigma_minus, Jp, F, mF);
  };
  const double stretched = amp(HalfInt(-1), half(-9), F13, half(-13));
  XiFactors xi;
  xi.xi0 = amp(HalfInt(0), half(-9), F13, half(-11)) / stretched;
  xi.xi1 = amp(HalfInt(-1), half(-7), F13, half(-11)) / stretched;
  xi.xi2 = amp(HalfInt(0), half(-9), F11, half(-11)) / stretched;
  xi.xi3 = amp(HalfInt(-1), half(-7), F11, half(-11)) / stretched;
  return xi;
}

}  // namespace srcool

#endif  // SRCOOL_ANGMOM_HPP
