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

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "srcool/model.hpp"

using namespace srcool;
using B = BasisState;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST(HamiltonianTest, StretchedDressingEntry) {
  const ModelParams p;
  const ComplexMatrix H = hamiltonian(p);
  EXPECT_NEAR(H(idx(B::d2_f13_m13), idx(B::p1_m1_down)).real(), kTwoPi * p.omega_pd / 2.0, 1e-12);
}

TEST(HamiltonianTest, HermitianAndReal) {
  const ComplexMatrix H = hamiltonian(ModelParams{});
  EXPECT_EQ((H - H.adjoint()).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(H.imag().cwiseAbs().maxCoeff(), 0.0);
}

TEST(HamiltonianTest, ZeroPattern) {
  // Off-diagonal couplings allowed by the model, as (row, col) with row < col.
  const int allowed[][2] = {{0, 6}, {1, 4}, {1, 5}, {2, 4}, {2, 5}, {3, 4}, {4, 5}, {5, 7}, {6, 8}};
  bool mask[model_dim][model_dim] = {};
  for (const auto& a : allowed) mask[a[0]][a[1]] = mask[a[1]][a[0]] = true;
  const ComplexMatrix H = hamiltonian(ModelParams{});
  for (int r = 0; r < model_dim; ++r)
    for (int c = 0; c < model_dim; ++c) {
      if (r == c) continue;
      if (mask[r][c])
        EXPECT_NE(H(r, c), 0.0) << r << "," << c;
      else
        EXPECT_EQ(H(r, c), 0.0) << r << "," << c;
    }
  // The clock, ground and reservoir diagonals stay empty.
  for (B s : {B::clock_up, B::clock_down, B::ground_up, B::ground_down, B::reservoir})
    EXPECT_EQ(H(idx(s), idx(s)), 0.0);
}

TEST(HamiltonianTest, PlusOneStateIsUncoupled) {
  const ComplexMatrix H = hamiltonian(ModelParams{});
  for (int k = 0; k < model_dim; ++k)
    if (k != idx(B::p1_p1_down)) {
      EXPECT_EQ(H(idx(B::p1_p1_down), k), 0.0);
      EXPECT_EQ(H(k, idx(B::p1_p1_down)), 0.0);
    }
}

TEST(HamiltonianTest, LasersOffLeavesEmbeddedHyperfine) {
  ModelParams p;
  p.omega_eff = p.omega_ps = p.omega_pd = 0.0;
  p.delta = p.delta_pd = 0.0;
  p.B = 0.0;
  p.E_hf = 0.0;
  const ComplexMatrix H = hamiltonian(p);
  const SpinSpace s{Spin(half(9)), Spin(HalfInt(1))};
  const Eigen::MatrixXd h = hf_matrix(p.p1_hf, s);
  std::map<int, int> embed;
  for (B st : p1_states) {
    const auto [mJ, mI] = p1_quantum_numbers(st);
    embed[static_cast<int>(idx(st))] = s.index(mJ, mI);
  }
  for (int r = 0; r < model_dim; ++r)
    for (int c = 0; c < model_dim; ++c) {
      double want = 0.0;
      if (embed.count(r) && embed.count(c)) {
        const bool pair = (r == c) || (std::min(r, c) == idx(B::p1_0_down) && std::max(r, c) == idx(B::p1_m1_up));
        if (pair) want = kTwoPi * h(embed[r], embed[c]);
      }
      EXPECT_NEAR(H(r, c).real(), want, 1e-12) << r << "," << c;
    }
}

TEST(HamiltonianTest, RejectsNonFiniteOrNegativeRates) {
  ModelParams p;
  p.gamma_d = -1.0;
  EXPECT_THROW(hamiltonian(p), std::domain_error);
  p = ModelParams{};
  p.delta = std::nan("");
  EXPECT_THROW(hamiltonian(p), std::domain_error);
}

TEST(CollapseTest, NineChannels) {
  const ModelParams p;
  const auto cs = collapse_ops(p);
  ASSERT_EQ(cs.size(), 9u);
  EXPECT_LT(cs[1].terms.at(0).amplitude.real(), 0.0);
  ASSERT_EQ(cs[0].terms.size(), 2u);
  Eigen::JacobiSVD<ComplexMatrix> svd(cs[0].dense(model_dim));
  int rank = 0;
  for (Index k = 0; k < svd.singularValues().size(); ++k) rank += svd.singularValues()(k) > 1e-12;
  EXPECT_EQ(rank, 2);
}

TEST(CollapseTest, DrainRatesPerSource) {
  const ModelParams p;
  const auto cs = collapse_ops(p);
  std::map<Index, double> drain;
  for (const auto& c : cs) {
    const ComplexMatrix d = c.dense(model_dim);
    const ComplexMatrix cdc = d.adjoint() * d;
    for (Index k = 0; k < model_dim; ++k) drain[k] += cdc(k, k).real();
  }
  for (B s : d2_states) EXPECT_NEAR(drain[idx(s)], kTwoPi * p.gamma_d, 1e-12);
  EXPECT_NEAR(drain[idx(B::s6_down)], 3.0 * kTwoPi * p.gamma_s, 1e-12);
  for (B s : p1_states) EXPECT_NEAR(drain[idx(s)], kTwoPi * p.gamma_p / 3.0, 1e-12);
}

TEST(CollapseTest, ZeroRatesGiveZeroAmplitudes) {
  ModelParams p;
  p.gamma_p = p.gamma_s = p.gamma_d = 0.0;
  for (const auto& c : collapse_ops(p))
    for (const auto& t : c.terms) EXPECT_EQ(std::abs(t.amplitude), 0.0);
}

TEST(ImpurityTest, DressingScalesEveryDressingCoupling) {
  const ModelParams p;
  const ModelParams q = with_polarization_impurity(p, 0.01, ImpurityChannel::dressing);
  EXPECT_NEAR(q.omega_pd / p.omega_pd, 0.9, 1e-15);
  const ModelParams r = with_polarization_impurity(p, 0.1, ImpurityChannel::dressing);
  EXPECT_NEAR(1.0 - r.omega_pd / p.omega_pd, 0.32, 0.005);
  EXPECT_EQ(q.omega_eff, p.omega_eff);
}

TEST(ImpurityTest, RamanScalesEffectiveRabi) {
  const ModelParams q = with_polarization_impurity(ModelParams{}, 0.05, ImpurityChannel::raman);
  EXPECT_NEAR(q.omega_eff, 0.95, 1e-15);
  EXPECT_EQ(q.omega_pd, ModelParams{}.omega_pd);
}

TEST(ImpurityTest, ZeroIsIdentityAndRangeIsChecked) {
  const ModelParams p;
  const ModelParams q = with_polarization_impurity(p, 0.0, ImpurityChannel::dressing);
  EXPECT_EQ(hamiltonian(q), hamiltonian(p));
  EXPECT_THROW(with_polarization_impurity(p, -0.1, ImpurityChannel::dressing), std::domain_error);
  EXPECT_THROW(with_polarization_impurity(p, 1.0, ImpurityChannel::raman), std::domain_error);
}

TEST(ImpurityTest, LossEstimate) {
  EXPECT_NEAR(impurity_loss_estimate(0.01), 0.0057, 1e-4);
  EXPECT_EQ(impurity_loss_estimate(0.0), 0.0);
  const double s = std::sin(0.12 * std::numbers::pi);
  EXPECT_NEAR(impurity_loss_estimate(0.05), s * s, 1e-15);
}

TEST(QubitTest, Vectors) {
  const auto q = qubit_vectors(Complex(1.0, 0.0), Complex(1.0, 0.0));
  EXPECT_NEAR(std::abs(q.psi0(idx(B::clock_up)) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(q.psi_f(idx(B::ground_down)) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(q.psi_perp(idx(B::ground_down)) + 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(q.psi_f.dot(q.psi_perp)), 0.0, 1e-15);
  const auto r = qubit_vectors(Complex(0.3, 0.7), Complex(-1.1, 0.2));
  EXPECT_NEAR(std::abs(r.psi_f.dot(r.psi_perp)), 0.0, 1e-15);
  EXPECT_NEAR(r.psi0.norm(), 1.0, 1e-15);
  const auto u = qubit_vectors(Complex(1.0, 0.0), Complex(0.0, 0.0));
  for (Index k = 0; k < model_dim; ++k)
    if (k != idx(B::ground_down)) EXPECT_EQ(u.psi_perp(k), 0.0);
  EXPECT_THROW(qubit_vectors(Complex(0.0, 0.0), Complex(0.0, 0.0)), std::domain_error);
}
