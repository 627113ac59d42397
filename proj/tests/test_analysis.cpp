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
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "srcool/analysis.hpp"

using namespace srcool;

TEST(DressedTest, DefaultParameters) {
  const DressedPair d = dressed_pair(ModelParams{});
  EXPECT_NEAR(d.overlap_up, 0.99409, 5e-5);
  EXPECT_NEAR(d.overlap_down, 0.99910, 5e-5);
  EXPECT_NEAR(d.e_up.norm(), 1.0, 1e-12);
  EXPECT_NEAR(d.e_down.norm(), 1.0, 1e-12);
}

TEST(DressedTest, CommonEnergyAtZeroDetuning) {
  ModelParams p;
  p.delta = 0.0;
  const DressedPair d = dressed_pair(p);
  EXPECT_NEAR(d.energy_up, -3.8826, 1e-3);
  EXPECT_NEAR(d.energy_down, -3.8826, 1e-3);
}

TEST(DressedTest, NoSpinMixingWithoutHyperfineOrDressing) {
  ModelParams p;
  p.p1_hf = {0.0, 0.0};
  p.omega_pd = p.omega_ps = 0.0;
  const DressedPair d = dressed_pair(p);
  EXPECT_NEAR(d.overlap_up, 1.0, 1e-15);
  EXPECT_NEAR(d.overlap_down, 1.0, 1e-15);
}

TEST(DressedTest, BlocksStayApart) {
  // The stretched pair {F=13/2 mF=-13/2, |-1,down>} mixes with nothing else,
  // so e_down lives there and e_up has no weight on it.
  const DressedPair d = dressed_pair(ModelParams{});
  const int stretched[] = {idx(BasisState::d2_f13_m13), idx(BasisState::p1_m1_down)};
  double down_in = 0.0;
  for (int k : stretched) {
    down_in += std::norm(d.e_down(k));
    EXPECT_EQ(std::abs(d.e_up(k)), 0.0);
  }
  EXPECT_NEAR(down_in, 1.0, 1e-12);
  for (BasisState s : {BasisState::clock_up, BasisState::clock_down, BasisState::ground_up,
                       BasisState::ground_down, BasisState::reservoir, BasisState::p1_p1_down})
    EXPECT_EQ(std::abs(d.e_up(idx(s))), 0.0);
}

TEST(DressedTest, EigenpairsReconstructHamiltonian) {
  ModelParams p;
  p.omega_eff = 0.0;
  const ComplexMatrix H = hamiltonian(p);
  const DressedPair d = dressed_pair(p);
  const ComplexMatrix rebuilt =
      d.vectors * (constants::two_pi * d.energies).cast<Complex>().asDiagonal() * d.vectors.adjoint();
  EXPECT_LT((rebuilt - H).norm() / H.norm(), 1e-9);
}

TEST(NuTest, DefaultParameters) { EXPECT_NEAR(compute_nu(ModelParams{}), -3.8826, 1e-3); }

TEST(NuTest, TrivialModel) {
  ModelParams p;
  p.omega_pd = p.omega_ps = 0.0;
  p.p1_hf = {0.0, 0.0};
  p.B = 0.0;
  EXPECT_NEAR(compute_nu(p), 0.0, 1e-12);
}

TEST(NuTest, UnbalancedReportsImbalance) {
  ModelParams p;
  p.delta_pd = -1750.0;
  try {
    compute_nu(p);
    FAIL() << "expected UnbalancedError";
  } catch (const UnbalancedError& e) {
    EXPECT_NEAR(std::abs(e.imbalance()), 0.42, 0.02);
  }
}

TEST(BalanceTest, DefaultDetuning) {
  const ModelParams p;
  const double omega = balance_omega_pd(p, {50.0, 300.0});
  EXPECT_NEAR(omega, 144.27, 0.05);
  ModelParams q = p;
  q.omega_pd = omega;
  EXPECT_LT(std::abs(dressed_imbalance(q)), 1e-4);
}

TEST(BalanceTest, BracketInvariance) {
  const ModelParams p;
  EXPECT_NEAR(balance_omega_pd(p, {50.0, 300.0}), balance_omega_pd(p, {120.0, 170.0}), 1e-4);
}

TEST(BalanceTest, OtherDetuningIsSelfConsistent) {
  ModelParams p;
  p.delta_pd = -1500.0;
  const double omega = balance_omega_pd(p, {50.0, 300.0});
  ModelParams lo = p, hi = p;
  lo.omega_pd = omega - 1.0;
  hi.omega_pd = omega + 1.0;
  EXPECT_LT(dressed_imbalance(lo) * dressed_imbalance(hi), 0.0);
  ModelParams q = p;
  q.omega_pd = omega;
  q.delta = -compute_nu(q);
  const DressedPair d = dressed_pair(q);
  EXPECT_NEAR(d.energy_up, d.energy_down, 1e-4);
  EXPECT_NEAR(d.energy_up, 0.0, 1e-4);
}

TEST(BalanceTest, BracketErrors) {
  const ModelParams p;
  EXPECT_THROW(balance_omega_pd(p, {200.0, 300.0}), BracketError);
  EXPECT_THROW(balance_omega_pd(p, {300.0, 50.0}), BracketError);
}

TEST(CoolTest, GlobalPhaseInvariance) {
  const ModelParams p;
  const Complex phase = std::polar(1.0, 0.7);
  const CoolingResult a = cool(Complex(1.0, 0.0), Complex(2.0, 0.0), p, 2.0, 3);
  const CoolingResult b = cool(phase * 1.0, phase * 2.0, p, 2.0, 3);
  EXPECT_NEAR(a.fidelity, b.fidelity, 1e-12);
  EXPECT_NEAR(a.pop_perp, b.pop_perp, 1e-12);
}

TEST(CoolTest, ReferenceRunIsMonotoneLateAndBalanced) {
  const CoolingResult r = cool(Complex(1.0, 0.0), Complex(1.0, 0.0), ModelParams{}, 20.0, 201);
  const auto& tr = r.trajectory;
  const auto& f = tr.series(kObsPsiF);
  for (std::size_t k = 1; k < tr.times.size(); ++k)
    if (tr.times[k - 1] >= 10.0) EXPECT_GE(f[k], f[k - 1]) << "t=" << tr.times[k];
  for (std::size_t k = 0; k < tr.times.size(); ++k) EXPECT_LT(budget_error_at(tr, k), 1e-6);
  EXPECT_LT(r.budget_error(), 1e-6);
  EXPECT_NEAR(r.fidelity, 0.9996, 3e-4);
}

TEST(CoolTest, RejectsBadArguments) {
  EXPECT_THROW(cool(Complex(0.0, 0.0), Complex(0.0, 0.0), ModelParams{}, 1.0, 2), std::domain_error);
  EXPECT_THROW(cool(Complex(1.0, 0.0), Complex(0.0, 0.0), ModelParams{}, 0.0, 2), std::invalid_argument);
}

TEST(ScaledConstantsTest, Values) {
  const auto one = scaled_constants_overlaps(1.0);
  EXPECT_NEAR(one.first, 0.99409, 5e-5);
  EXPECT_NEAR(one.second, 0.99910, 5e-5);
  const auto four = scaled_constants_overlaps(4.0);
  EXPECT_NEAR(four.first, 0.984, 0.002);
  EXPECT_NEAR(four.second, 0.999, 0.002);
  // With the lasers still on, removing the hyperfine constants leaves only
  // laser-induced admixtures, which are smaller than the scaled ones.
  const auto zero = scaled_constants_overlaps(0.0);
  EXPECT_GT(zero.first, four.first);
  EXPECT_LE(zero.first, 1.0);
  ModelParams dark;
  dark.omega_pd = dark.omega_ps = 0.0;
  const auto zero_dark = scaled_constants_overlaps(0.0, dark);
  EXPECT_NEAR(zero_dark.first, 1.0, 1e-15);
  EXPECT_NEAR(zero_dark.second, 1.0, 1e-15);
}

TEST(MinOmegaTest, Species) {
  struct Case {
    HalfInt I;
    HyperfineConstants c;
    double want;
  };
  const Case cases[] = {{half(1), {-213.0, 0.0}, 2150.0},
                        {half(5), {60.0, 600.0}, 5400.0},
                        {half(7), {-15.46, -9.7}, 490.0},
                        {half(7), {-18.84, -9.2}, 580.0},
                        {half(5), {17.7, 20.0}, 535.0}};
  for (const auto& c : cases) {
    const MinOmegaResult r = min_omega_ps(Spin(c.I), c.c);
    EXPECT_FALSE(r.saturated);
    EXPECT_NEAR(r.omega_ps / c.want, 1.0, 0.15) << c.I.str();
    EXPECT_GE(r.overlap, 0.99);
    EXPECT_LT(reduced_dressed_overlap(Spin(c.I), c.c, r.omega_ps - 1e-3), 0.99);
  }
}

TEST(MinOmegaTest, SaturationAndArguments) {
  const MinOmegaResult r = min_omega_ps(Spin(half(5)), {60.0, 600.0}, 0.99, 1000.0);
  EXPECT_TRUE(r.saturated);
  EXPECT_LT(r.overlap, 0.99);
  EXPECT_THROW(min_omega_ps(Spin(half(5)), {60.0, 600.0}, 1.0), std::domain_error);
  EXPECT_THROW(min_omega_ps(Spin(HalfInt(0)), {60.0, 600.0}), std::domain_error);
}

TEST(ParallelMapTest, OrderAndErrors) {
  const std::vector<int> in = {5, 1, 4, 2, 3};
  const auto out = parallel_map(in, [](int x) { return x * x; }, 4);
  EXPECT_EQ(out, (std::vector<int>{25, 1, 16, 4, 9}));
  EXPECT_THROW(parallel_map(
                   in,
                   [](int x) {
                     if (x == 4) throw std::runtime_error("boom");
                     return x;
                   },
                   3),
               std::runtime_error);
  EXPECT_TRUE(parallel_map(std::vector<int>{}, [](int x) { return x; }, 2).empty());
}
