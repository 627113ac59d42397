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

#ifndef SRCOOL_ANALYSIS_HPP
#define SRCOOL_ANALYSIS_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "srcool/hyperfine.hpp"
#include "srcool/lindblad.hpp"
#include "srcool/model.hpp"

namespace srcool {

class AmbiguityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnbalancedError : public std::runtime_error {
 public:
  UnbalancedError(const std::string& what, double imbalance) : std::runtime_error(what), imbalance_(imbalance) {}
  double imbalance() const noexcept { return imbalance_; }

 private:
  double imbalance_;
};

class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs fn over inputs on up to `jobs` threads; results keep input order.
template <class In, class Fn>
auto parallel_map(const std::vector<In>& inputs, Fn fn, unsigned jobs) {
  using Out = std::invoke_result_t<Fn&, const In&>;
  const std::size_t n = inputs.size();
  std::vector<std::optional<Out>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        slots[k].emplace(fn(inputs[k]));
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, jobs), std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Out> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// ---------------------------------------------------------------------------
// Dressed states

struct DressedPair {
  StateVector e_up;
  StateVector e_down;
  double energy_up = 0.0;  // MHz
  double energy_down = 0.0;
  double overlap_up = 0.0;
  double overlap_down = 0.0;
  Eigen::VectorXd energies;  // full spectrum, MHz
  ComplexMatrix vectors;     // columns match energies
};

namespace detail {

// Connected components of the coupling graph of H.
inline std::vector<std::vector<Index>> coupled_blocks(const ComplexMatrix& H) {
  const Index n = H.rows();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<Index>> blocks;
  for (Index s = 0; s < n; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    const int id = static_cast<int>(blocks.size());
    blocks.emplace_back();
    std::vector<Index> stack{s};
    comp[static_cast<std::size_t>(s)] = id;
    while (!stack.empty()) {
      const Index u = stack.back();
      stack.pop_back();
      blocks.back().push_back(u);
      for (Index v = 0; v < n; ++v)
        if (comp[static_cast<std::size_t>(v)] < 0 && (H(u, v) != 0.0 || H(v, u) != 0.0)) {
          comp[static_cast<std::size_t>(v)] = id;
          stack.push_back(v);
        }
    }
    std::sort(blocks.back().begin(), blocks.back().end());
  }
  return blocks;
}

// Eigendecomposition assembled block by block, so that degeneracies between
// uncoupled blocks never mix their eigenvectors.
inline std::pair<Eigen::VectorXd, ComplexMatrix> block_eigen(const ComplexMatrix& H) {
  const Index n = H.rows();
  Eigen::VectorXd w(n);
  ComplexMatrix v = ComplexMatrix::Zero(n, n);
  Index col = 0;
  for (const auto& b : coupled_blocks(H)) {
    const Index m = static_cast<Index>(b.size());
    ComplexMatrix sub(m, m);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j) sub(i, j) = H(b[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sub);
    for (Index k = 0; k < m; ++k, ++col) {
      w(col) = es.eigenvalues()(k);
      for (Index i = 0; i < m; ++i) v(b[static_cast<std::size_t>(i)], col) = es.eigenvectors()(i, k);
    }
  }
  return {w, v};
}

inline Index select_by_overlap(const ComplexMatrix& vectors, Index target, const char* name) {
  Index best = 0;
  double top = -1.0, second = -1.0;
  for (Index k = 0; k < vectors.cols(); ++k) {
    const double o = std::abs(vectors(target, k));
    if (o > top) {
      second = top;
      top = o;
      best = k;
    } else if (o > second) {
      second = o;
    }
  }
  if (top - second < 1e-9)
    throw AmbiguityError(std::string("two eigenstates overlap equally with ") + name);
  return best;
}

}  // namespace detail

/// Eigenstates of H with the clock coupling removed that best overlap
/// |1P1 -1, up> and |1P1 -1, down>.
inline DressedPair dressed_pair(ModelParams p) {
  p.omega_eff = 0.0;
  const ComplexMatrix H = hamiltonian(p);
  auto [w, v] = detail::block_eigen(H);
  const Index up = detail::select_by_overlap(v, idx(BasisState::p1_m1_up), "|1P1 -1,up>");
  const Index dn = detail::select_by_overlap(v, idx(BasisState::p1_m1_down), "|1P1 -1,down>");
  if (up == dn) throw AmbiguityError("one eigenstate dominates both spin targets");
  DressedPair d;
  d.energies = w / constants::two_pi;
  d.vectors = v;
  d.e_up = v.col(up);
  d.e_down = v.col(dn);
  d.energy_up = d.energies(up);
  d.energy_down = d.energies(dn);
  d.overlap_up = std::min(1.0, std::abs(v(idx(BasisState::p1_m1_up), up)));
  d.overlap_down = std::min(1.0, std::abs(v(idx(BasisState::p1_m1_down), dn)));
  return d;
}

/// energy_up - energy_down (MHz) at zero Raman detuning.
inline double dressed_imbalance(ModelParams p) {
  p.delta = 0.0;
  const DressedPair d = dressed_pair(p);
  return d.energy_up - d.energy_down;
}

/// Common dressed energy nu (MHz) at zero Raman detuning; resonance needs delta = -nu.
inline double compute_nu(ModelParams p, double tolerance = 1e-4) {
  p.delta = 0.0;
  const DressedPair d = dressed_pair(p);
  const double imbalance = d.energy_up - d.energy_down;
  if (std::abs(imbalance) > tolerance) {
    std::ostringstream os;
    os << "dressed energies differ by " << imbalance << " MHz";
    throw UnbalancedError(os.str(), imbalance);
  }
  return 0.5 * (d.energy_up + d.energy_down);
}

struct Bracket {
  double lo = 50.0;
  double hi = 300.0;
};

/// omega_pd (MHz) at which the two dressed energies coincide.
inline double balance_omega_pd(const ModelParams& p, Bracket bracket = {}) {
  if (!(bracket.lo < bracket.hi) || !std::isfinite(bracket.lo) || !std::isfinite(bracket.hi))
    throw BracketError("bracket must satisfy lo < hi");
  auto f = [&p](double omega) {
    ModelParams q = p;
    q.omega_pd = omega;
    return dressed_imbalance(q);
  };
  const double flo = f(bracket.lo), fhi = f(bracket.hi);
  if (flo == 0.0) return bracket.lo;
  if (fhi == 0.0) return bracket.hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    std::ostringstream os;
    os << "no sign change of the dressed-energy difference on [" << bracket.lo << ", " << bracket.hi << "] ("
       << flo << ", " << fhi << " MHz)";
    throw BracketError(os.str());
  }
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(
      f, bracket.lo, bracket.hi, flo, fhi, [](double a, double b) { return std::abs(b - a) < 1e-9; }, iters);
  return 0.5 * (r.first + r.second);
}

// ---------------------------------------------------------------------------
// Cooling runs

inline const char* const kObsPsi0 = "pop_psi0";
inline const char* const kObsPsiF = "pop_psif";
inline const char* const kObsPerp = "pop_perp";
inline const char* const kObsReservoir = "pop_reservoir";
inline const char* const kObsP1 = "pop_1P1_total";
inline const char* const kObsD2 = "pop_1D2_total";
inline const char* const kObs6s = "pop_6s";
inline const char* const kObsClock = "pop_clock_total";

struct CoolingResult {
  double fidelity = 0.0;
  double pop_perp = 0.0;
  double pop_reservoir = 0.0;
  double pop_residual_clock = 0.0;  // <psi0|rho|psi0>
  double pop_clock_total = 0.0;
  double pop_1p1 = 0.0;
  double pop_1d2 = 0.0;
  double pop_6s = 0.0;
  Trajectory trajectory;

  /// |1 - sum of populations of a complete partition| at the final time.
  double budget_error() const {
    return std::abs(1.0 - (fidelity + pop_perp + pop_reservoir + pop_clock_total + pop_1p1 + pop_1d2 + pop_6s));
  }
};

inline std::vector<Observable> cooling_observables(const QubitVectors& q) {
  using B = BasisState;
  return {
      projector_observable(kObsPsi0, q.psi0),
      projector_observable(kObsPsiF, q.psi_f),
      projector_observable(kObsPerp, q.psi_perp),
      subspace_observable(kObsReservoir, {idx(B::reservoir)}),
      subspace_observable(kObsP1, {idx(B::p1_0_down), idx(B::p1_m1_up), idx(B::p1_m1_down), idx(B::p1_p1_down)}),
      subspace_observable(kObsD2, {idx(B::d2_f13_m13), idx(B::d2_f13_m11), idx(B::d2_f11_m11)}),
      subspace_observable(kObs6s, {idx(B::s6_down)}),
      subspace_observable(kObsClock, {idx(B::clock_up), idx(B::clock_down)}),
  };
}

/// Index of the grid time equal to t (within 1e-9 us).
inline std::size_t sample_index(const Trajectory& traj, double t) {
  for (std::size_t k = 0; k < traj.times.size(); ++k)
    if (std::abs(traj.times[k] - t) < 1e-9) return k;
  throw std::out_of_range("time " + std::to_string(t) + " us is not on the sample grid");
}

/// Evolves |psi0><psi0| from the clock manifold for t_final us, sampling
/// `samples` evenly spaced times including both ends.
inline CoolingResult cool(Complex alpha, Complex beta, const ModelParams& p, double t_final = 20.0, int samples = 201,
                          const IntegratorConfig& cfg = {}) {
  if (!(t_final > 0.0)) throw std::invalid_argument("t_final must be positive");
  const QubitVectors q = qubit_vectors(alpha, beta);
  const ComplexMatrix H = hamiltonian(p);
  const auto cs = collapse_ops(p);
  const auto obs = cooling_observables(q);
  const auto grid = linspace(0.0, t_final, samples);
  CoolingResult r;
  r.trajectory = evolve(DensityMatrix::pure(q.psi0), H, cs, grid, cfg, obs);
  const auto& tr = r.trajectory;
  r.fidelity = tr.series(kObsPsiF).back();
  r.pop_perp = tr.series(kObsPerp).back();
  r.pop_reservoir = tr.series(kObsReservoir).back();
  r.pop_residual_clock = tr.series(kObsPsi0).back();
  r.pop_clock_total = tr.series(kObsClock).back();
  r.pop_1p1 = tr.series(kObsP1).back();
  r.pop_1d2 = tr.series(kObsD2).back();
  r.pop_6s = tr.series(kObs6s).back();
  return r;
}

/// Population-partition residual at sample k.
inline double budget_error_at(const Trajectory& tr, std::size_t k) {
  double s = 0.0;
  for (const char* n : {kObsPsiF, kObsPerp, kObsReservoir, kObsClock, kObsP1, kObsD2, kObs6s}) s += tr.series(n)[k];
  return std::abs(1.0 - s);
}

// ---------------------------------------------------------------------------
// Sweeps

struct RatioRow {
  double ratio = 0.0;  // alpha / beta
  double fidelity = 0.0;
  double pop_perp = 0.0;
  double pop_reservoir = 0.0;
};

/// Fidelity at t_final for psi0 with alpha/beta = ratio, beta = 1.
inline std::vector<RatioRow> ratio_sweep(const ModelParams& p, const std::vector<double>& ratios, double t_final = 20.0,
                                         const IntegratorConfig& cfg = {}, unsigned jobs = 1) {
  return parallel_map(
      ratios,
      [&](double r) {
        const CoolingResult c = cool(Complex(r, 0.0), Complex(1.0, 0.0), p, t_final, 2, cfg);
        return RatioRow{r, c.fidelity, c.pop_perp, c.pop_reservoir};
      },
      jobs);
}

struct SensitivityRow {
  std::string label;
  std::string perturbation;
  double t_us = 0.0;
  double fidelity = 0.0;
  double pop_perp = 0.0;
  double pop_reservoir = 0.0;
  double budget_error = 0.0;
  std::optional<double> splitting_mhz;  // |energy_up - energy_down| at zero Raman detuning
};

struct SensitivityScenario {
  std::string label;
  std::string perturbation;
  std::function<void(ModelParams&)> apply;
  std::vector<double> report_times;
  bool report_splitting = false;
};

inline std::vector<SensitivityScenario> default_sensitivity_scenarios() {
  return {
      {"reference", "none", [](ModelParams&) {}, {20.0}},
      {"omega_eff_2", "omega_eff=2", [](ModelParams& p) { p.omega_eff = 2.0; }, {5.0}},
      {"delta_0", "delta=0", [](ModelParams& p) { p.delta = 0.0; }, {20.0, 26.0}},
      {"omega_ps_250", "omega_ps=250", [](ModelParams& p) { p.omega_ps = 250.0; }, {20.0}},
      {"ps_detuned_10", "delta_ps_extra=10", [](ModelParams& p) { p.delta_ps_extra = 10.0; }, {20.0}},
      {"omega_pd_140", "omega_pd=140", [](ModelParams& p) { p.omega_pd = 140.0; }, {20.0, 30.0}},
      {"delta_pd_1750", "delta_pd=-1750", [](ModelParams& p) { p.delta_pd = -1750.0; }, {20.0}, true},
  };
}

/// Runs each scenario once up to its last report time with a 0.1 us grid.
inline std::vector<SensitivityRow> sensitivity_suite(const ModelParams& p,
                                                     const std::vector<SensitivityScenario>& scenarios,
                                                     const IntegratorConfig& cfg = {}, unsigned jobs = 1) {
  auto per_scenario = parallel_map(
      scenarios,
      [&](const SensitivityScenario& s) {
        ModelParams q = p;
        s.apply(q);
        const double t_final = *std::max_element(s.report_times.begin(), s.report_times.end());
        const int samples = static_cast<int>(std::lround(t_final * 10.0)) + 1;
        const CoolingResult c = cool(Complex(1.0, 0.0), Complex(1.0, 0.0), q, t_final, samples, cfg);
        std::optional<double> split;
        if (s.report_splitting) split = std::abs(dressed_imbalance(q));
        std::vector<SensitivityRow> rows;
        for (double t : s.report_times) {
          const std::size_t k = sample_index(c.trajectory, t);
          const auto& tr = c.trajectory;
          rows.push_back({s.label, s.perturbation, t, tr.series(kObsPsiF)[k], tr.series(kObsPerp)[k],
                          tr.series(kObsReservoir)[k], budget_error_at(tr, k), split});
        }
        return rows;
      },
      jobs);
  std::vector<SensitivityRow> out;
  for (auto& rows : per_scenario)
    for (auto& r : rows) out.push_back(std::move(r));
  return out;
}

inline std::vector<SensitivityRow> sensitivity_suite(const ModelParams& p, const IntegratorConfig& cfg = {},
                                                     unsigned jobs = 1) {
  return sensitivity_suite(p, default_sensitivity_scenarios(), cfg, jobs);
}

struct ImpurityRow {
  double chi = 0.0;
  double fidelity = 0.0;
  double pop_perp = 0.0;
  double pop_reservoir = 0.0;
  double rabi_factor = 1.0;  // 1 - sqrt(chi)
};

inline std::vector<ImpurityRow> impurity_sweep(const ModelParams& p, const std::vector<double>& chis,
                                               double t_final = 20.0, const IntegratorConfig& cfg = {},
                                               unsigned jobs = 1) {
  return parallel_map(
      chis,
      [&](double chi) {
        const ModelParams q = with_polarization_impurity(p, chi, ImpurityChannel::dressing);
        const CoolingResult c = cool(Complex(1.0, 0.0), Complex(1.0, 0.0), q, t_final, 2, cfg);
        return ImpurityRow{chi, c.fidelity, c.pop_perp, c.pop_reservoir, 1.0 - std::sqrt(chi)};
      },
      jobs);
}

/// Dressed overlaps with the 1P1 hyperfine constants multiplied by scale.
inline std::pair<double, double> scaled_constants_overlaps(double scale, ModelParams p = {}) {
  p.p1_hf.A *= scale;
  p.p1_hf.Q *= scale;
  const DressedPair d = dressed_pair(p);
  return {d.overlap_up, d.overlap_down};
}

// ---------------------------------------------------------------------------
// Other species

struct MinOmegaResult {
  double omega_ps = 0.0;  // MHz
  double overlap = 0.0;
  bool saturated = false;
};

/// Overlap of the |mJ=-1, mI=1-I>-dominated eigenstate of the reduced model
/// {|-1, 1-I>, |0, -I>, 6s}: hyperfine mixing within J=1 at zero field, and
/// |0, -I> driven resonantly to 6s at Rabi frequency omega (MHz).
inline double reduced_dressed_overlap(Spin I, const HyperfineConstants& c, double omega) {
  const Spin J(HalfInt(1));
  const SpinSpace space{I, J};
  const HalfInt mI_low = -I.value();
  const HalfInt mI_up = mI_low + HalfInt(1);
  const double h11 = hf_element(c, space, HalfInt(-1), mI_up, HalfInt(-1), mI_up);
  const double h22 = hf_element(c, space, HalfInt(0), mI_low, HalfInt(0), mI_low);
  const double h12 = hf_element(c, space, HalfInt(0), mI_low, HalfInt(-1), mI_up);
  Eigen::Matrix3d h;
  h << h11, h12, 0.0, h12, h22, 0.5 * omega, 0.0, 0.5 * omega, h22;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(h);
  return es.eigenvectors().row(0).cwiseAbs().maxCoeff();
}

/// Smallest omega_ps (MHz) at which the reduced-model overlap reaches the
/// threshold; saturated when it does not below the cap.
inline MinOmegaResult min_omega_ps(Spin I, const HyperfineConstants& c, double threshold = 0.99,
                                   double cap = 20000.0) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw std::domain_error("threshold must lie in (0, 1)");
  if (I.twice() < 1) throw std::domain_error("nuclear spin must be nonzero");
  auto f = [&](double omega) { return reduced_dressed_overlap(I, c, omega); };
  if (f(0.0) >= threshold) return {0.0, f(0.0), false};
  const double step = 1.0;
  double lo = 0.0;
  for (double hi = step; hi <= cap; hi += step) {
    if (f(hi) >= threshold) {
      double a = lo, b = hi;
      while (b - a > 1e-7) {
        const double m = 0.5 * (a + b);
        (f(m) >= threshold ? b : a) = m;
      }
      return {b, f(b), false};
    }
    lo = hi;
  }
  return {cap, f(cap), true};
}

}  // namespace srcool

#endif  // SRCOOL_ANALYSIS_HPP
