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

// Dense Lindblad master equation
//
//   d rho/dt = i (rho H - H rho) + sum_k [2 c_k rho c_k^+ - c_k^+ c_k rho - rho c_k^+ c_k] / 2
//
// integrated with an adaptive Dormand-Prince 5(4) pair and its continuous
// extension, or propagated exactly through the exponential of the
// superoperator. Time in microseconds, H in rad/us.

#ifndef SRCOOL_LINDBLAD_HPP
#define SRCOOL_LINDBLAD_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <unsupported/Eigen/MatrixFunctions>

namespace srcool {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// One |to><from| term of a jump operator.
struct JumpTerm {
  Complex amplitude;
  Index to = 0;
  Index from = 0;
};

/// c = sum_terms amplitude |to><from|, amplitude in sqrt(rad/us).
struct CollapseOp {
  std::string label;
  std::vector<JumpTerm> terms;

  ComplexMatrix dense(Index dim) const {
    ComplexMatrix c = ComplexMatrix::Zero(dim, dim);
    for (const auto& t : terms) c(t.to, t.from) += t.amplitude;
    return c;
  }
};

/// Thresholds on a physical density matrix.
struct InvariantTolerances {
  double hermiticity = 1e-10;  // max |rho - rho^+| entry
  double trace = 1e-9;         // |tr rho - 1|
  double positivity = 1e-8;    // -min eigenvalue
};

class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double hermiticity_error(const ComplexMatrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

inline double trace_error(const ComplexMatrix& m) { return std::abs(m.trace() - Complex(1.0, 0.0)); }

inline double min_eigenvalue(const ComplexMatrix& m) {
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m, const InvariantTolerances& tol = {}) : rho_(std::move(m)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() == 0) throw std::invalid_argument("density matrix must be square");
    const double herm = srcool::hermiticity_error(rho_);
    const double tr = srcool::trace_error(rho_);
    const double mineig = srcool::min_eigenvalue(rho_);
    if (herm > tol.hermiticity || tr > tol.trace || mineig < -tol.positivity) {
      std::ostringstream os;
      os << "not a density matrix: hermiticity " << herm << ", trace error " << tr << ", min eigenvalue " << mineig;
      throw std::invalid_argument(os.str());
    }
  }

  static DensityMatrix pure(const StateVector& psi) {
    const double n = psi.norm();
    if (n == 0.0) throw std::invalid_argument("zero state vector");
    const StateVector u = psi / n;
    return DensityMatrix(u * u.adjoint());
  }

  static DensityMatrix maximally_mixed(Index dim) {
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
  }

  const ComplexMatrix& matrix() const noexcept { return rho_; }
  Index dim() const noexcept { return rho_.rows(); }

 private:
  ComplexMatrix rho_;
};

/// <psi|rho|psi> for normalized psi, clipped to [0, 1].
inline double population(const ComplexMatrix& rho, const StateVector& psi) {
  const double p = (psi.adjoint() * rho * psi)(0, 0).real();
  return std::clamp(p, 0.0, 1.0);
}

inline double population(const DensityMatrix& rho, const StateVector& psi) { return population(rho.matrix(), psi); }

/// Right-hand side of the master equation for an arbitrary (not necessarily
/// Hermitian) matrix argument.
inline ComplexMatrix liouvillian_apply(const ComplexMatrix& H, std::span<const CollapseOp> cs, const ComplexMatrix& rho) {
  if (H.rows() != H.cols() || rho.rows() != rho.cols() || H.rows() != rho.rows())
    throw std::domain_error("liouvillian_apply: dimension mismatch");
  const Complex i(0.0, 1.0);
  const Index dim = H.rows();
  ComplexMatrix out = i * (rho * H - H * rho);
  for (const auto& c : cs) {
    for (const auto& t : c.terms)
      if (t.to >= dim || t.from >= dim || t.to < 0 || t.from < 0)
        throw std::domain_error("liouvillian_apply: collapse operator outside the state space");
    const ComplexMatrix cd = c.dense(dim);
    const ComplexMatrix cdc = cd.adjoint() * cd;
    out += cd * rho * cd.adjoint() - 0.5 * (cdc * rho + rho * cdc);
  }
  return out;
}

/// Superoperator acting on the row-major vectorization of rho.
inline ComplexMatrix liouvillian_superoperator(const ComplexMatrix& H, std::span<const CollapseOp> cs) {
  const Index dim = H.rows();
  const Index n = dim * dim;
  ComplexMatrix L(n, n);
  ComplexMatrix basis = ComplexMatrix::Zero(dim, dim);
  for (Index col = 0; col < n; ++col) {
    basis(col / dim, col % dim) = 1.0;
    const ComplexMatrix image = liouvillian_apply(H, cs, basis);
    basis(col / dim, col % dim) = 0.0;
    for (Index r = 0; r < n; ++r) L(r, col) = image(r / dim, r % dim);
  }
  return L;
}

/// Generator specialised for Hermitian arguments: with K = H - (i/2) sum c^+c
/// stored sparse,
/// d rho/dt = -i (K rho - (K rho)^+) + sum c rho c^+.
class Liouvillian {
 public:
  Liouvillian(const ComplexMatrix& H, std::span<const CollapseOp> cs) : dim_(H.rows()) {
    if (H.rows() != H.cols()) throw std::domain_error("Liouvillian: Hamiltonian must be square");
    ComplexMatrix decay = ComplexMatrix::Zero(dim_, dim_);
    for (const auto& c : cs) {
      for (const auto& t : c.terms)
        if (t.to >= dim_ || t.from >= dim_ || t.to < 0 || t.from < 0)
          throw std::domain_error("Liouvillian: collapse operator outside the state space");
      const ComplexMatrix cd = c.dense(dim_);
      decay += cd.adjoint() * cd;
      jumps_.push_back(c.terms);
    }
    k_ = (H - Complex(0.0, 0.5) * decay).sparseView();
    work_.resize(dim_, dim_);
  }

  Index dim() const noexcept { return dim_; }

  void apply(const ComplexMatrix& rho, ComplexMatrix& out) {
    work_.noalias() = k_ * rho;
    out = Complex(0.0, -1.0) * (work_ - work_.adjoint());
    for (const auto& terms : jumps_)
      for (const auto& a : terms)
        for (const auto& b : terms) out(a.to, b.to) += a.amplitude * std::conj(b.amplitude) * rho(a.from, b.from);
  }

 private:
  Index dim_;
  Eigen::SparseMatrix<Complex, Eigen::RowMajor> k_;
  ComplexMatrix work_;
  std::vector<std::vector<JumpTerm>> jumps_;
};

enum class Method { dopri5, expm };

inline std::string to_string(Method m) { return m == Method::dopri5 ? "dopri5" : "expm"; }

inline Method method_from_string(std::string_view s) {
  if (s == "dopri5") return Method::dopri5;
  if (s == "expm") return Method::expm;
  throw std::invalid_argument("unknown integration method '" + std::string(s) + "'");
}

struct IntegratorConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();  // us
  Method method = Method::dopri5;
  bool store_states = false;
  long max_steps = 100'000'000;
  InvariantTolerances invariants{};
};

/// Named real observable of the state.
struct Observable {
  std::string name;
  std::function<double(const ComplexMatrix&)> evaluate;
};

inline Observable projector_observable(std::string name, StateVector psi) {
  return {std::move(name), [psi = std::move(psi)](const ComplexMatrix& rho) { return population(rho, psi); }};
}

/// Summed diagonal populations over basis indices.
inline Observable subspace_observable(std::string name, std::vector<Index> indices) {
  return {std::move(name), [idx = std::move(indices)](const ComplexMatrix& rho) {
            double p = 0.0;
            for (Index k : idx) p += rho(k, k).real();
            return std::clamp(p, 0.0, 1.0);
          }};
}

struct IntegrationStats {
  long accepted_steps = 0;
  long rejected_steps = 0;
  long rhs_evaluations = 0;
  double max_trace_error = 0.0;
  double max_hermiticity_error = 0.0;
  double min_eigenvalue = std::numeric_limits<double>::infinity();
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;  // values[observable][sample]
  std::vector<ComplexMatrix> states;        // filled when store_states is set
  IntegrationStats stats;

  const std::vector<double>& series(std::string_view name) const {
    for (std::size_t k = 0; k < names.size(); ++k)
      if (names[k] == name) return values[k];
    throw std::out_of_range("no observable named '" + std::string(name) + "'");
  }
};

namespace detail {

class Sampler {
 public:
  Sampler(Trajectory& traj, std::span<const Observable> obs, const IntegratorConfig& cfg)
      : traj_(traj), obs_(obs), cfg_(cfg) {
    traj_.names.clear();
    for (const auto& o : obs_) traj_.names.push_back(o.name);
    traj_.values.assign(obs_.size(), {});
  }

  void record(double t, const ComplexMatrix& raw) {
    auto& st = traj_.stats;
    const double herm = hermiticity_error(raw);
    const ComplexMatrix rho = 0.5 * (raw + raw.adjoint());
    const double tr = trace_error(rho);
    const double mineig = min_eigenvalue(rho);
    st.max_hermiticity_error = std::max(st.max_hermiticity_error, herm);
    st.max_trace_error = std::max(st.max_trace_error, tr);
    st.min_eigenvalue = std::min(st.min_eigenvalue, mineig);
    const auto& inv = cfg_.invariants;
    if (herm > 10.0 * inv.hermiticity || tr > 10.0 * inv.trace || mineig < -10.0 * inv.positivity ||
        !rho.allFinite()) {
      std::ostringstream os;
      os << "density matrix invariants violated at t = " << t << " us: hermiticity " << herm << ", trace error "
         << tr << ", min eigenvalue " << mineig << " (accepted steps " << st.accepted_steps << ", rejected "
         << st.rejected_steps << ")";
      throw IntegrationError(os.str());
    }
    traj_.times.push_back(t);
    for (std::size_t k = 0; k < obs_.size(); ++k) traj_.values[k].push_back(obs_[k].evaluate(rho));
    if (cfg_.store_states) traj_.states.push_back(rho);
  }

 private:
  Trajectory& traj_;
  std::span<const Observable> obs_;
  const IntegratorConfig& cfg_;
};

inline double scaled_norm(const ComplexMatrix& err, const ComplexMatrix& y0, const ComplexMatrix& y1, double atol,
                          double rtol) {
  double acc = 0.0;
  const Index n = err.size();
  for (Index k = 0; k < n; ++k) {
    const double sc = atol + rtol * std::max(std::abs(y0.data()[k]), std::abs(y1.data()[k]));
    const double r = std::abs(err.data()[k]) / sc;
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

// Dormand-Prince 5(4) coefficients and the continuous extension of Hairer's DOPRI5.
struct DormandPrince {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                          a76 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;
  static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                          d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                          d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
};

inline void check_grid(std::span<const double> t_grid) {
  if (t_grid.empty()) throw std::invalid_argument("evolve: empty time grid");
  for (std::size_t k = 1; k < t_grid.size(); ++k)
    if (!(t_grid[k] > t_grid[k - 1])) throw std::invalid_argument("evolve: time grid must be strictly increasing");
}

inline Trajectory evolve_dopri5(const DensityMatrix& rho0, const ComplexMatrix& H, std::span<const CollapseOp> cs,
                                std::span<const double> t_grid, const IntegratorConfig& cfg,
                                std::span<const Observable> observables) {
  using DP = DormandPrince;
  Trajectory traj;
  Sampler sampler(traj, observables, cfg);
  Liouvillian gen(H, cs);
  auto& st = traj.stats;
  auto f = [&](const ComplexMatrix& y, ComplexMatrix& out) {
    gen.apply(y, out);
    ++st.rhs_evaluations;
  };

  const Index dim = rho0.dim();
  ComplexMatrix y = rho0.matrix();
  double t = t_grid.front();
  const double t_end = t_grid.back();
  sampler.record(t, y);
  std::size_t next = 1;
  if (next == t_grid.size()) return traj;

  ComplexMatrix k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim), k5(dim, dim), k6(dim, dim), k7(dim, dim);
  ComplexMatrix ytmp(dim, dim), y1(dim, dim), err(dim, dim);
  f(y, k1);

  // Initial step size from the local scale of the problem.
  double h;
  {
    const ComplexMatrix zero = ComplexMatrix::Zero(dim, dim);
    const double d0 = scaled_norm(y, y, zero, cfg.abs_tol, cfg.rel_tol);
    const double d1 = scaled_norm(k1, y, zero, cfg.abs_tol, cfg.rel_tol);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, cfg.max_step);
    ytmp = y + h0 * k1;
    f(ytmp, k2);
    const double d2 = scaled_norm(k2 - k1, y, zero, cfg.abs_tol, cfg.rel_tol) / h0;
    const double dm = std::max(d1, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 1.0 / 5.0);
    h = std::min({100.0 * h0, h1, cfg.max_step});
  }

  bool last_rejected = false;
  while (t < t_end) {
    if (st.accepted_steps + st.rejected_steps >= cfg.max_steps)
      throw IntegrationError("evolve: step budget exhausted at t = " + std::to_string(t) + " us");
    h = std::min(h, t_end - t);
    if (h <= 1e-14 * std::max(1.0, std::abs(t)))
      throw IntegrationError("evolve: step size underflow at t = " + std::to_string(t) + " us");

    ytmp = y + h * DP::a21 * k1;
    f(ytmp, k2);
    ytmp = y + h * (DP::a31 * k1 + DP::a32 * k2);
    f(ytmp, k3);
    ytmp = y + h * (DP::a41 * k1 + DP::a42 * k2 + DP::a43 * k3);
    f(ytmp, k4);
    ytmp = y + h * (DP::a51 * k1 + DP::a52 * k2 + DP::a53 * k3 + DP::a54 * k4);
    f(ytmp, k5);
    ytmp = y + h * (DP::a61 * k1 + DP::a62 * k2 + DP::a63 * k3 + DP::a64 * k4 + DP::a65 * k5);
    f(ytmp, k6);
    y1 = y + h * (DP::a71 * k1 + DP::a73 * k3 + DP::a74 * k4 + DP::a75 * k5 + DP::a76 * k6);
    f(y1, k7);
    err = h * (DP::e1 * k1 + DP::e3 * k3 + DP::e4 * k4 + DP::e5 * k5 + DP::e6 * k6 + DP::e7 * k7);
    const double en = scaled_norm(err, y, y1, cfg.abs_tol, cfg.rel_tol);
    if (!std::isfinite(en)) throw IntegrationError("evolve: non-finite error estimate at t = " + std::to_string(t));

    if (en <= 1.0) {
      const double t1 = (t_end - (t + h) < 1e-12 * std::max(1.0, std::abs(t_end))) ? t_end : t + h;
      // Emit every grid point inside (t, t1] from the continuous extension.
      if (next < t_grid.size() && t_grid[next] <= t1) {
        const ComplexMatrix ydiff = y1 - y;
        const ComplexMatrix bspl = h * k1 - ydiff;
        const ComplexMatrix r4 = ydiff - h * k7 - bspl;
        const ComplexMatrix r5 =
            h * (DP::d1 * k1 + DP::d3 * k3 + DP::d4 * k4 + DP::d5 * k5 + DP::d6 * k6 + DP::d7 * k7);
        while (next < t_grid.size() && t_grid[next] <= t1) {
          const double ts = t_grid[next];
          if (ts == t1) {
            sampler.record(ts, y1);
          } else {
            const double th = (ts - t) / h, th1 = 1.0 - th;
            const ComplexMatrix ys = y + th * (ydiff + th1 * (bspl + th * (r4 + th1 * r5)));
            sampler.record(ts, ys);
          }
          ++next;
        }
      }
      y.swap(y1);
      k1.swap(k7);
      t = t1;
      ++st.accepted_steps;
      double fac = 0.9 * std::pow(std::max(en, 1e-10), -0.2);
      fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 5.0);
      h = std::min(h * fac, cfg.max_step);
      last_rejected = false;
    } else {
      ++st.rejected_steps;
      h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
      last_rejected = true;
    }
  }
  while (next < t_grid.size()) sampler.record(t_grid[next++], y);
  return traj;
}

inline Trajectory evolve_expm(const DensityMatrix& rho0, const ComplexMatrix& H, std::span<const CollapseOp> cs,
                              std::span<const double> t_grid, const IntegratorConfig& cfg,
                              std::span<const Observable> observables) {
  Trajectory traj;
  Sampler sampler(traj, observables, cfg);
  const Index dim = rho0.dim();
  const ComplexMatrix L = liouvillian_superoperator(H, cs);
  Eigen::VectorXcd v(dim * dim);
  for (Index r = 0; r < dim * dim; ++r) v(r) = rho0.matrix()(r / dim, r % dim);
  auto unvec = [dim](const Eigen::VectorXcd& x) {
    ComplexMatrix m(dim, dim);
    for (Index r = 0; r < dim * dim; ++r) m(r / dim, r % dim) = x(r);
    return m;
  };
  sampler.record(t_grid.front(), rho0.matrix());
  std::map<double, ComplexMatrix> propagators;
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    const double dt = t_grid[k] - t_grid[k - 1];
    auto it = propagators.find(dt);
    if (it == propagators.end()) it = propagators.emplace(dt, ComplexMatrix((L * dt).exp())).first;
    v = it->second * v;
    ++traj.stats.accepted_steps;
    sampler.record(t_grid[k], unvec(v));
  }
  return traj;
}

}  // namespace detail

/// Integrates rho0 (given at t_grid.front()) and samples every observable at
/// each grid time. Reported states are re-symmetrized; the integration state
/// is not.
inline Trajectory evolve(const DensityMatrix& rho0, const ComplexMatrix& H, std::span<const CollapseOp> cs,
                         std::span<const double> t_grid, const IntegratorConfig& cfg = {},
                         std::span<const Observable> observables = {}) {
  if (H.rows() != rho0.dim() || H.cols() != rho0.dim()) throw std::domain_error("evolve: dimension mismatch");
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0) || !(cfg.max_step > 0.0))
    throw std::invalid_argument("evolve: tolerances and max_step must be positive");
  detail::check_grid(t_grid);
  if (cfg.method == Method::expm) return detail::evolve_expm(rho0, H, cs, t_grid, cfg, observables);
  return detail::evolve_dopri5(rho0, H, cs, t_grid, cfg, observables);
}

/// n evenly spaced times from t0 to t1 inclusive.
inline std::vector<double> linspace(double t0, double t1, int n) {
  if (n < 2) throw std::invalid_argument("linspace needs at least two points");
  std::vector<double> ts(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) ts[static_cast<std::size_t>(k)] = t0 + (t1 - t0) * k / (n - 1);
  ts.back() = t1;
  return ts;
}

}  // namespace srcool

#endif  // SRCOOL_LINDBLAD_HPP
