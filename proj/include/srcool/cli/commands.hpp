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

#ifndef SRCOOL_CLI_COMMANDS_HPP
#define SRCOOL_CLI_COMMANDS_HPP

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "srcool/analysis.hpp"
#include "srcool/cli/config.hpp"
#include "srcool/cli/report.hpp"
#include "srcool/hyperfine.hpp"
#include "srcool/lasercalc.hpp"

namespace srcool::cli {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

enum ExitCode : int { exit_ok = 0, exit_config = 2, exit_numerical = 3 };

struct OutputOptions {
  fs::path dir = ".";
  bool svg = false;
  unsigned jobs = 1;
};

inline json config_echo(const RunConfig& c) {
  json keys = json::object();
  for (const auto& k : config_keys()) keys[k.name] = k.get(c);
  return keys;
}

inline json header_json(const RunConfig& c) {
  json j;
  j["tool"] = "srcool";
  j["version"] = tool_version;
  j["config_hash"] = config_hash(c);
  j["input"] = config_echo(c);
  return j;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json dressed_json(const ModelParams& p) {
  json j;
  try {
    const DressedPair d = dressed_pair(p);
    j["overlap_up"] = d.overlap_up;
    j["overlap_down"] = d.overlap_down;
    j["energy_up_mhz"] = d.energy_up;
    j["energy_down_mhz"] = d.energy_down;
    const double imb = dressed_imbalance(p);
    j["imbalance_mhz"] = imb;
    try {
      j["nu_mhz"] = compute_nu(p);
    } catch (const UnbalancedError&) {
      j["nu_mhz"] = nullptr;
    }
  } catch (const AmbiguityError& e) {
    j["error"] = e.what();
  }
  return j;
}

inline json cooling_json(const CoolingResult& r) {
  json j;
  j["fidelity"] = r.fidelity;
  j["populations"] = {{"psi0", r.pop_residual_clock}, {"perp", r.pop_perp},     {"reservoir", r.pop_reservoir},
                      {"clock_total", r.pop_clock_total}, {"1P1_total", r.pop_1p1}, {"1D2_total", r.pop_1d2},
                      {"6s", r.pop_6s}};
  const auto& s = r.trajectory.stats;
  j["integrator"] = {{"accepted_steps", s.accepted_steps},
                     {"rejected_steps", s.rejected_steps},
                     {"rhs_evaluations", s.rhs_evaluations},
                     {"max_trace_error", s.max_trace_error},
                     {"max_hermiticity_error", s.max_hermiticity_error},
                     {"min_eigenvalue", s.min_eigenvalue}};
  return j;
}

inline void write_cooling_files(const CoolingResult& r, const fs::path& dir, const std::string& stem, bool svg) {
  write_atomic(dir / (stem + "_trajectory.csv"), trajectory_csv(r.trajectory));
  if (svg) {
    const auto [lin, log] = cooling_svgs(r.trajectory);
    write_atomic(dir / (stem + "_populations.svg"), lin);
    write_atomic(dir / (stem + "_populations_log.svg"), log);
  }
}

/// Full run of the configured model.
inline int cmd_simulate(const RunConfig& c, const OutputOptions& o, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const CoolingResult r = cool(c.alpha(), c.beta(), c.model, c.t_final, c.samples, c.integrator);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json j = header_json(c);
  j.update(cooling_json(r));
  j["dressed"] = dressed_json(c.model);
  j["wall_clock_s"] = wall;
  write_cooling_files(r, o.dir, "simulate", o.svg);
  write_atomic(o.dir / "simulate_summary.json", dump(j));
  out << "fidelity " << r.fidelity << " at t = " << c.t_final << " us\n"
      << "pop_perp " << r.pop_perp << ", pop_reservoir " << r.pop_reservoir << ", pop_psi0 " << r.pop_residual_clock
      << "\n";
  return exit_ok;
}

inline int cmd_balance(const RunConfig& c, const OutputOptions& o, std::ostream& out) {
  json j = header_json(c);
  const double imb = dressed_imbalance(c.model);
  j["configured_omega_pd_mhz"] = c.model.omega_pd;
  j["configured_imbalance_mhz"] = imb;
  j["bracket"] = {c.bracket.lo, c.bracket.hi};
  const double omega = balance_omega_pd(c.model, c.bracket);
  ModelParams balanced = c.model;
  balanced.omega_pd = omega;
  const double nu = compute_nu(balanced);
  j["balanced_omega_pd_mhz"] = omega;
  j["residual_mhz"] = dressed_imbalance(balanced);
  j["nu_mhz"] = nu;
  j["recommended_delta_mhz"] = -nu;
  write_atomic(o.dir / "balance.json", dump(j));
  out << "configured omega_pd " << c.model.omega_pd << " MHz: dressed-energy imbalance " << imb << " MHz\n"
      << "balanced omega_pd " << omega << " MHz, nu " << nu << " MHz, set delta = " << -nu << " MHz\n";
  return exit_ok;
}

inline int cmd_dressed(const RunConfig& c, const OutputOptions& o, std::ostream& out) {
  json j = header_json(c);
  j["dressed"] = dressed_json(c.model);
  ModelParams p = c.model;
  p.omega_eff = 0.0;
  const auto d = dressed_pair(p);
  j["spectrum_mhz"] = std::vector<double>(d.energies.data(), d.energies.data() + d.energies.size());
  write_atomic(o.dir / "dressed.json", dump(j));
  out << "overlap_up " << d.overlap_up << ", overlap_down " << d.overlap_down << "\n"
      << "energy_up " << d.energy_up << " MHz, energy_down " << d.energy_down << " MHz\n";
  return exit_ok;
}

// ---------------------------------------------------------------------------
// Tables shared by `levels`, `lasercalc` and `reproduce`

struct LevelQuery {
  HalfInt I = half(9);
  HalfInt J = HalfInt(2);
  HyperfineConstants c{-194.0, -75.0};
};

inline CsvTable levels_table(const LevelQuery& q) {
  CsvTable t("levels", {"F", "energy_mhz", "splitting_to_next_mhz"});
  const Spin I(q.I), J(q.J);
  const int tmin = std::abs(I.twice() - J.twice()), tmax = I.twice() + J.twice();
  for (int tF = tmax; tF >= tmin; tF -= 2) {
    const Spin F(HalfInt::from_twice(tF));
    const std::string next = tF - 2 >= tmin
                                 ? sci(f_splitting(q.c, I, J, F, Spin(HalfInt::from_twice(tF - 2))))
                                 : std::string("");
    t.add_row({F.value().str(), sci(f_level_energy(q.c, I, J, F)), next});
  }
  return t;
}

inline int cmd_levels(const LevelQuery& q, const OutputOptions& o, std::ostream& out) {
  const std::string csv = levels_table(q).str();
  write_atomic(o.dir / "levels.csv", csv);
  out << csv;
  return exit_ok;
}

struct LaserQuery {
  std::optional<double> gamma;           // 1/s
  std::optional<double> wavelength_nm;
  std::optional<double> frequency_hz;
  laser::Multiplicity multiplicity = laser::Multiplicity::nine;
  std::optional<double> d_ea0;
  std::optional<double> rabi_mhz;
  double spot_radius_um = 20.0;
};

inline CsvTable appendix_a_table() {
  using namespace laser;
  CsvTable t("appendixA", {"quantity", "value", "unit"});
  const double omega_p = omega_from_frequency_hz(6.51e14);
  const double omega_s = omega_from_wavelength_nm(1124.232);
  const double dp = rdme_from_linewidth(2.0e8, omega_p, Multiplicity::nine);
  const double ds = rdme_from_linewidth(1.86e7, omega_s, Multiplicity::one);
  const double e_ps = field_for_rabi(300.0, 2.09);
  const double i_ps = intensity_from_field(e_ps);
  const double p_ps = power_from_intensity(i_ps, BeamSpec{20.0});
  const double e_pd = field_for_rabi(144.27, 0.092);
  const double p_pd = power_from_intensity(intensity_from_field(e_pd), BeamSpec{20.0});
  t.add_row({"d_1P1_1S0", sci(dp), "e a0"});
  t.add_row({"d_6s_1P1", sci(ds), "e a0"});
  t.add_row({"field_ps_300MHz", sci(e_ps), "V/m"});
  t.add_row({"intensity_ps", sci(i_ps * w_per_m2_to_w_per_cm2), "W/cm^2"});
  t.add_row({"power_ps_20um", sci(p_ps * 1e3), "mW"});
  t.add_row({"field_pd_144.27MHz", sci(e_pd), "V/m"});
  t.add_row({"power_pd_20um", sci(p_pd * 1e3), "mW"});
  return t;
}

inline int cmd_lasercalc(const LaserQuery& q, const OutputOptions& o, std::ostream& out) {
  using namespace laser;
  const bool custom = q.gamma || q.d_ea0 || q.rabi_mhz;
  if (!custom) {
    const std::string csv = appendix_a_table().str();
    write_atomic(o.dir / "lasercalc.csv", csv);
    out << csv;
    return exit_ok;
  }
  json j;
  std::optional<double> d = q.d_ea0;
  if (q.gamma) {
    if (q.wavelength_nm.has_value() == q.frequency_hz.has_value())
      throw ConfigError("give exactly one of --wavelength-nm and --frequency-hz with --gamma");
    const double omega0 =
        q.wavelength_nm ? omega_from_wavelength_nm(*q.wavelength_nm) : omega_from_frequency_hz(*q.frequency_hz);
    const double dd = rdme_from_linewidth(*q.gamma, omega0, q.multiplicity);
    j["omega0_rad_per_s"] = omega0;
    j["d_ea0"] = dd;
    if (!d) d = dd;
  }
  if (q.rabi_mhz) {
    if (!d) throw ConfigError("--rabi needs --d or --gamma");
    const double field = field_for_rabi(*q.rabi_mhz, *d);
    const double intensity = intensity_from_field(field);
    j["field_v_per_m"] = field;
    j["intensity_w_per_cm2"] = intensity * w_per_m2_to_w_per_cm2;
    j["power_mw"] = power_from_intensity(intensity, BeamSpec{q.spot_radius_um}) * 1e3;
  }
  const std::string text = dump(j);
  write_atomic(o.dir / "lasercalc.json", text);
  out << text;
  return exit_ok;
}

// ---------------------------------------------------------------------------
// Reproduction targets

inline const std::vector<std::string>& reproduce_targets() {
  static const std::vector<std::string> t = {"fig3",     "table1", "sensitivity", "impurity",
                                             "appendixA", "levels", "isotopes"};
  return t;
}

struct IsotopeSpec {
  std::string name;
  HalfInt I;
  HyperfineConstants c;
};

inline const std::vector<IsotopeSpec>& isotope_specs() {
  static const std::vector<IsotopeSpec> s = {
      {"171Yb", half(1), {-213.0, 0.0}},   {"173Yb", half(5), {60.0, 600.0}},  {"43Ca", half(7), {-15.46, -9.7}},
      {"41Ca", half(7), {-18.84, -9.2}},   {"67Zn", half(5), {17.7, 20.0}},    {"87Sr", half(9), {-3.4, 39.0}},
  };
  return s;
}

inline const std::vector<double>& default_ratios() {
  static const std::vector<double> r = {0.1, 1.0 / 3.0, 0.5, 2.0, 3.0, 10.0, 100.0};
  return r;
}

inline int cmd_reproduce(std::string_view which, const RunConfig& c, const OutputOptions& o, std::ostream& out) {
  const unsigned jobs = o.jobs;
  if (which == "fig3") {
    const CoolingResult r = cool(Complex(1.0, 0.0), Complex(1.0, 0.0), c.model, 20.0, 201, c.integrator);
    json j = header_json(c);
    j.update(cooling_json(r));
    j["dressed"] = dressed_json(c.model);
    write_cooling_files(r, o.dir, "fig3", o.svg);
    write_atomic(o.dir / "fig3_summary.json", dump(j));
    out << "fig3: fidelity " << r.fidelity << ", pop_perp " << r.pop_perp << ", pop_reservoir " << r.pop_reservoir
        << ", pop_psi0 " << r.pop_residual_clock << "\n";
  } else if (which == "table1") {
    const auto rows = ratio_sweep(c.model, default_ratios(), 20.0, c.integrator, jobs);
    CsvTable t("table1", {"alpha_over_beta", "fidelity", "pop_perp", "pop_reservoir"});
    json arr = json::array();
    for (const auto& r : rows) {
      t.add_row({sci(r.ratio), sci(r.fidelity), sci(r.pop_perp), sci(r.pop_reservoir)});
      arr.push_back({{"alpha_over_beta", r.ratio}, {"fidelity", r.fidelity}});
    }
    json j = header_json(c);
    j["rows"] = arr;
    write_atomic(o.dir / "table1.csv", t.str());
    write_atomic(o.dir / "table1.json", dump(j));
    out << t.str();
  } else if (which == "sensitivity") {
    const auto rows = sensitivity_suite(c.model, c.integrator, jobs);
    CsvTable t("sensitivity", {"label", "perturbation", "t_us", "fidelity", "pop_perp", "pop_reservoir",
                               "budget_error", "splitting_mhz"});
    for (const auto& r : rows)
      t.add_row({r.label, r.perturbation, sci(r.t_us), sci(r.fidelity), sci(r.pop_perp), sci(r.pop_reservoir),
                 sci(r.budget_error), r.splitting_mhz ? sci(*r.splitting_mhz) : std::string("")});
    write_atomic(o.dir / "sensitivity.csv", t.str());
    out << t.str();
  } else if (which == "impurity") {
    const auto rows = impurity_sweep(c.model, {0.0, 0.01, 0.1}, 20.0, c.integrator, jobs);
    CsvTable t("impurity", {"chi", "rabi_factor", "fidelity", "pop_perp", "pop_reservoir", "raman_loss_estimate"});
    for (const auto& r : rows)
      t.add_row({sci(r.chi), sci(r.rabi_factor), sci(r.fidelity), sci(r.pop_perp), sci(r.pop_reservoir),
                 sci(impurity_loss_estimate(r.chi))});
    write_atomic(o.dir / "impurity.csv", t.str());
    out << t.str();
  } else if (which == "appendixA") {
    const std::string csv = appendix_a_table().str();
    write_atomic(o.dir / "appendixA.csv", csv);
    out << csv;
  } else if (which == "levels") {
    const std::string csv = levels_table(LevelQuery{}).str();
    write_atomic(o.dir / "levels.csv", csv);
    out << csv;
  } else if (which == "isotopes") {
    CsvTable t("isotopes", {"species", "I", "A_mhz", "Q_mhz", "min_omega_ps_mhz", "overlap", "saturated"});
    const auto results = parallel_map(
        isotope_specs(), [](const IsotopeSpec& s) { return min_omega_ps(Spin(s.I), s.c); }, jobs);
    for (std::size_t k = 0; k < results.size(); ++k) {
      const auto& s = isotope_specs()[k];
      const auto& r = results[k];
      t.add_row({s.name, s.I.str(), sci(s.c.A), sci(s.c.Q), sci(r.omega_ps), sci(r.overlap),
                 r.saturated ? "true" : "false"});
    }
    write_atomic(o.dir / "isotopes.csv", t.str());
    out << t.str();
  } else {
    throw ConfigError("unknown reproduce target '" + std::string(which) + "'");
  }
  return exit_ok;
}

/// Maps failures to exit codes: 2 for configuration errors, 3 for numerical ones.
inline int run_guarded(const std::function<int()>& fn, std::ostream& err) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return exit_numerical;
  }
}

}  // namespace srcool::cli

#endif  // SRCOOL_CLI_COMMANDS_HPP
