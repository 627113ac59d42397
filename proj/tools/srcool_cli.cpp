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

#include <charconv>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "srcool/cli/commands.hpp"

namespace {

using namespace srcool;
using namespace srcool::cli;

// "9/2" or "2".
HalfInt parse_half_int(const std::string& s) {
  int num = 0, den = 1;
  const char* end = s.data() + s.size();
  auto r = std::from_chars(s.data(), end, num);
  if (r.ec != std::errc()) throw ConfigError("invalid quantum number '" + s + "'");
  if (r.ptr != end) {
    if (*r.ptr != '/') throw ConfigError("invalid quantum number '" + s + "'");
    const auto r2 = std::from_chars(r.ptr + 1, end, den);
    if (r2.ec != std::errc() || r2.ptr != end || den != 2) throw ConfigError("invalid quantum number '" + s + "'");
    return HalfInt::from_twice(num);
  }
  return HalfInt(num);
}

Bracket parse_bracket(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw ConfigError("bracket must look like LO:HI, got '" + s + "'");
  Bracket b{parse_number("bracket", trim(std::string_view(s).substr(0, colon))),
            parse_number("bracket", trim(std::string_view(s).substr(colon + 1)))};
  if (!(b.lo < b.hi)) throw ConfigError("bracket must satisfy LO < HI, got '" + s + "'");
  return b;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation toolkit for nuclear-spin-preserving sideband cooling of 87Sr", "srcool"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SRCOOL_VERSION);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = ".";
  bool svg = false;
  unsigned jobs = 1;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--set", overrides, "override one key, key=value (repeatable)")->allow_extra_args(false);
    sub->add_option("--out", out_dir, "output directory");
    sub->add_flag("--svg", svg, "also write SVG plots");
    sub->add_option("--jobs", jobs, "worker threads for sweeps")->check(CLI::Range(1u, 256u));
  };

  auto* simulate = app.add_subcommand("simulate", "integrate the cooling dynamics");
  add_common(simulate);

  auto* balance = app.add_subcommand("balance", "find omega_pd equalizing the dressed energies");
  add_common(balance);
  std::string bracket_text;
  balance->add_option("--bracket", bracket_text, "search interval LO:HI in MHz");

  auto* dressed = app.add_subcommand("dressed", "dressed-state overlaps and energies");
  add_common(dressed);

  auto* reproduce = app.add_subcommand("reproduce", "regenerate a published result as data files");
  add_common(reproduce);
  std::string target;
  reproduce->add_option("target", target, "fig3 | table1 | sensitivity | impurity | appendixA | levels | isotopes")
      ->required();

  auto* lasercalc = app.add_subcommand("lasercalc", "linewidth, dipole, field, intensity and power conversions");
  add_common(lasercalc);
  LaserQuery lq;
  int mult = 9;
  lasercalc->add_option("--gamma", lq.gamma, "linewidth, 1/s");
  lasercalc->add_option("--wavelength-nm", lq.wavelength_nm, "transition wavelength, nm");
  lasercalc->add_option("--frequency-hz", lq.frequency_hz, "transition frequency, Hz");
  lasercalc->add_option("--mult", mult, "multiplicity factor, 9 or 1")->check(CLI::IsMember({1, 9}));
  lasercalc->add_option("--d", lq.d_ea0, "dipole matrix element, e a0");
  lasercalc->add_option("--rabi", lq.rabi_mhz, "Rabi frequency, MHz");
  lasercalc->add_option("--radius-um", lq.spot_radius_um, "beam radius, um");

  auto* levels = app.add_subcommand("levels", "hyperfine F-level energies");
  add_common(levels);
  std::string I_text = "9/2", J_text = "2";
  LevelQuery level_query;
  levels->add_option("--I", I_text, "nuclear spin, e.g. 9/2");
  levels->add_option("--J", J_text, "electronic angular momentum");
  levels->add_option("--A", level_query.c.A, "magnetic dipole constant, MHz");
  levels->add_option("--Q", level_query.c.Q, "electric quadrupole constant, MHz");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config;
  }

  return run_guarded(
      [&]() -> int {
        const OutputOptions o{out_dir, svg, jobs};
        if (*lasercalc) {
          lq.multiplicity = mult == 1 ? laser::Multiplicity::one : laser::Multiplicity::nine;
          return cmd_lasercalc(lq, o, std::cout);
        }
        if (*levels) {
          level_query.I = parse_half_int(I_text);
          level_query.J = parse_half_int(J_text);
          if (level_query.I.twice() < 0 || level_query.J.twice() < 0)
            throw ConfigError("angular momenta must be non-negative");
          return cmd_levels(level_query, o, std::cout);
        }
        RunConfig c = load_config(config_path, overrides);
        if (*simulate) return cmd_simulate(c, o, std::cout);
        if (*dressed) return cmd_dressed(c, o, std::cout);
        if (*balance) {
          if (!bracket_text.empty()) c.bracket = parse_bracket(bracket_text);
          return cmd_balance(c, o, std::cout);
        }
        return cmd_reproduce(target, c, o, std::cout);
      },
      std::cerr);
}
