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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "srcool/cli/commands.hpp"

using namespace srcool;
using namespace srcool::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("srcool_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SRCOOL_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(ConfigTest, DefaultsMatchModel) {
  const RunConfig c = load_config("", {});
  EXPECT_EQ(c.model.omega_pd, 144.27);
  EXPECT_EQ(c.model.delta, 3.8826);
  EXPECT_EQ(c.t_final, 20.0);
}

TEST(ConfigTest, GrammarAndOverrides) {
  RunConfig c;
  apply_text(c, "# comment\n\n omega_pd = 140   # trailing\ndelta_pd=-1750\nmethod = expm\n");
  EXPECT_EQ(c.model.omega_pd, 140.0);
  EXPECT_EQ(c.model.delta_pd, -1750.0);
  EXPECT_EQ(c.integrator.method, Method::expm);
  apply_override(c, "omega_pd=150");
  EXPECT_EQ(c.model.omega_pd, 150.0);
}

TEST(ConfigTest, Rejections) {
  RunConfig c;
  EXPECT_THROW(apply_text(c, "omega_pdd = 1\n"), ConfigError);
  EXPECT_THROW(apply_text(c, "omega_pd = 1\nomega_pd = 2\n"), ConfigError);
  EXPECT_THROW(apply_text(c, "omega_pd 1\n"), ConfigError);
  EXPECT_THROW(apply_text(c, "omega_pd = 1.2.3\n"), ConfigError);
  EXPECT_THROW(apply_text(c, "omega_pd = \n"), ConfigError);
  EXPECT_THROW(apply_text(c, "samples = 1\n"), ConfigError);
  EXPECT_THROW(apply_text(c, "method = euler\n"), ConfigError);
  EXPECT_THROW(apply_override(c, "omega_pd"), ConfigError);
  EXPECT_THROW(load_config("", {"gamma_p=-1"}), ConfigError);
  EXPECT_THROW(load_config("", {"bracket_lo=300", "bracket_hi=50"}), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/srcool.cfg", {}), ConfigError);
}

TEST(ConfigTest, CanonicalTextRoundTripsAndHashes) {
  RunConfig c = load_config("", {"omega_pd=140.125", "alpha_re=0.1", "method=expm"});
  RunConfig d;
  apply_text(d, canonical_text(c));
  EXPECT_EQ(canonical_text(c), canonical_text(d));
  EXPECT_EQ(config_hash(c), config_hash(d));
  EXPECT_EQ(config_hash(c).size(), 16u);
  EXPECT_NE(config_hash(c), config_hash(RunConfig{}));
}

TEST(ReportTest, AtomicWriteLeavesNoTemporary) {
  const fs::path dir = scratch("atomic");
  write_atomic(dir / "a.txt", "hello\n");
  EXPECT_EQ(slurp(dir / "a.txt"), "hello\n");
  EXPECT_FALSE(fs::exists(dir / "a.txt.partial"));
}

TEST(ReportTest, TrajectoryCsvSchema) {
  const CoolingResult r = cool(Complex(1.0, 0.0), Complex(1.0, 0.0), ModelParams{}, 0.5, 2);
  const std::string csv = trajectory_csv(r.trajectory);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# srcool trajectory schema v", 0), 0u);
  std::getline(in, line);
  EXPECT_EQ(line, "t_us,pop_psi0,pop_psif,pop_perp,pop_reservoir,pop_1P1_total,pop_1D2_total,pop_6s");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 2);
}

TEST(ReportTest, SvgIsWellFormedEnough) {
  const CoolingResult r = cool(Complex(1.0, 0.0), Complex(1.0, 0.0), ModelParams{}, 0.5, 6);
  const auto [lin, log] = cooling_svgs(r.trajectory);
  for (const auto* s : {&lin, &log}) {
    EXPECT_EQ(s->rfind("<svg", 0), 0u);
    EXPECT_NE(s->find("</svg>"), std::string::npos);
    EXPECT_NE(s->find("polyline"), std::string::npos);
  }
}

TEST(CommandTest, LevelsAndLaserTables) {
  std::ostringstream out;
  const fs::path dir = scratch("levels");
  EXPECT_EQ(cmd_reproduce("levels", RunConfig{}, OutputOptions{dir}, out), exit_ok);
  const std::string csv = slurp(dir / "levels.csv");
  EXPECT_NE(csv.find("13/2,-1.764750000000e+03"), std::string::npos);
  EXPECT_NE(csv.find("11/2,-4.631250000000e+02"), std::string::npos);
  EXPECT_EQ(cmd_reproduce("appendixA", RunConfig{}, OutputOptions{dir}, out), exit_ok);
  EXPECT_TRUE(fs::exists(dir / "appendixA.csv"));
  std::ostringstream err;
  EXPECT_EQ(run_guarded([&] { return cmd_reproduce("fig4", RunConfig{}, OutputOptions{dir}, out); }, err),
            exit_config);
}

TEST(CliProcessTest, SimulateIsDeterministic) {
  const fs::path a = scratch("sim_a"), b = scratch("sim_b");
  const std::string args = " simulate --set t_final=1 --set samples=2 --svg --out ";
  ASSERT_EQ(run_cli(args + a.string()), 0);
  ASSERT_EQ(run_cli(args + b.string()), 0);
  const std::string csv = slurp(a / "simulate_trajectory.csv");
  EXPECT_EQ(csv, slurp(b / "simulate_trajectory.csv"));
  EXPECT_TRUE(fs::exists(a / "simulate_populations_log.svg"));
  const auto j = nlohmann::json::parse(slurp(a / "simulate_summary.json"));
  EXPECT_TRUE(j.contains("wall_clock_s"));
  EXPECT_TRUE(j.contains("config_hash"));
  EXPECT_EQ(j["input"]["t_final"], "1");
  EXPECT_GE(j["fidelity"].get<double>(), 0.0);
}

TEST(CliProcessTest, ConfigFileAndExitCodes) {
  const fs::path dir = scratch("codes");
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "# short run\nt_final = 0.5\nsamples = 3\n";
  }
  EXPECT_EQ(run_cli("simulate --config " + (dir / "run.cfg").string() + " --out " + dir.string()), 0);
  EXPECT_EQ(run_cli("simulate --set bogus=1 --out " + dir.string()), 2);
  EXPECT_EQ(run_cli("simulate --config " + (dir / "missing.cfg").string() + " --out " + dir.string()), 2);
  EXPECT_EQ(run_cli("balance --bracket 50-300 --out " + dir.string()), 2);
  EXPECT_EQ(run_cli("balance --bracket 300:50 --out " + dir.string()), 2);
  EXPECT_EQ(run_cli("balance --bracket 200:300 --out " + dir.string()), 3);
  EXPECT_EQ(run_cli("reproduce nothing --out " + dir.string()), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  EXPECT_EQ(run_cli("--help"), 0);
}

TEST(CliProcessTest, BalanceReportsImbalanceAndRoot) {
  const fs::path dir = scratch("balance");
  ASSERT_EQ(run_cli("balance --set delta_pd=-1750 --bracket 50:300 --out " + dir.string()), 0);
  const auto j = nlohmann::json::parse(slurp(dir / "balance.json"));
  EXPECT_NEAR(std::abs(j["configured_imbalance_mhz"].get<double>()), 0.42, 0.02);
  ASSERT_EQ(run_cli("balance --out " + dir.string()), 0);
  const auto k = nlohmann::json::parse(slurp(dir / "balance.json"));
  EXPECT_NEAR(k["balanced_omega_pd_mhz"].get<double>(), 144.27, 0.05);
  EXPECT_NEAR(k["recommended_delta_mhz"].get<double>(), 3.8826, 1e-3);
}

TEST(CliProcessTest, UtilitySubcommands) {
  const fs::path dir = scratch("util");
  EXPECT_EQ(run_cli("levels --out " + dir.string()), 0);
  EXPECT_TRUE(fs::exists(dir / "levels.csv"));
  EXPECT_EQ(run_cli("levels --I 7/3 --out " + dir.string()), 2);
  EXPECT_EQ(run_cli("lasercalc --out " + dir.string()), 0);
  EXPECT_EQ(run_cli("lasercalc --gamma 1.86e7 --wavelength-nm 1124.232 --mult 1 --rabi 300 --out " + dir.string()), 0);
  const auto j = nlohmann::json::parse(slurp(dir / "lasercalc.json"));
  EXPECT_NEAR(j["d_ea0"].get<double>(), 2.09, 0.02);
  EXPECT_EQ(run_cli("lasercalc --rabi 300 --out " + dir.string()), 2);
  EXPECT_EQ(run_cli("dressed --out " + dir.string()), 0);
  const auto d = nlohmann::json::parse(slurp(dir / "dressed.json"));
  EXPECT_NEAR(d["dressed"]["overlap_up"].get<double>(), 0.99409, 5e-5);
}
