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

// Run configuration. File grammar, one entry per line:
//
//   line    := blank | comment | entry
//   comment := '#' anything
//   entry   := key '=' value [comment]
//
// Keys are the names in config_keys(); whitespace around keys and values is
// ignored; a key may appear at most once per file. Values are plain decimal
// numbers in MHz, gauss and microseconds, except `method` (dopri5 | expm).
// --set key=value overrides are applied after the file.

#ifndef SRCOOL_CLI_CONFIG_HPP
#define SRCOOL_CLI_CONFIG_HPP

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "srcool/analysis.hpp"
#include "srcool/lindblad.hpp"
#include "srcool/model.hpp"

namespace srcool::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  ModelParams model;
  double alpha_re = 1.0, alpha_im = 0.0;
  double beta_re = 1.0, beta_im = 0.0;
  double t_final = 20.0;  // us
  int samples = 201;
  IntegratorConfig integrator;
  Bracket bracket;

  Complex alpha() const { return {alpha_re, alpha_im}; }
  Complex beta() const { return {beta_re, beta_im}; }
};

/// Shortest round-trip decimal form.
inline std::string format_number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline double parse_number(std::string_view key, std::string_view text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto r = std::from_chars(text.data(), end, v);
  if (text.empty() || r.ec != std::errc() || r.ptr != end || !std::isfinite(v))
    throw ConfigError("invalid number '" + std::string(text) + "' for key '" + std::string(key) + "'");
  return v;
}

struct ConfigKey {
  std::string name;
  std::string description;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

namespace detail {

inline ConfigKey number_key(std::string name, std::string description, double RunConfig::*member) {
  std::string n = name;
  return {std::move(name), std::move(description),
          [member, n](RunConfig& c, std::string_view v) { c.*member = parse_number(n, v); },
          [member](const RunConfig& c) { return format_number(c.*member); }};
}

template <class Get>
ConfigKey model_key(std::string name, std::string description, Get field) {
  std::string n = name;
  return {std::move(name), std::move(description),
          [field, n](RunConfig& c, std::string_view v) { field(c.model) = parse_number(n, v); },
          [field](const RunConfig& c) {
            ModelParams m = c.model;
            return format_number(field(m));
          }};
}

}  // namespace detail

inline const std::vector<ConfigKey>& config_keys() {
  using detail::model_key;
  using detail::number_key;
  static const std::vector<ConfigKey> keys = {
      model_key("omega_eff", "Raman Rabi frequency, MHz", [](ModelParams& m) -> double& { return m.omega_eff; }),
      model_key("omega_ps", "1P1-6s Rabi frequency, MHz", [](ModelParams& m) -> double& { return m.omega_ps; }),
      model_key("omega_pd", "1P1-1D2 Rabi frequency, MHz", [](ModelParams& m) -> double& { return m.omega_pd; }),
      model_key("delta", "Raman detuning, MHz", [](ModelParams& m) -> double& { return m.delta; }),
      model_key("delta_pd", "1P1-1D2 detuning, MHz", [](ModelParams& m) -> double& { return m.delta_pd; }),
      model_key("delta_ps_extra", "extra 6s detuning, MHz",
                [](ModelParams& m) -> double& { return m.delta_ps_extra; }),
      model_key("gamma_p", "1P1 linewidth, MHz", [](ModelParams& m) -> double& { return m.gamma_p; }),
      model_key("gamma_s", "6s linewidth, MHz", [](ModelParams& m) -> double& { return m.gamma_s; }),
      model_key("gamma_d", "1D2 linewidth, MHz", [](ModelParams& m) -> double& { return m.gamma_d; }),
      model_key("B", "magnetic field, G", [](ModelParams& m) -> double& { return m.B; }),
      model_key("A", "1P1 magnetic dipole constant, MHz", [](ModelParams& m) -> double& { return m.p1_hf.A; }),
      model_key("Q", "1P1 electric quadrupole constant, MHz", [](ModelParams& m) -> double& { return m.p1_hf.Q; }),
      model_key("gJ", "1P1 Lande factor", [](ModelParams& m) -> double& { return m.gJ; }),
      model_key("mu_nuclear", "nuclear moment, mu_N", [](ModelParams& m) -> double& { return m.mu_nuclear; }),
      model_key("E_hf", "1D2 F=13/2 to 11/2 splitting, MHz", [](ModelParams& m) -> double& { return m.E_hf; }),
      number_key("alpha_re", "qubit amplitude alpha, real part", &RunConfig::alpha_re),
      number_key("alpha_im", "qubit amplitude alpha, imaginary part", &RunConfig::alpha_im),
      number_key("beta_re", "qubit amplitude beta, real part", &RunConfig::beta_re),
      number_key("beta_im", "qubit amplitude beta, imaginary part", &RunConfig::beta_im),
      number_key("t_final", "evolution time, us", &RunConfig::t_final),
      {"samples", "number of sample times including both ends",
       [](RunConfig& c, std::string_view v) {
         const double x = parse_number("samples", v);
         if (x != std::floor(x) || x < 2 || x > 1e7) throw ConfigError("samples must be an integer >= 2");
         c.samples = static_cast<int>(x);
       },
       [](const RunConfig& c) { return std::to_string(c.samples); }},
      {"rel_tol", "integrator relative tolerance",
       [](RunConfig& c, std::string_view v) { c.integrator.rel_tol = parse_number("rel_tol", v); },
       [](const RunConfig& c) { return format_number(c.integrator.rel_tol); }},
      {"abs_tol", "integrator absolute tolerance",
       [](RunConfig& c, std::string_view v) { c.integrator.abs_tol = parse_number("abs_tol", v); },
       [](const RunConfig& c) { return format_number(c.integrator.abs_tol); }},
      {"max_step", "largest integrator step, us (0 for unlimited)",
       [](RunConfig& c, std::string_view v) {
         const double x = parse_number("max_step", v);
         c.integrator.max_step = x == 0.0 ? std::numeric_limits<double>::infinity() : x;
       },
       [](const RunConfig& c) {
         return std::isinf(c.integrator.max_step) ? std::string("0") : format_number(c.integrator.max_step);
       }},
      {"method", "dopri5 or expm",
       [](RunConfig& c, std::string_view v) {
         try {
           c.integrator.method = method_from_string(v);
         } catch (const std::invalid_argument& e) {
           throw ConfigError(e.what());
         }
       },
       [](const RunConfig& c) { return to_string(c.integrator.method); }},
      {"bracket_lo", "lower end of the omega_pd balancing bracket, MHz",
       [](RunConfig& c, std::string_view v) { c.bracket.lo = parse_number("bracket_lo", v); },
       [](const RunConfig& c) { return format_number(c.bracket.lo); }},
      {"bracket_hi", "upper end of the omega_pd balancing bracket, MHz",
       [](RunConfig& c, std::string_view v) { c.bracket.hi = parse_number("bracket_hi", v); },
       [](const RunConfig& c) { return format_number(c.bracket.hi); }},
  };
  return keys;
}

inline const ConfigKey& find_key(std::string_view name) {
  for (const auto& k : config_keys())
    if (k.name == name) return k;
  throw ConfigError("unknown configuration key '" + std::string(name) + "'");
}

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

/// Checks cross-field constraints after all entries are applied.
inline void validate(const RunConfig& c) {
  try {
    c.model.validate();
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
  if (!(c.t_final > 0.0)) throw ConfigError("t_final must be positive");
  if (!(c.integrator.rel_tol > 0.0) || !(c.integrator.abs_tol > 0.0)) throw ConfigError("tolerances must be positive");
  if (!(c.integrator.max_step > 0.0)) throw ConfigError("max_step must be positive or 0");
  if (c.alpha_re == 0.0 && c.alpha_im == 0.0 && c.beta_re == 0.0 && c.beta_im == 0.0)
    throw ConfigError("qubit amplitudes must not both vanish");
  if (!(c.bracket.lo < c.bracket.hi)) throw ConfigError("bracket_lo must be below bracket_hi");
}

/// Applies "key = value" text to c.
inline void apply_text(RunConfig& c, std::string_view text, std::string_view origin = "config") {
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = std::string(origin) + ":" + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) throw ConfigError(where + "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (seen.contains(key)) throw ConfigError(where + "duplicate key '" + std::string(key) + "'");
    seen.emplace(key);
    try {
      find_key(key).set(c, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
}

inline void apply_file(RunConfig& c, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  apply_text(c, ss.str(), path);
}

/// Applies one --set override of the form key=value.
inline void apply_override(RunConfig& c, std::string_view kv) {
  const auto eq = kv.find('=');
  if (eq == std::string_view::npos) throw ConfigError("--set expects key=value, got '" + std::string(kv) + "'");
  find_key(trim(kv.substr(0, eq))).set(c, trim(kv.substr(eq + 1)));
}

/// "key = value" lines for every key in table order; parses back to the same config.
inline std::string canonical_text(const RunConfig& c) {
  std::string out;
  for (const auto& k : config_keys()) out += k.name + " = " + k.get(c) + "\n";
  return out;
}

/// 64-bit FNV-1a of the canonical text, as 16 hex digits.
inline std::string config_hash(const RunConfig& c) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : canonical_text(c)) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Loads defaults, then the optional file, then the overrides, then validates.
inline RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  RunConfig c;
  if (!path.empty()) apply_file(c, path);
  for (const auto& o : overrides) apply_override(c, o);
  validate(c);
  return c;
}

}  // namespace srcool::cli

#endif  // SRCOOL_CLI_CONFIG_HPP
