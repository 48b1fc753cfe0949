#ifndef TDPT_CLI_CONFIG_HPP
#define TDPT_CLI_CONFIG_HPP

// Run configuration. Settings are plain key -> text maps layered as
//   built-in defaults < command defaults < config file < command-line flags
// and turned into a validated RunConfig in one place.
//
// Config file schema (one `key = value` per line, `#` starts a comment):
//   A, B                      potential parameters
//   profile                   sinusoidal | invsqrt | fixed
//   A1, B1, omega             InverseSqrtCosine parameters
//   L0                        Fixed width
//   levels                    comma-separated n values, e.g. 0,1,2
//   sectors                   comma-separated minus / plus
//   t_min, t_max, t_steps     time grid (t_steps points, endpoints included)
//   times                     snapshot times for density / potential
//   x_steps                   points across the box
//   quad_base_order, quad_rel_tol, quad_max_doublings
//   out, format               output path, csv | json
// Dashes and underscores in keys are interchangeable.

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdpt/dynamics.hpp"
#include "tdpt/quadrature.hpp"
#include "tdpt/stationary.hpp"

namespace tdpt::cli {

/// Anything that should end the run with exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Settings = std::map<std::string, std::string>;

inline std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

inline const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "A",      "B",       "profile", "A1",         "B1",         "omega",
      "L0",     "levels",  "sectors", "t_min",      "t_max",      "t_steps",
      "times",  "x_steps", "out",     "format",     "quad_base_order",
      "quad_rel_tol",      "quad_max_doublings"};
  return keys;
}

inline std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline Settings parse_settings(std::istream& in, const std::string& source) {
  Settings settings;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(number) + ": expected `key = value`");
    }
    const std::string key = normalize_key(trim(line.substr(0, eq)));
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(source + ":" + std::to_string(number) + ": unknown key `" + key + "`");
    }
    settings[key] = trim(line.substr(eq + 1));
  }
  return settings;
}

inline Settings load_settings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse_settings(in, path);
}

/// Entries of `top` replace those of `base`.
inline Settings layer(Settings base, const Settings& top) {
  for (const auto& [k, v] : top) base[k] = v;
  return base;
}

enum class Format { csv, json };

struct TimeGrid {
  double t_min = 0.0;
  double t_max = 4.0 * std::numbers::pi;
  int steps = 200;

  std::vector<double> points() const {
    std::vector<double> t(steps);
    for (int i = 0; i < steps; ++i) {
      t[i] = (i + 1 == steps) ? t_max : t_min + (t_max - t_min) * i / (steps - 1);
    }
    return t;
  }
};

struct RunConfig {
  PTParams params{5.0, 3.4};
  BoundaryProfile profile = Sinusoidal{};
  InverseSqrtCosine oscillating{};  // right-panel profile of the figures
  std::vector<int> levels{0, 1, 2};
  std::vector<Sector> sectors{Sector::minus, Sector::plus};
  TimeGrid t_grid{};
  std::vector<double> times{10.0, 20.0, 30.0};
  int x_steps = 200;
  QuadratureSpec quadrature{};
  std::string output_path;
  Format format = Format::csv;
};

namespace detail {

inline double parse_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ConfigError(key + ": not a finite number: `" + text + "`");
  }
  return value;
}

inline int parse_int(const std::string& key, const std::string& text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw ConfigError(key + ": not an integer: `" + text + "`");
  return value;
}

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

}  // namespace detail

/// Builds and validates a RunConfig; every failure is a ConfigError.
inline RunConfig make_config(const Settings& s) {
  RunConfig c;
  auto get = [&](const char* key) -> const std::string* {
    auto it = s.find(key);
    return it == s.end() ? nullptr : &it->second;
  };
  auto number = [&](const char* key, double fallback) {
    const auto* v = get(key);
    return v ? detail::parse_double(key, *v) : fallback;
  };
  auto integer = [&](const char* key, int fallback) {
    const auto* v = get(key);
    return v ? detail::parse_int(key, *v) : fallback;
  };

  try {
    c.params = PTParams(number("A", 5.0), number("B", 3.4));
    c.oscillating = {number("A1", 1.0), number("B1", 0.5), number("omega", 1.0)};
    validate_profile(c.oscillating);
    const std::string profile = get("profile") ? *get("profile") : "sinusoidal";
    if (profile == "sinusoidal") {
      c.profile = Sinusoidal{};
    } else if (profile == "invsqrt") {
      c.profile = c.oscillating;
    } else if (profile == "fixed") {
      c.profile = Fixed{number("L0", std::numbers::pi)};
    } else {
      throw ConfigError("profile must be sinusoidal, invsqrt or fixed, got `" + profile + "`");
    }
    validate_profile(c.profile);
    if (!std::holds_alternative<Fixed>(c.profile) && get("L0")) {
      validate_profile(Fixed{number("L0", std::numbers::pi)});
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  if (const auto* v = get("levels")) {
    c.levels.clear();
    for (const auto& item : detail::split_list(*v)) c.levels.push_back(detail::parse_int("levels", item));
  }
  if (c.levels.empty()) throw ConfigError("levels must be nonempty");
  for (int n : c.levels) {
    if (n < 0) throw ConfigError("levels must be nonnegative");
  }

  if (const auto* v = get("sectors")) {
    c.sectors.clear();
    for (const auto& item : detail::split_list(*v)) {
      try {
        c.sectors.push_back(parse_sector(item));
      } catch (const std::exception&) {
        throw ConfigError("sectors: unknown sector `" + item + "`");
      }
    }
  }
  if (c.sectors.empty()) throw ConfigError("sectors must be nonempty");

  c.t_grid = {number("t_min", 0.0), number("t_max", 4.0 * std::numbers::pi), integer("t_steps", 200)};
  if (!(c.t_grid.t_min >= 0.0)) throw ConfigError("t_min must be >= 0");
  if (!(c.t_grid.t_min < c.t_grid.t_max)) throw ConfigError("t_min must be < t_max");
  if (c.t_grid.steps < 2) throw ConfigError("t_steps must be >= 2");

  if (const auto* v = get("times")) {
    c.times.clear();
    for (const auto& item : detail::split_list(*v)) c.times.push_back(detail::parse_double("times", item));
  }
  if (c.times.empty()) throw ConfigError("times must be nonempty");
  for (double t : c.times) {
    if (t < 0.0) throw ConfigError("times must be >= 0");
  }

  c.x_steps = integer("x_steps", 200);
  if (c.x_steps < 2) throw ConfigError("x_steps must be >= 2");

  c.quadrature = {integer("quad_base_order", 64), number("quad_rel_tol", 1e-11),
                  integer("quad_max_doublings", 6)};
  try {
    c.quadrature.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  c.output_path = get("out") ? *get("out") : "";
  const std::string format = get("format") ? *get("format") : "csv";
  if (format == "csv") {
    c.format = Format::csv;
  } else if (format == "json") {
    c.format = Format::json;
  } else {
    throw ConfigError("format must be csv or json, got `" + format + "`");
  }
  return c;
}

}  // namespace tdpt::cli

#endif  // TDPT_CLI_CONFIG_HPP
