#pragma once

// Resolved run configuration: defaults, JSON config files, command-line
// overrides and the echo embedded in every artifact.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "charblow/lifespan.hpp"

namespace charblow {

using json = nlohmann::ordered_json;

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"verify", "spectral", "constants", "data",
                                              "simulate", "lemma3", "lifespan"};
  return names;
}

/// Everything a command needs. Defaults are the values listed here; the
/// echo written to artifacts is to_json(config) and reads back to an equal config.
struct RunConfig {
  std::string command = "verify";

  std::string model = "burgers";
  ParamMap params;
  double delta = 0.0;  // 0: model default

  // Initial data.
  double epsilon = 0.05;
  double kappa = 0.0;
  bool rescaled = false;
  double amplitude = 1.0;

  // spectral: state to evaluate at (empty = origin).
  std::vector<double> at;

  // lifespan scan.
  std::vector<double> eps_list{0.0125, 0.025, 0.05, 0.1};
  std::vector<double> kappa_list{0.1};

  // Grid ladder: explicit spacings take precedence over cell counts when given.
  std::vector<int> cells{4096, 8192};
  std::vector<double> dx;
  double cfl = 0.5;
  double dissipation = 0.0;
  double gradient_cap_factor = 1e3;
  double t_end = 0.0;  // 0: t_cap_factor * simple-wave breaking time
  double t_cap_factor = 1.5;
  int snap_every = 0;
  int snapshots = 200;
  bool lab_frame = false;

  // Blow-up estimation.
  double tail_fraction = 0.3;
  int min_samples = 20;
  double front_cells = 10.0;

  int grid = 1001;      // data: sample points
  int samples = 4096;   // ball samples for global bounds
  std::uint64_t seed = 0;

  std::string out;
  std::string plots;  // directory for SVG plots; empty disables them

  bool operator==(const RunConfig& other) const;
};

inline json to_json(const RunConfig& c) {
  json params = json::object();
  for (const auto& [k, v] : c.params) params[k] = v;
  return json{{"command", c.command},
              {"model", c.model},
              {"params", params},
              {"delta", c.delta},
              {"epsilon", c.epsilon},
              {"kappa", c.kappa},
              {"rescaled", c.rescaled},
              {"amplitude", c.amplitude},
              {"at", c.at},
              {"eps_list", c.eps_list},
              {"kappa_list", c.kappa_list},
              {"cells", c.cells},
              {"dx", c.dx},
              {"cfl", c.cfl},
              {"dissipation", c.dissipation},
              {"gradient_cap_factor", c.gradient_cap_factor},
              {"t_end", c.t_end},
              {"t_cap_factor", c.t_cap_factor},
              {"snap_every", c.snap_every},
              {"snapshots", c.snapshots},
              {"lab_frame", c.lab_frame},
              {"tail_fraction", c.tail_fraction},
              {"min_samples", c.min_samples},
              {"front_cells", c.front_cells},
              {"grid", c.grid},
              {"samples", c.samples},
              {"seed", c.seed},
              {"out", c.out},
              {"plots", c.plots}};
}

inline bool RunConfig::operator==(const RunConfig& other) const {
  return to_json(*this) == to_json(other);
}

namespace detail {

template <class T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

}  // namespace detail

inline void validate(const RunConfig& c) {
  using detail::require;
  const auto& cmds = command_names();
  require(std::find(cmds.begin(), cmds.end(), c.command) != cmds.end(),
          "unknown command '" + c.command + "'");
  const auto& models = builtin_model_names();
  require(std::find(models.begin(), models.end(), c.model) != models.end(),
          "unknown model '" + c.model + "'");
  require(c.delta >= 0.0, "delta must be >= 0");
  require(c.epsilon > 0.0 && std::isfinite(c.epsilon), "epsilon must be > 0");
  require(c.kappa >= 0.0 && std::isfinite(c.kappa), "kappa must be >= 0");
  require(!c.rescaled || c.kappa > 0.0, "rescaled data need kappa > 0");
  require(c.amplitude > 0.0 && std::isfinite(c.amplitude), "amplitude must be > 0");
  require(!c.eps_list.empty(), "eps_list must not be empty");
  for (double e : c.eps_list) require(e > 0.0 && std::isfinite(e), "eps_list entries must be > 0");
  require(!c.kappa_list.empty(), "kappa_list must not be empty");
  for (double k : c.kappa_list) require(k >= 0.0 && std::isfinite(k), "kappa_list entries must be >= 0");
  require(!c.cells.empty() || !c.dx.empty(), "grid ladder is empty");
  for (int n : c.cells) require(n >= 16, "cells entries must be >= 16");
  for (double h : c.dx) require(h > 0.0 && std::isfinite(h), "dx entries must be > 0");
  require(c.cfl > 0.0 && c.cfl <= 1.0, "cfl must be in (0, 1]");
  require(c.dissipation >= 0.0, "dissipation must be >= 0");
  require(c.gradient_cap_factor > 1.0, "gradient_cap_factor must be > 1");
  require(c.t_end >= 0.0, "t_end must be >= 0");
  require(c.t_cap_factor > 0.0, "t_cap_factor must be > 0");
  require(c.snap_every >= 0, "snap_every must be >= 0");
  require(c.snapshots >= 2, "snapshots must be >= 2");
  require(c.tail_fraction > 0.0 && c.tail_fraction <= 1.0, "tail_fraction must be in (0, 1]");
  require(c.min_samples >= 2, "min_samples must be >= 2");
  require(c.front_cells > 0.0, "front_cells must be > 0");
  require(c.grid >= 2, "grid must be >= 2");
  require(c.samples >= 1, "samples must be >= 1");
}

/// Strict reader: unknown keys and wrong types are errors; missing keys keep defaults.
inline RunConfig config_from_json(const json& j, RunConfig c = {}) {
  using detail::get_as;
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "command") c.command = get_as<std::string>(v, key);
    else if (key == "model") c.model = get_as<std::string>(v, key);
    else if (key == "params") {
      if (!v.is_object()) throw ConfigError("config key 'params' must be an object");
      c.params.clear();
      for (const auto& [pk, pv] : v.items()) c.params[pk] = get_as<double>(pv, "params." + pk);
    }
    else if (key == "delta") c.delta = get_as<double>(v, key);
    else if (key == "epsilon") c.epsilon = get_as<double>(v, key);
    else if (key == "kappa") c.kappa = get_as<double>(v, key);
    else if (key == "rescaled") c.rescaled = get_as<bool>(v, key);
    else if (key == "amplitude") c.amplitude = get_as<double>(v, key);
    else if (key == "at") c.at = get_as<std::vector<double>>(v, key);
    else if (key == "eps_list") c.eps_list = get_as<std::vector<double>>(v, key);
    else if (key == "kappa_list") c.kappa_list = get_as<std::vector<double>>(v, key);
    else if (key == "cells") c.cells = get_as<std::vector<int>>(v, key);
    else if (key == "dx") c.dx = get_as<std::vector<double>>(v, key);
    else if (key == "cfl") c.cfl = get_as<double>(v, key);
    else if (key == "dissipation") c.dissipation = get_as<double>(v, key);
    else if (key == "gradient_cap_factor") c.gradient_cap_factor = get_as<double>(v, key);
    else if (key == "t_end") c.t_end = get_as<double>(v, key);
    else if (key == "t_cap_factor") c.t_cap_factor = get_as<double>(v, key);
    else if (key == "snap_every") c.snap_every = get_as<int>(v, key);
    else if (key == "snapshots") c.snapshots = get_as<int>(v, key);
    else if (key == "lab_frame") c.lab_frame = get_as<bool>(v, key);
    else if (key == "tail_fraction") c.tail_fraction = get_as<double>(v, key);
    else if (key == "min_samples") c.min_samples = get_as<int>(v, key);
    else if (key == "front_cells") c.front_cells = get_as<double>(v, key);
    else if (key == "grid") c.grid = get_as<int>(v, key);
    else if (key == "samples") c.samples = get_as<int>(v, key);
    else if (key == "seed") c.seed = get_as<std::uint64_t>(v, key);
    else if (key == "out") c.out = get_as<std::string>(v, key);
    else if (key == "plots") c.plots = get_as<std::string>(v, key);
    else throw ConfigError("unknown config key '" + key + "'");
  }
  return c;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

/// Merge defaults <- file <- command line. A key given in both the file and
/// on the command line must carry the same value.
inline RunConfig resolve_config(const json& file, const json& cli) {
  if (!file.is_null() && !file.is_object()) throw ConfigError("config file must hold a JSON object");
  if (file.is_object()) {
    for (const auto& [key, v] : cli.items()) {
      if (file.contains(key) && file.at(key) != v)
        throw ConfigError("'" + key + "' is set differently in the config file (" +
                          file.at(key).dump() + ") and on the command line (" + v.dump() + ")");
    }
  }
  RunConfig c;
  if (file.is_object()) c = config_from_json(file, c);
  c = config_from_json(cli, c);
  validate(c);
  return c;
}

/// Model with parameters and delta applied.
inline SystemModel resolve_model(const RunConfig& c) {
  SystemModel m = builtin_model(c.model, c.params);
  if (c.delta > 0.0) m = with_delta(std::move(m), c.delta);
  return m;
}

inline std::vector<GridConfig> resolve_ladder(const RunConfig& c) {
  std::vector<GridConfig> ladder;
  auto base = [&] {
    GridConfig g;
    g.cfl = c.cfl;
    g.dissipation = c.dissipation;
    g.gradient_cap_factor = c.gradient_cap_factor;
    g.snap_every = c.snap_every;
    g.target_snapshots = c.snapshots;
    if (c.lab_frame) g.frame_speed = 0.0;
    return g;
  };
  if (!c.dx.empty()) {
    for (double h : c.dx) {
      GridConfig g = base();
      g.target_dx = h;
      ladder.push_back(g);
    }
  } else {
    for (int n : c.cells) {
      GridConfig g = base();
      g.n_cells = n;
      ladder.push_back(g);
    }
  }
  return ladder;
}

inline BlowupOptions resolve_blowup(const RunConfig& c) {
  BlowupOptions o;
  o.tail_fraction = c.tail_fraction;
  o.min_samples = c.min_samples;
  o.front_cells = c.front_cells;
  return o;
}

}  // namespace charblow
