// charblow: command-line front end.

#include <cstdlib>
#include <map>

#include <CLI11.hpp>

#include "charblow/charblow.hpp"

using charblow::json;

namespace {

enum class Kind { Dbl, Int, Str, DblList, IntList, Flag };

struct OptSpec {
  std::string flag;
  std::string key;
  Kind kind;
  std::string help;
};

double parse_double(const std::string& s, const std::string& flag) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw charblow::ConfigError(flag + ": '" + s + "' is not a number");
  return v;
}

long long parse_int(const std::string& s, const std::string& flag) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw charblow::ConfigError(flag + ": '" + s + "' is not an integer");
  return v;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

json convert(const OptSpec& o, const std::string& raw) {
  switch (o.kind) {
    case Kind::Dbl: return parse_double(raw, o.flag);
    case Kind::Int: return parse_int(raw, o.flag);
    case Kind::Str: return raw;
    case Kind::Flag: return true;
    case Kind::DblList: {
      json a = json::array();
      for (const auto& p : split(raw)) a.push_back(parse_double(p, o.flag));
      return a;
    }
    case Kind::IntList: {
      json a = json::array();
      for (const auto& p : split(raw)) a.push_back(parse_int(p, o.flag));
      return a;
    }
  }
  return nullptr;
}

const std::vector<OptSpec> kCommon = {
    {"--model", "model", Kind::Str, "registry model"},
    {"--delta", "delta", Kind::Dbl, "working ball radius (may only shrink the default)"},
    {"--out", "out", Kind::Str, "output path (stdout when omitted)"},
    {"--seed", "seed", Kind::Int, "seed recorded with the run"},
};

const std::vector<OptSpec> kSamples = {
    {"--samples", "samples", Kind::Int, "ball samples for the global bounds"},
    {"--amplitude", "amplitude", Kind::Dbl, "bump amplitude"},
};

const std::vector<OptSpec> kSingle = {
    {"--epsilon", "epsilon", Kind::Dbl, "data amplitude eps"},
    {"--kappa", "kappa", Kind::Dbl, "source strength kappa"},
    {"--rescaled", "rescaled", Kind::Flag, "use the rescaled data (needs kappa > 0)"},
};

const std::vector<OptSpec> kGrid = {
    {"--cells", "cells", Kind::IntList, "grid ladder as cell counts"},
    {"--dx", "dx", Kind::DblList, "grid ladder as spacings (instead of --cells)"},
    {"--cfl", "cfl", Kind::Dbl, "CFL number"},
    {"--dissipation", "dissipation", Kind::Dbl, "sixth-difference dissipation coefficient"},
    {"--cap-factor", "gradient_cap_factor", Kind::Dbl, "gradient cap as a multiple of max|u0'|"},
    {"--t-end", "t_end", Kind::Dbl, "final time (0: automatic)"},
    {"--t-cap-factor", "t_cap_factor", Kind::Dbl, "automatic t_end in simple-wave breaking times"},
    {"--snap-every", "snap_every", Kind::Int, "snapshot every n steps (0: time based)"},
    {"--snapshots", "snapshots", Kind::Int, "target number of time-based snapshots"},
    {"--lab-frame", "lab_frame", Kind::Flag, "keep the grid fixed instead of co-moving"},
    {"--plots", "plots", Kind::Str, "directory for SVG plots"},
};

const std::vector<OptSpec> kEstimate = {
    {"--tail-fraction", "tail_fraction", Kind::Dbl, "fraction of W samples in the 1/W fit"},
    {"--min-samples", "min_samples", Kind::Int, "minimum samples in the 1/W fit"},
    {"--front-cells", "front_cells", Kind::Dbl, "front width in cells at which estimation runs stop"},
};

struct Command {
  CLI::App* app = nullptr;
  std::vector<OptSpec> opts;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> handles;
  std::vector<std::string> params;
  CLI::Option* params_opt = nullptr;
  std::string config_path;
};

void add_opts(Command& c, const std::vector<OptSpec>& specs) {
  for (const auto& o : specs) {
    c.opts.push_back(o);
    if (o.kind == Kind::Flag) {
      c.handles[o.key] = c.app->add_flag(o.flag, o.help);
    } else {
      c.handles[o.key] = c.app->add_option(o.flag, c.values[o.key], o.help);
    }
  }
}

json cli_json(const Command& c, const std::string& name) {
  json j;
  j["command"] = name;
  for (const auto& o : c.opts) {
    const CLI::Option* h = c.handles.at(o.key);
    if (h->count() == 0) continue;
    j[o.key] = convert(o, o.kind == Kind::Flag ? "" : c.values.at(o.key));
  }
  if (c.params_opt && c.params_opt->count() > 0) {
    json p = json::object();
    for (const auto& kv : c.params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw charblow::ConfigError("--param expects key=value, got '" + kv + "'");
      p[kv.substr(0, eq)] = parse_double(kv.substr(eq + 1), "--param");
    }
    j["params"] = p;
  }
  return j;
}

int resolve_jobs(const CLI::Option* opt, int flag_value) {
  if (opt->count() > 0) {
    if (flag_value < 1) throw charblow::ConfigError("--jobs must be >= 1");
    return flag_value;
  }
  if (const char* env = std::getenv("CHARBLOW_JOBS"); env && *env) {
    const long long v = parse_int(env, "CHARBLOW_JOBS");
    if (v < 1) throw charblow::ConfigError("CHARBLOW_JOBS must be >= 1");
    return static_cast<int>(v);
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gradient blow-up laboratory for 1D quasilinear hyperbolic systems"};
  app.require_subcommand(1);
  int jobs_flag = 1;
  CLI::Option* jobs_opt =
      app.add_option("--jobs", jobs_flag, "concurrent scan rows (env CHARBLOW_JOBS)")->capture_default_str();

  std::map<std::string, Command> cmds;
  auto make = [&](const std::string& name, const std::string& help,
                  std::initializer_list<const std::vector<OptSpec>*> groups) {
    Command& c = cmds[name];
    c.app = app.add_subcommand(name, help);
    c.app->fallthrough();
    c.app->add_option("--config", c.config_path, "JSON config file");
    c.params_opt = c.app->add_option("--param", c.params, "model parameter key=value (repeatable)");
    add_opts(c, kCommon);
    for (const auto* g : groups) add_opts(c, *g);
  };
  const std::vector<OptSpec> at{{"--at", "at", Kind::DblList, "state u (comma separated)"}};
  const std::vector<OptSpec> grid{{"--grid", "grid", Kind::Int, "number of sample points"},
                                  {"--plots", "plots", Kind::Str, "directory for SVG plots"}};
  const std::vector<OptSpec> scan{{"--eps", "eps_list", Kind::DblList, "eps values"},
                                  {"--kappa", "kappa_list", Kind::DblList, "kappa values"},
                                  {"--rescaled", "rescaled", Kind::Flag, "rescaled data"}};
  const std::vector<OptSpec> table{{"--eps", "eps_list", Kind::DblList, "eps values"},
                                   {"--kappa", "kappa_list", Kind::DblList, "kappa values"}};

  make("verify", "check hyperbolicity, genuine nonlinearity, g(0) = 0 and the coefficient identities", {});
  make("spectral", "eigen-frame and coefficients at a state", {&at});
  make("constants", "global bounds, constant chain, nu and lifespan bounds", {&kSamples, &table});
  make("data", "sample the simple-wave initial data", {&kSingle, &grid, &kSamples});
  make("simulate", "evolve the data and record snapshots", {&kSingle, &kGrid, &kSamples});
  make("lemma3", "strip functionals J, M, S, V along a simulation", {&kSingle, &kGrid, &kSamples});
  make("lifespan", "eps/kappa lifespan scan", {&scan, &kGrid, &kEstimate, &kSamples});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : charblow::kExitConfig;
  }

  try {
    for (auto& [name, c] : cmds) {
      if (!c.app->parsed()) continue;
      const json cli = cli_json(c, name);
      const json file = c.config_path.empty() ? json() : charblow::read_json_file(c.config_path);
      const charblow::RunConfig cfg = charblow::resolve_config(file, cli);
      return charblow::run(cfg, resolve_jobs(jobs_opt, jobs_flag));
    }
  } catch (const charblow::ConfigError& e) {
    std::cerr << "charblow: " << e.what() << "\n";
    return charblow::kExitConfig;
  }
  return charblow::kExitConfig;
}
