#pragma once

// Command implementations behind the charblow executable.
//
// Exit status: 0 success, 1 validation error, 2 theory gate (assumptions
// structural assumptions fail, orientation inconsistent), 3 numeric failure.

#include <iostream>

#include "charblow/assumptions.hpp"
#include "charblow/io.hpp"
#include "charblow/plot.hpp"

namespace charblow {

enum ExitCode { kExitOk = 0, kExitConfig = 1, kExitTheory = 2, kExitNumeric = 3 };

namespace app {

struct Context {
  RunConfig cfg;
  int jobs = 1;
  std::ostream* out = &std::cout;
  std::ostream* err = &std::cerr;
};

inline json model_json(const SystemModel& m) {
  json params = json::object();
  for (const auto& [k, v] : m.params) params[k] = v;
  return {{"name", m.name}, {"params", params}, {"dim", m.dim}, {"delta", m.delta}, {"p", m.p}};
}

inline json assumptions_json(const AssumptionReport& r) {
  return {{"A1_strict_hyperbolicity", r.a1_ok}, {"A2_genuine_nonlinearity", r.a2_ok},
          {"A3_source_vanishes", r.a3_ok},      {"eigen_separation", num(r.eigen_separation)},
          {"gnl_value", num(r.gnl_value)},      {"g_at_zero_norm", num(r.g_at_zero_norm)},
          {"all_ok", r.all_ok()}};
}

inline json bounds_json(const ModelBounds& b) {
  return {{"c_bar", num(b.c_bar)},         {"gamma_bar", num(b.gamma_bar)},
          {"Gamma_bar", num(b.Gamma_bar)}, {"G_bar", num(b.G_bar)},
          {"r_bar", num(b.r_bar)},         {"c_lambda", num(b.c_lambda)},
          {"lambda1_0", num(b.lambda1_0)}, {"lambdaN_0", num(b.lambdaN_0)},
          {"gamma_ppp_0", num(b.gamma_ppp_0)}, {"delta", num(b.delta)},
          {"samples", b.samples}};
}

inline json chain_json(const ConstantChain& ch) {
  json slacks = json::object();
  for (const auto& [name, s] : ch.slacks(ch.nu)) slacks[name] = num(s);
  return {{"max_dalpha", num(ch.max_dalpha)}, {"dalpha_z", num(ch.dalpha_z)},
          {"T_bar", num(ch.T_bar)},           {"c_J", num(ch.c_J)},
          {"c_V", num(ch.c_V)},               {"c_S", num(ch.c_S)},
          {"c_M", num(ch.c_M)},               {"c_W", num(ch.c_W)},
          {"Q_bar", num(ch.Q_bar)},           {"nu", num(ch.nu)},
          {"binding", ch.binding},            {"slacks_at_nu", slacks}};
}

inline json tensor_json(const Tensor3& t) {
  json a = json::array();
  for (int i = 0; i < t.size(); ++i) {
    json m = json::array();
    for (int j = 0; j < t.size(); ++j) {
      json r = json::array();
      for (int k = 0; k < t.size(); ++k) r.push_back(num(t(i, j, k)));
      m.push_back(r);
    }
    a.push_back(m);
  }
  return a;
}

/// Spectrum of a model that passed the assumption checks; TheoryError otherwise.
inline Spectrum gated_spectrum(const SystemModel& model) {
  const AssumptionReport rep = verify_assumptions(model);
  if (!rep.all_ok()) {
    std::string failed;
    if (!rep.a1_ok) failed += " A1";
    if (!rep.a2_ok) failed += " A2";
    if (!rep.a3_ok) failed += " A3";
    throw TheoryError("model '" + model.name + "' fails assumption(s)" + failed);
  }
  return Spectrum(model);
}

inline void emit(Context& ctx, const std::string& path, const std::string& content) {
  if (path.empty()) {
    *ctx.out << content;
  } else {
    write_atomic(path, content);
  }
}

inline void emit_plot(const Context& ctx, const std::string& name, const plot::Chart& chart) {
  if (ctx.cfg.plots.empty()) return;
  write_atomic((std::filesystem::path(ctx.cfg.plots) / name).string(), plot::render_svg(chart));
}

inline InitialDataSpec make_data(const Spectrum& spectrum, const RunConfig& c) {
  return make_initial_data(spectrum, c.epsilon, c.kappa, c.rescaled, c.amplitude);
}

inline RunSpec run_spec(const RunConfig& c) {
  RunSpec rs;
  rs.epsilon = c.epsilon;
  rs.kappa = c.kappa;
  rs.rescaled = c.rescaled;
  rs.amplitude = c.amplitude;
  rs.t_end = c.t_end;
  rs.t_cap_factor = c.t_cap_factor;
  return rs;
}

//---------------------------------------------------------------------------//

inline int cmd_verify(Context& ctx) {
  const SystemModel model = resolve_model(ctx.cfg);
  const AssumptionReport rep = verify_assumptions(model);
  json j = artifact(ctx.cfg, "assumption_report");
  j["model"] = model_json(model);
  j["assumptions"] = assumptions_json(rep);
  if (rep.all_ok()) {
    const InvariantReport inv = check_invariants(Spectrum(model), 1000);
    j["invariants"] = {{"samples", inv.samples},
                       {"gamma_symmetry", num(inv.gamma_symmetry)},
                       {"gamma_relation", num(inv.gamma_relation)},
                       {"Gamma_relation", num(inv.Gamma_relation)}};
  }
  emit(ctx, ctx.cfg.out, dump(j));
  if (!rep.all_ok()) {
    *ctx.err << "charblow: model '" << model.name << "' fails the assumption gate\n";
    return kExitTheory;
  }
  return kExitOk;
}

inline int cmd_spectral(Context& ctx) {
  const Spectrum spectrum = gated_spectrum(resolve_model(ctx.cfg));
  Vec u = spectrum.model().origin();
  if (!ctx.cfg.at.empty()) {
    if (static_cast<int>(ctx.cfg.at.size()) != spectrum.dim())
      throw ConfigError("--at needs " + std::to_string(spectrum.dim()) + " components");
    for (int i = 0; i < spectrum.dim(); ++i) u[i] = ctx.cfg.at[static_cast<std::size_t>(i)];
  }
  const CoefficientSet cs = coefficients_at(spectrum, u);
  json j = artifact(ctx.cfg, "spectral_frame");
  j["model"] = model_json(spectrum.model());
  j["u"] = vec_json(u);
  j["lambdas"] = vec_json(cs.frame.lambdas);
  j["L"] = mat_json(cs.frame.L);
  j["R"] = mat_json(cs.frame.R);
  j["gram"] = mat_json(cs.frame.gram);
  j["gnl_value_at_origin"] = num(spectrum.gnl_value());
  j["dlambda_r"] = mat_json(cs.dlambda_r);
  j["c"] = tensor_json(cs.c);
  j["gamma"] = tensor_json(cs.gamma);
  j["Gamma"] = tensor_json(cs.Gamma);
  j["G"] = mat_json(cs.G);
  emit(ctx, ctx.cfg.out, dump(j));
  return kExitOk;
}

inline int cmd_constants(Context& ctx) {
  const Spectrum spectrum = gated_spectrum(resolve_model(ctx.cfg));
  const ModelBounds b = model_bounds(spectrum, ctx.cfg.samples);
  const ConstantChain ch = constant_chain(b, standard_bump(ctx.cfg.amplitude));
  json j = artifact(ctx.cfg, "constant_chain");
  j["model"] = model_json(spectrum.model());
  j["bounds"] = bounds_json(b);
  j["chain"] = chain_json(ch);
  json table = json::array();
  for (double k : ctx.cfg.kappa_list)
    for (double e : ctx.cfg.eps_list) {
      const RiccatiResult rr = riccati_lifespan(riccati_params(ch, e, k));
      table.push_back({{"epsilon", e},
                       {"kappa", k},
                       {"T_eps", num(ch.T_eps(e))},
                       {"T_max", num(rr.t_max)},
                       {"T_max_numeric", num(rr.t_numeric)},
                       {"riccati_rel_diff", num(rr.rel_diff)},
                       {"T_bar_kappa", num(ch.T_bar * k)},
                       {"admissible", e <= ch.nu && k <= ch.nu}});
    }
  j["lifespan_bounds"] = table;
  emit(ctx, ctx.cfg.out, dump(j));
  return kExitOk;
}

inline int cmd_data(Context& ctx) {
  const Spectrum spectrum = gated_spectrum(resolve_model(ctx.cfg));
  const InitialDataSpec data = make_data(spectrum, ctx.cfg);
  const int N = spectrum.dim();
  std::vector<std::string> cols{"x"};
  for (int i = 1; i <= N; ++i) cols.push_back("u_" + std::to_string(i));
  for (int i = 1; i <= N; ++i) cols.push_back("w_" + std::to_string(i));
  CsvWriter csv(ctx.cfg, cols);
  const double R = data.support_radius();
  const int n = ctx.cfg.grid;
  std::vector<double> xs, wp;
  for (int k = 0; k < n; ++k) {
    const double x = -R + 2.0 * R * k / (n - 1);
    const Vec u = data.at(x);
    const Vec w = spectrum.frame(u).L * data.derivative_at(x);
    std::vector<std::string> cells{fmt(x)};
    for (int i = 0; i < N; ++i) cells.push_back(fmt(u[i]));
    for (int i = 0; i < N; ++i) cells.push_back(fmt(w[i]));
    csv.row(cells);
    xs.push_back(x);
    wp.push_back(w[spectrum.model().gnl()]);
  }
  emit(ctx, ctx.cfg.out, csv.str());
  emit_plot(ctx, "data_wp.svg", {"initial p-wave", "x", "w_p(0, x)", false, false,
                                 {{"w_p", xs, wp, false}}});
  return kExitOk;
}

struct SingleRun {
  Spectrum spectrum;
  ConstantChain chain;
  InitialDataSpec data;
  Trajectory traj;
  double t_end = 0.0;
  double source_scale = 0.0;
};

inline SingleRun single_run(const RunConfig& c) {
  Spectrum spectrum = gated_spectrum(resolve_model(c));
  const ConstantChain ch = constant_chain(model_bounds(spectrum, c.samples), standard_bump(c.amplitude));
  InitialDataSpec data = make_data(spectrum, c);
  const RunSpec rs = run_spec(c);
  const double t_end = resolved_t_end(rs, ch);
  const double s = resolved_source_scale(rs);
  const GridConfig grid = resolve_ladder(c).back();
  Trajectory tr = run_with_probes(spectrum, data, grid, t_end, s);
  return {std::move(spectrum), ch, std::move(data), std::move(tr), t_end, s};
}

inline json run_json(const Trajectory& tr) {
  return {{"status", to_string(tr.status)},
          {"t_stop", num(tr.t_stop)},
          {"t_end", num(tr.t_end)},
          {"steps", tr.steps},
          {"n_cells", tr.n_cells()},
          {"dx", num(tr.dx)},
          {"x_min", num(tr.x_min())},
          {"x_max", num(tr.x_max())},
          {"frame_speed", num(tr.frame_speed)},
          {"source_scale", num(tr.source_scale)},
          {"gradient_cap", num(tr.gradient_cap)},
          {"initial_max_gradient", num(tr.initial_max_gradient)},
          {"cap_from_resolution", tr.cap_from_resolution},
          {"dissipation", num(tr.dissipation)},
          {"snapshots", tr.snapshots.size()}};
}

inline int cmd_simulate(Context& ctx) {
  const SingleRun run = single_run(ctx.cfg);
  const Spectrum& spectrum = run.spectrum;
  const Trajectory& tr = run.traj;
  const int N = tr.dim;
  const int pp = spectrum.model().gnl();

  json j = artifact(ctx.cfg, "trajectory");
  j["model"] = model_json(spectrum.model());
  j["run"] = run_json(tr);
  json probes = json::array();
  for (const auto& p : tr.probes) {
    std::vector<double> w;
    for (const Vec& wv : probe_waves(spectrum, p)) w.push_back(wv[pp]);
    probes.push_back({{"family", p.family + 1},
                      {"start_x", num(p.start_x)},
                      {"t", num_array(p.t)},
                      {"x", num_array(p.x)},
                      {"w_p", num_array(w)}});
  }
  j["probes"] = probes;
  const std::string csv_path = ctx.cfg.out.empty() ? "" : with_extension(ctx.cfg.out, ".csv");
  j["snapshot_csv"] = csv_path.empty() ? "" : std::filesystem::path(csv_path).filename().string();

  if (!csv_path.empty()) {
    std::vector<std::string> cols{"t", "x"};
    for (int i = 1; i <= N; ++i) cols.push_back("u_" + std::to_string(i));
    CsvWriter csv(ctx.cfg, cols);
    for (const auto& s : tr.snapshots)
      for (int jx = 0; jx < tr.n_cells(); ++jx) {
        std::vector<std::string> cells{fmt(s.t), fmt(tr.x_at(jx, s.t))};
        for (int c = 0; c < N; ++c) cells.push_back(fmt(s.u[static_cast<std::size_t>(jx * N + c)]));
        csv.row(cells);
      }
    write_atomic(csv_path, csv.str());
  }
  emit(ctx, ctx.cfg.out, dump(j));

  const Probe& pk = peak_probe(spectrum, tr, run.data.peak_x());
  const std::vector<double> W = peak_W(spectrum, pk);
  std::vector<double> invW;
  for (double w : W) invW.push_back(w > 0.0 ? 1.0 / w : std::nan(""));
  emit_plot(ctx, "W.svg", {"W(t) on the peak characteristic", "t", "W", false, false,
                           {{"W", pk.t, W, false}}});
  emit_plot(ctx, "inverse_W.svg", {"1/W(t)", "t", "1/W", false, false, {{"1/W", pk.t, invW, false}}});
  return kExitOk;
}

inline int cmd_lemma3(Context& ctx) {
  const SingleRun run = single_run(ctx.cfg);
  const WaveField wf = decompose(run.spectrum, run.traj);
  const ConstantChain& ch = run.chain;
  const Lemma3Report rep =
      lemma3_quantities(run.spectrum, run.traj, wf, Lemma3Bounds{ch.c_J, ch.c_M, ch.c_S, ch.c_V,
                                                                 ctx.cfg.epsilon});
  const std::string csv_path = ctx.cfg.out.empty() ? "" : with_extension(ctx.cfg.out, ".csv");
  json j = artifact(ctx.cfg, "lemma3_report");
  j["model"] = model_json(run.spectrum.model());
  j["run"] = run_json(run.traj);
  j["chain"] = chain_json(ch);
  j["edges_from_probes"] = rep.edges_from_probes;
  j["max"] = {{"J", num(Lemma3Report::last(rep.J))},
              {"M", num(Lemma3Report::last(rep.M))},
              {"S", num(Lemma3Report::last(rep.S))},
              {"V_tilde", num(Lemma3Report::last(rep.V_tilde))},
              {"W_p_out", num(Lemma3Report::last(rep.W_p_out))},
              {"V", num(Lemma3Report::last(rep.V))}};
  const double e = ctx.cfg.epsilon;
  j["bounds"] = {{"J", num(ch.c_J * e)}, {"M", num(ch.c_M * e)}, {"S", num(ch.c_S)},
                 {"V", num(ch.c_V * e * e)}};
  j["ok"] = {{"J", rep.J_ok}, {"M", rep.M_ok}, {"S", rep.S_ok}, {"V", rep.V_ok}};
  j["series_csv"] = csv_path.empty() ? "" : std::filesystem::path(csv_path).filename().string();
  if (!csv_path.empty()) {
    CsvWriter csv(ctx.cfg, {"t", "J", "M", "S", "V_tilde", "W_p_out", "V"});
    for (std::size_t k = 0; k < rep.t.size(); ++k)
      csv.row(rep.t[k], rep.J[k], rep.M[k], rep.S[k], rep.V_tilde[k], rep.W_p_out[k], rep.V[k]);
    write_atomic(csv_path, csv.str());
  }
  emit(ctx, ctx.cfg.out, dump(j));
  emit_plot(ctx, "lemma3.svg",
            {"strip functionals", "t", "value", false, true,
             {{"J", rep.t, rep.J, false},
              {"M", rep.t, rep.M, false},
              {"S", rep.t, rep.S, false},
              {"V~", rep.t, rep.V_tilde, false},
              {"W_p out", rep.t, rep.W_p_out, false},
              {"V", rep.t, rep.V, false}}});
  return kExitOk;
}

inline std::vector<std::string> scan_columns() {
  return {"epsilon",   "kappa",          "status",           "t_star",
          "ci_width",  "method",         "level_t_star",     "T_eps",
          "T_max",     "satisfied",      "outside_theory",   "J_max",
          "M_max",     "S_max",          "V_max",            "lemma3_ok",
          "comparison_ok", "comparison_margin", "W_growth_ok", "V_domination_ok",
          "cone_violations", "min_edge_gap", "error"};
}

inline std::vector<std::string> scan_cells(const ScanRow& r) {
  std::string levels;
  for (const auto& l : r.estimate.levels) {
    if (!levels.empty()) levels += ";";
    levels += fmt(l.fit.t_zero);
  }
  auto b = [](bool v) { return std::string(v ? "1" : "0"); };
  std::string err = r.error;
  for (char& ch : err)
    if (ch == ',' || ch == '\n' || ch == '"') ch = ' ';
  return {fmt(r.epsilon),        fmt(r.kappa),         r.status,
          fmt(r.t_star),         fmt(r.estimate.ci_width), r.estimate.method,
          levels,                fmt(r.T_eps),         fmt(r.T_max),
          b(r.satisfied),        b(r.outside_theory),  fmt(r.J_max),
          fmt(r.M_max),          fmt(r.S_max),         fmt(r.V_max),
          b(r.lemma3_ok),        b(r.comparison_ok),   fmt(r.comparison_margin),
          b(r.W_growth_ok),      b(r.V_domination_ok), std::to_string(r.cone_violations),
          fmt(r.min_edge_gap),   err};
}

inline int cmd_lifespan(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const Spectrum spectrum = gated_spectrum(resolve_model(c));
  const ConstantChain ch = constant_chain(model_bounds(spectrum, c.samples), standard_bump(c.amplitude));
  ScanOptions opt;
  opt.ladder = resolve_ladder(c);
  opt.t_cap_factor = c.t_cap_factor;
  opt.rescaled = c.rescaled;
  opt.amplitude = c.amplitude;
  opt.jobs = ctx.jobs;
  opt.blowup = resolve_blowup(c);
  const ScanSummary sum = scaling_scan(spectrum, ch, c.eps_list, c.kappa_list, opt);

  CsvWriter csv(c, scan_columns());
  for (const auto& r : sum.rows) csv.row(scan_cells(r));

  json j = artifact(c, "lifespan_scan");
  j["model"] = model_json(spectrum.model());
  j["bounds"] = bounds_json(ch.bounds);
  j["chain"] = chain_json(ch);
  json slopes = json::array();
  for (double k : c.kappa_list)
    slopes.push_back({{"kappa", k},
                      {"t_star", num(sum.slope_t_star.at(k))},
                      {"J", num(sum.slope_J.at(k))},
                      {"M", num(sum.slope_M.at(k))},
                      {"V", num(sum.slope_V.at(k))}});
  j["slopes"] = slopes;
  j["rows"] = sum.rows.size();
  j["satisfied"] = sum.satisfied;
  j["admissible"] = sum.admissible;
  j["failures"] = sum.failures;
  const std::string json_path = c.out.empty() ? "" : with_extension(c.out, ".json");
  j["table_csv"] = c.out.empty() ? "" : std::filesystem::path(c.out).filename().string();

  emit(ctx, c.out, csv.str());
  if (!json_path.empty()) write_atomic(json_path, dump(j));

  if (!c.plots.empty()) {
    plot::Chart chart{"lifespan scaling", "epsilon", "t*", true, true, {}};
    for (double k : c.kappa_list) {
      std::vector<double> e, t, te;
      for (const auto& r : sum.rows)
        if (r.kappa == k) {
          e.push_back(r.epsilon);
          t.push_back(r.t_star);
          te.push_back(r.T_eps);
        }
      chart.series.push_back({"t* (kappa=" + fmt(k) + ")", e, t, true});
      chart.series.push_back({"T_eps", e, te, false});
    }
    emit_plot(ctx, "lifespan_scaling.svg", chart);
  }
  if (!sum.rows.empty() && sum.failures == static_cast<int>(sum.rows.size())) {
    *ctx.err << "charblow: every scan row failed; first error: " << sum.rows.front().error << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace app

/// Dispatch a resolved config; errors are mapped to exit statuses and
/// reported on ctx.err.
inline int run(const RunConfig& cfg, int jobs = 1, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  app::Context ctx{cfg, std::max(1, jobs), &out, &err};
  try {
    validate(cfg);
    if (cfg.command == "verify") return app::cmd_verify(ctx);
    if (cfg.command == "spectral") return app::cmd_spectral(ctx);
    if (cfg.command == "constants") return app::cmd_constants(ctx);
    if (cfg.command == "data") return app::cmd_data(ctx);
    if (cfg.command == "simulate") return app::cmd_simulate(ctx);
    if (cfg.command == "lemma3") return app::cmd_lemma3(ctx);
    if (cfg.command == "lifespan") return app::cmd_lifespan(ctx);
    throw ConfigError("unknown command '" + cfg.command + "'");
  } catch (const ConfigError& e) {
    err << "charblow: " << e.what() << "\n";
    return kExitConfig;
  } catch (const TheoryError& e) {
    err << "charblow: " << e.what() << "\n";
    return kExitTheory;
  } catch (const NumericError& e) {
    err << "charblow: numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "charblow: numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace charblow
