#pragma once

// Constant chain and admissibility radius nu, the Riccati comparison
// lifespan, blow-up time estimation from simulations and eps/kappa scans.

#include <atomic>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "charblow/characteristics.hpp"

namespace charblow {

//---------------------------------------------------------------------------//
// Constant chain.
//---------------------------------------------------------------------------//

struct ConstantChain {
  ModelBounds bounds;
  double max_dalpha = 0.0;
  double dalpha_z = 0.0;  // alpha'(z) at the argmax z
  double T_bar = 0.0;
  double c_J = 0.0, c_V = 0.0, c_S = 0.0, c_M = 0.0;
  double c_W = 0.0;
  double Q_bar = 0.0;
  double nu = 0.0;
  std::string binding;  // condition limiting nu ("" if nu = 1)

  [[nodiscard]] double inv_c_lambda() const {
    return std::isinf(bounds.c_lambda) ? 0.0 : 1.0 / bounds.c_lambda;
  }
  [[nodiscard]] double T_eps(double eps) const { return 0.75 * T_bar / eps; }

  [[nodiscard]] double Q(double eps, double kappa) const {
    const auto& b = bounds;
    const double icl = inv_c_lambda();
    return 3.0 * T_bar * (b.gamma_bar * c_V * eps + b.G_bar * kappa) +
           b.gamma_bar * eps * icl *
               (c_J + T_bar * (b.Gamma_bar * c_V * eps + b.G_bar * kappa) * (c_V * c_S * eps + c_J)) +
           b.G_bar * kappa * icl * T_bar * eps *
               (b.Gamma_bar * (c_V * c_S * eps + c_J) + b.G_bar * c_S * kappa);
  }

  /// eps * T_max(eps, kappa); independent of eps. +inf when y does not blow up.
  [[nodiscard]] double scaled_riccati_lifespan(double kappa) const {
    const double a = 0.375 * bounds.gamma_ppp_0 * dalpha_z;
    const double b = 2.0 * kappa * bounds.G_bar;
    if (b == 0.0) return 1.0 / a;
    if (!(a > b)) return kInf;
    return -std::log1p(-b / a) / b;
  }

  /// Slack of each condition at nu (positive or zero where required = holds).
  [[nodiscard]] std::vector<std::pair<std::string, double>> slacks(double nu_) const {
    const auto& b = bounds;
    const double g = b.gamma_ppp_0;
    const double az = dalpha_z;
    std::vector<std::pair<std::string, double>> s;
    s.emplace_back("cond1", b.delta - c_M * nu_);
    s.emplace_back("cond2", 1.0 - b.c_bar * T_bar * c_V * nu_ - 2.0 / 3.0);
    s.emplace_back("cond3", c_J / 8.0 - nu_ * nu_ * (b.Gamma_bar * c_V * c_V * c_S * T_bar +
                                                     b.G_bar * c_V * c_S * T_bar));
    s.emplace_back("cond4", 1.0 - nu_ * (b.Gamma_bar * c_V * T_bar + b.G_bar * T_bar) - 5.0 / 6.0);
    s.emplace_back("cond5", 1.0 - nu_ * Q_bar - 0.75);
    s.emplace_back("cond7", 0.5 * g - 2.0 * b.gamma_bar * c_W * nu_ - 0.375 * g);
    s.emplace_back("cond8", 2.0 - (nu_ * c_W + 1.0));
    s.emplace_back("cond9", (3.0 / 16.0) * g * az - 2.0 * nu_ * b.G_bar - 0.125 * g * az);
    s.emplace_back("cond10", 3.0 / (g * az) - scaled_riccati_lifespan(nu_));
    return s;
  }

  /// Strict conditions (cond1, 7, 8, 9, 10) need slack > 0, the others >= 0.
  [[nodiscard]] static bool holds(const std::string& name, double slack) {
    static const std::vector<std::string> strict = {"cond1", "cond7", "cond8", "cond9", "cond10"};
    const bool is_strict = std::find(strict.begin(), strict.end(), name) != strict.end();
    return is_strict ? slack > 0.0 : slack >= 0.0;
  }

  [[nodiscard]] std::string first_violated(double nu_) const {
    for (const auto& [name, sl] : slacks(nu_))
      if (!holds(name, sl)) return name;
    return "";
  }
};

inline ConstantChain constant_chain(const ModelBounds& bounds, const BumpProfile& bump) {
  if (!(bounds.gamma_ppp_0 > 0.0))
    throw TheoryError("gamma_ppp(0) must be positive; the frame orientation is inconsistent");
  ConstantChain ch;
  ch.bounds = bounds;
  ch.max_dalpha = bump.max_dalpha();
  ch.dalpha_z = bump.derivative(bump.argmax_z());
  if (!(ch.max_dalpha > 0.0)) throw ConfigError("max alpha' must be positive");
  const auto& b = bounds;
  ch.T_bar = 4.0 / (b.gamma_ppp_0 * ch.max_dalpha);
  ch.c_J = 2.0 * ch.max_dalpha;
  ch.c_V = 2.0 * b.G_bar * ch.inv_c_lambda() * ch.c_J * (1.0 + b.G_bar * ch.T_bar);
  ch.c_S = 2.0 * b.c_bar * (1.0 + ch.c_J * ch.T_bar);
  ch.c_M = 2.0 * b.r_bar *
           (ch.c_J + ch.c_V * (1.0 + ch.T_bar * (b.lambdaN_0 - b.lambda1_0)));
  ch.c_W = 2.0 * ch.c_V / ch.dalpha_z;
  ch.Q_bar = ch.Q(1.0, 1.0);

  // All conditions are monotone in nu; bisect for the largest feasible value.
  constexpr double kTol = 1e-10;
  if (ch.first_violated(1.0).empty()) {
    ch.nu = 1.0;
    return ch;
  }
  ch.binding = ch.first_violated(1.0);
  double lo = 0.0, hi = 1.0;
  if (!ch.first_violated(kTol).empty()) {
    ch.nu = 0.0;
    ch.binding = ch.first_violated(kTol);
    return ch;
  }
  lo = kTol;
  while (hi - lo > kTol) {
    const double mid = 0.5 * (lo + hi);
    const std::string v = ch.first_violated(mid);
    if (v.empty()) {
      lo = mid;
    } else {
      hi = mid;
      ch.binding = v;
    }
  }
  ch.nu = lo;
  return ch;
}

//---------------------------------------------------------------------------//
// Riccati comparison y' = a y^2 - b y.
//---------------------------------------------------------------------------//

struct RiccatiParams {
  double a_coef = 0.0;
  double b_coef = 0.0;
  double y0 = 0.0;
};

inline RiccatiParams riccati_params(const ConstantChain& ch, double eps, double kappa) {
  return {0.375 * ch.bounds.gamma_ppp_0, 2.0 * eps * kappa * ch.bounds.G_bar, eps * ch.dalpha_z};
}

/// Closed-form lifespan; +inf when a y0 <= b (no blow-up).
inline double riccati_closed_form(const RiccatiParams& p) {
  if (!(p.a_coef > 0.0)) throw TheoryError("Riccati coefficient a must be positive");
  if (!std::isfinite(p.b_coef) || !std::isfinite(p.y0)) throw ConfigError("non-finite Riccati data");
  const double ay = p.a_coef * p.y0;
  if (p.b_coef == 0.0) return ay > 0.0 ? 1.0 / ay : kInf;
  if (!(ay > p.b_coef)) return kInf;
  return -std::log1p(-p.b_coef / ay) / p.b_coef;
}

/// y(t) from 1/y = a/b + (1/y0 - a/b) e^{bt} (or 1/y0 - a t when b = 0).
inline double riccati_y(const RiccatiParams& p, double t) {
  double inv;
  if (p.b_coef == 0.0) {
    inv = 1.0 / p.y0 - p.a_coef * t;
  } else {
    const double r = p.a_coef / p.b_coef;
    inv = r + (1.0 / p.y0 - r) * std::exp(p.b_coef * t);
  }
  return inv > 0.0 ? 1.0 / inv : kInf;
}

/// Adaptive integration of v = 1/y, v' = b v - a, located zero of v.
inline double riccati_numeric(const RiccatiParams& p, double horizon) {
  using S1 = Eigen::Matrix<double, 1, 1>;
  auto f = [&](double, const S1& v) { return S1(p.b_coef * v[0] - p.a_coef); };
  std::function<double(double, const S1&)> ev = [](double, const S1& v) { return v[0]; };
  ode::Options opt;
  opt.rtol = 1e-13;
  opt.atol = 1e-15;
  const auto res = ode::integrate<S1>(f, 0.0, S1(1.0 / p.y0), horizon, opt, ev);
  return res.event ? res.t : kInf;
}

struct RiccatiResult {
  bool blows_up = false;
  double t_max = kInf;
  double t_numeric = kInf;
  double rel_diff = 0.0;
};

inline RiccatiResult riccati_lifespan(const RiccatiParams& p) {
  RiccatiResult r;
  r.t_max = riccati_closed_form(p);
  r.blows_up = std::isfinite(r.t_max);
  if (r.blows_up) {
    r.t_numeric = riccati_numeric(p, 2.0 * r.t_max);
    r.rel_diff = std::abs(r.t_numeric - r.t_max) / r.t_max;
    if (!(r.rel_diff < 1e-6))
      throw NumericError("closed-form and numeric Riccati lifespans disagree");
  }
  return r;
}

//---------------------------------------------------------------------------//
// Blow-up estimation.
//---------------------------------------------------------------------------//

struct TailFit {
  bool ok = false;
  double t_zero = kInf;
  double slope = 0.0;
  double intercept = 0.0;
  int n_used = 0;
};

/// Least-squares line through 1/W over the last `fraction` of the samples
/// (at least `min_samples`), extrapolated to its zero.
inline TailFit fit_inverse_tail(const std::vector<double>& t, const std::vector<double>& W,
                                double fraction = 0.3, int min_samples = 20) {
  TailFit fit;
  const int n = static_cast<int>(std::min(t.size(), W.size()));
  const int m = std::min(n, std::max(min_samples, static_cast<int>(std::ceil(fraction * n))));
  if (m < 2 || m < std::min(min_samples, n) || n < min_samples) return fit;
  double st = 0, sy = 0, stt = 0, sty = 0;
  int used = 0;
  for (int k = n - m; k < n; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    if (!(W[kk] > 0.0)) continue;
    const double y = 1.0 / W[kk];
    st += t[kk];
    sy += y;
    stt += t[kk] * t[kk];
    sty += t[kk] * y;
    ++used;
  }
  if (used < 2) return fit;
  const double den = used * stt - st * st;
  if (den == 0.0) return fit;
  fit.slope = (used * sty - st * sy) / den;
  fit.intercept = (sy - fit.slope * st) / used;
  fit.n_used = used;
  if (fit.slope < 0.0) {
    fit.t_zero = -fit.intercept / fit.slope;
    fit.ok = true;
  }
  return fit;
}

struct BlowupOptions {
  double tail_fraction = 0.3;
  int min_samples = 20;
  /// Estimation runs stop once the steepest front is about `front_cells`
  /// cells wide on the coarsest level (cap factor clamped to the range below);
  /// a level with an explicit gradient cap keeps it.
  double front_cells = 10.0;
  double min_cap_factor = 2.0;
  double max_cap_factor = 50.0;
};

/// Width scale max|u0| / max|u0'| of the data.
inline double data_width(const InitialDataSpec& data) {
  const double R = data.support_radius();
  double umax = 0.0, dmax = 0.0;
  constexpr int kSamples = 4001;
  for (int k = 0; k < kSamples; ++k) {
    const double x = -R + 2.0 * R * k / (kSamples - 1);
    umax = std::max(umax, data.at(x).norm());
    dmax = std::max(dmax, data.derivative_at(x).norm());
  }
  return dmax > 0.0 ? umax / dmax : kInf;
}

/// Spacing of a level: explicit target_dx, else the cone window over n_cells.
inline double level_dx(const Spectrum& spectrum, const InitialDataSpec& data,
                       const GridConfig& g, double t_end) {
  if (g.target_dx > 0.0) return g.target_dx;
  double lo = g.x_min, hi = g.x_max;
  if (std::isnan(lo) || std::isnan(hi)) {
    const double sigma = std::isnan(g.frame_speed)
                             ? spectrum.origin_frame().lambdas[spectrum.model().gnl()]
                             : g.frame_speed;
    std::tie(lo, hi) = cone_window(spectrum, data.support_radius(), t_end, g.window_slack, sigma);
  }
  return (hi - lo) / g.n_cells;
}

/// Ladder with the resolution-aware cap applied to levels without an explicit cap.
inline std::vector<GridConfig> estimation_ladder(const Spectrum& spectrum,
                                                 const InitialDataSpec& data,
                                                 std::vector<GridConfig> ladder, double t_end,
                                                 const BlowupOptions& opt) {
  double dx_coarse = 0.0;
  for (const auto& g : ladder) dx_coarse = std::max(dx_coarse, level_dx(spectrum, data, g, t_end));
  const double k = std::clamp(data_width(data) / (opt.front_cells * dx_coarse),
                              opt.min_cap_factor, opt.max_cap_factor);
  for (auto& g : ladder)
    if (g.gradient_cap <= 0.0) g.gradient_cap_factor = k;
  return ladder;
}

struct LevelEstimate {
  int n_cells = 0;
  double dx = 0.0;
  RunStatus status = RunStatus::completed;
  double t_stop = 0.0;
  TailFit fit;
};

struct BlowupEstimate {
  bool blowup = false;
  double t_star = kInf;
  double ci_width = kInf;
  std::string method = "inverse-fit";
  std::vector<LevelEstimate> levels;
  double T_eps = kInf;
  double T_max = kInf;
  bool below_T_eps = false;
  bool below_T_max = false;
};

/// W(t) = w_p along the probe started at the data's steepest point.
inline const Probe& peak_probe(const Spectrum& spectrum, const Trajectory& tr, double peak_x) {
  for (const auto& p : tr.probes)
    if (p.family == spectrum.model().gnl() && p.start_x == peak_x) return p;
  throw ConfigError("trajectory has no probe at the peak characteristic");
}

inline std::vector<double> peak_W(const Spectrum& spectrum, const Probe& p) {
  std::vector<double> W;
  W.reserve(p.t.size());
  const int pp = spectrum.model().gnl();
  for (const Vec& w : probe_waves(spectrum, p)) W.push_back(w[pp]);
  return W;
}

inline LevelEstimate level_estimate(const Spectrum& spectrum, const Trajectory& tr, double peak_x,
                                    const BlowupOptions& opt) {
  LevelEstimate le;
  le.n_cells = tr.n_cells();
  le.dx = tr.dx;
  le.status = tr.status;
  le.t_stop = tr.t_stop;
  if (tr.status != RunStatus::gradient_blowup) return le;
  const Probe& p = peak_probe(spectrum, tr, peak_x);
  le.fit = fit_inverse_tail(p.t, peak_W(spectrum, p), opt.tail_fraction, opt.min_samples);
  return le;
}

/// Combine per-level fits: Richardson extrapolation (fourth order) of the two
/// finest levels, spread between them as the interval width.
inline BlowupEstimate combine_levels(std::vector<LevelEstimate> levels) {
  BlowupEstimate est;
  est.levels = std::move(levels);
  std::vector<const LevelEstimate*> good;
  for (const auto& l : est.levels)
    if (l.status == RunStatus::gradient_blowup && l.fit.ok) good.push_back(&l);
  if (good.empty()) {
    est.method = "none";
    return est;
  }
  est.blowup = true;
  std::sort(good.begin(), good.end(), [](auto* a, auto* b) { return a->dx > b->dx; });
  if (good.size() == 1) {
    est.t_star = good[0]->fit.t_zero;
    est.method = "inverse-fit";
    return est;
  }
  const double tc = good[good.size() - 2]->fit.t_zero;
  const double tf = good.back()->fit.t_zero;
  const double ratio = good[good.size() - 2]->dx / good.back()->dx;
  const double r4 = std::pow(ratio, 4.0);
  est.t_star = tf + (tf - tc) / (r4 - 1.0);
  est.ci_width = std::abs(tf - tc);
  est.method = "richardson";
  return est;
}

inline void attach_bounds(BlowupEstimate& est, const ConstantChain& ch, double eps, double kappa) {
  est.T_eps = ch.T_eps(eps);
  est.T_max = riccati_lifespan(riccati_params(ch, eps, kappa)).t_max;
  est.below_T_eps = est.blowup && est.t_star < est.T_eps;
  est.below_T_max = est.blowup && est.t_star < est.T_max;
}

/// Leading-order lifespan 1/(gamma_ppp(0) eps alpha'(z)) of the unforced simple wave.
inline double simple_wave_time(const ConstantChain& ch, double eps) {
  return 1.0 / (ch.bounds.gamma_ppp_0 * eps * ch.dalpha_z);
}

struct RunSpec {
  double epsilon = 0.05;
  double kappa = 0.0;
  bool rescaled = false;
  double amplitude = 1.0;
  double t_end = 0.0;  // 0: t_cap_factor * simple-wave time
  double t_cap_factor = 1.5;
  /// Source scale; NaN selects eps * kappa (or 1 for rescaled data).
  double source_scale = std::numeric_limits<double>::quiet_NaN();
};

inline double resolved_source_scale(const RunSpec& rs) {
  if (!std::isnan(rs.source_scale)) return rs.source_scale;
  return rs.rescaled ? 1.0 : rs.epsilon * rs.kappa;
}

inline double resolved_t_end(const RunSpec& rs, const ConstantChain& ch) {
  if (rs.t_end > 0.0) return rs.t_end;
  double t = rs.t_cap_factor * simple_wave_time(ch, rs.epsilon);
  if (rs.rescaled) t *= rs.epsilon * rs.kappa;
  return t;
}

/// Simulation with the probes used downstream: peak characteristic and strip edges.
inline Trajectory run_with_probes(const Spectrum& spectrum, const InitialDataSpec& data,
                                  const GridConfig& grid, double t_end, double source_scale) {
  const int pp = spectrum.model().gnl();
  std::vector<ProbeRequest> probes = {{pp, data.peak_x()},
                                      {pp, -data.support_radius()},
                                      {pp, data.support_radius()}};
  return simulate(spectrum, data, grid, t_end, source_scale, probes);
}

/// Estimate T* on a ladder of grids (each entry overrides n_cells / target_dx).
inline BlowupEstimate estimate_blowup(const Spectrum& spectrum, const InitialDataSpec& data,
                                      const std::vector<GridConfig>& ladder, double t_end,
                                      double source_scale, const BlowupOptions& opt = {}) {
  if (ladder.empty()) throw ConfigError("grid ladder is empty");
  std::vector<LevelEstimate> levels;
  for (const auto& g : estimation_ladder(spectrum, data, ladder, t_end, opt)) {
    const Trajectory tr = run_with_probes(spectrum, data, g, t_end, source_scale);
    levels.push_back(level_estimate(spectrum, tr, data.peak_x(), opt));
  }
  return combine_levels(std::move(levels));
}

//---------------------------------------------------------------------------//
// Scans.
//---------------------------------------------------------------------------//

struct ScanOptions {
  std::vector<GridConfig> ladder;
  double t_cap_factor = 1.5;
  bool rescaled = false;
  double amplitude = 1.0;
  int jobs = 1;
  BlowupOptions blowup;
  /// Numerical support is {|u| > support_threshold * max|u0|}.
  double support_threshold = 1e-6;
  /// Relative tolerance of the W >= y comparison.
  double comparison_tol = 1e-3;
};

struct ScanRow {
  double epsilon = 0.0;
  double kappa = 0.0;
  std::string status;
  std::string error;
  BlowupEstimate estimate;
  double t_star = kInf;
  double T_eps = kInf;
  double T_max = kInf;
  bool satisfied = false;
  bool outside_theory = false;
  double J_max = 0.0, M_max = 0.0, S_max = 0.0, V_max = 0.0;
  bool lemma3_ok = false;
  bool comparison_ok = false;     // W >= y until y blows up or the run stops
  double comparison_margin = 0.0; // min (W - y) / y
  bool W_growth_ok = false;       // W > W(0)/2 and nondecreasing
  bool V_domination_ok = false;   // V < eps c_W W
  int cone_violations = 0;
  double min_edge_gap = kInf;     // non-crossing of p-characteristics
};

struct ScanSummary {
  std::vector<ScanRow> rows;
  std::map<double, double> slope_t_star;  // per kappa
  std::map<double, double> slope_J, slope_M, slope_V;
  int satisfied = 0;
  int admissible = 0;
  int failures = 0;
};

inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k] > 0.0 && y[k] > 0.0 && std::isfinite(y[k])) {
      lx.push_back(std::log(x[k]));
      ly.push_back(std::log(y[k]));
    }
  const std::size_t n = lx.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < n; ++k) {
    sxy += (lx[k] - mx) * (ly[k] - my);
    sxx += (lx[k] - mx) * (lx[k] - mx);
  }
  return sxy / sxx;
}

/// max_j |u(0, x_j)|.
inline double initial_amplitude(const Trajectory& tr) {
  double m = 0.0;
  if (tr.snapshots.empty()) return m;
  for (int j = 0; j < tr.n_cells(); ++j) m = std::max(m, tr.state(tr.snapshots.front(), j).norm());
  return m;
}

/// One (eps, kappa) row: ladder of simulations, strip functionals and the
/// comparison checks on the finest level.
inline ScanRow scan_row(const Spectrum& spectrum, const ConstantChain& ch,
                        const IntegralCurve& curve, double eps, double kappa,
                        const ScanOptions& opt) {
  ScanRow row;
  row.epsilon = eps;
  row.kappa = kappa;
  row.outside_theory = eps > ch.nu || kappa > ch.nu;
  try {
    RunSpec rs;
    rs.epsilon = eps;
    rs.kappa = kappa;
    rs.rescaled = opt.rescaled;
    rs.amplitude = opt.amplitude;
    rs.t_cap_factor = opt.t_cap_factor;
    const InitialDataSpec data(eps, kappa, opt.rescaled, BumpProfile(opt.amplitude), curve);
    const double s = resolved_source_scale(rs);
    const double t_end = resolved_t_end(rs, ch);
    std::vector<LevelEstimate> levels;
    Trajectory finest;
    const auto ladder = estimation_ladder(spectrum, data, opt.ladder, t_end, opt.blowup);
    for (std::size_t l = 0; l < ladder.size(); ++l) {
      Trajectory tr = run_with_probes(spectrum, data, ladder[l], t_end, s);
      levels.push_back(level_estimate(spectrum, tr, data.peak_x(), opt.blowup));
      row.cone_violations += count_cone_violations(
          support_bounds(tr, opt.support_threshold * initial_amplitude(tr)));
      if (l + 1 == ladder.size()) finest = std::move(tr);
    }
    row.estimate = combine_levels(std::move(levels));
    if (!opt.rescaled) attach_bounds(row.estimate, ch, eps, kappa);
    row.t_star = row.estimate.t_star;
    row.T_eps = ch.T_eps(eps);
    row.T_max = riccati_lifespan(riccati_params(ch, eps, kappa)).t_max;
    if (opt.rescaled) {
      // Corollary form: T* < T_bar kappa.
      row.T_eps = ch.T_bar * kappa;
      row.T_max = kInf;
    }
    row.satisfied = row.estimate.blowup && row.t_star < row.T_eps;
    row.status = to_string(finest.status);

    const WaveField wf = decompose(spectrum, finest);
    Lemma3Bounds lb{ch.c_J, ch.c_M, ch.c_S, ch.c_V, eps};
    const Lemma3Report rep = lemma3_quantities(spectrum, finest, wf, lb);
    row.J_max = Lemma3Report::last(rep.J);
    row.M_max = Lemma3Report::last(rep.M);
    row.S_max = Lemma3Report::last(rep.S);
    row.V_max = Lemma3Report::last(rep.V);
    row.lemma3_ok = rep.J_ok && rep.M_ok && rep.S_ok && rep.V_ok;

    const Probe& pk = peak_probe(spectrum, finest, data.peak_x());
    const std::vector<double> W = peak_W(spectrum, pk);
    const RiccatiParams rp = riccati_params(ch, eps, kappa);
    row.comparison_ok = true;
    row.comparison_margin = kInf;
    row.W_growth_ok = true;
    row.V_domination_ok = true;
    double wmax = -kInf;
    for (std::size_t k = 0; k < W.size(); ++k) {
      const double tk = pk.t[k];
      if (!opt.rescaled) {
        const double y = riccati_y(rp, tk);
        if (std::isfinite(y)) {
          const double margin = (W[k] - y) / y;
          row.comparison_margin = std::min(row.comparison_margin, margin);
          if (margin < -opt.comparison_tol) row.comparison_ok = false;
        }
      }
      if (!(W[k] > 0.5 * W[0])) row.W_growth_ok = false;
      if (W[k] < wmax * (1.0 - 1e-6)) row.W_growth_ok = false;
      wmax = std::max(wmax, W[k]);
    }
    // V at snapshot times against eps c_W W(t).
    for (std::size_t k = 0; k < rep.t.size(); ++k) {
      const auto it = std::lower_bound(pk.t.begin(), pk.t.end(), rep.t[k]);
      if (it == pk.t.end()) continue;
      const double Wk = W[static_cast<std::size_t>(it - pk.t.begin())];
      const bool both_zero = rep.V[k] == 0.0 && ch.c_W == 0.0;
      if (!(rep.V[k] < eps * ch.c_W * Wk) && !both_zero) row.V_domination_ok = false;
    }
    std::vector<const Probe*> ps;
    for (const auto& p : finest.probes) ps.push_back(&p);
    row.min_edge_gap = min_probe_gap(ps);
  } catch (const std::exception& e) {
    row.status = "error";
    row.error = e.what();
  }
  return row;
}

/// Rows run concurrently on `jobs` workers and are stored in (kappa, eps) order.
inline ScanSummary scaling_scan(const Spectrum& spectrum, const ConstantChain& ch,
                                const std::vector<double>& eps_list,
                                const std::vector<double>& kappa_list, const ScanOptions& opt) {
  if (opt.ladder.empty()) throw ConfigError("grid ladder is empty");
  const IntegralCurve curve = integral_curve(spectrum);
  std::vector<std::pair<double, double>> tasks;
  for (double k : kappa_list)
    for (double e : eps_list) tasks.emplace_back(e, k);
  ScanSummary sum;
  sum.rows.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++)
      sum.rows[i] = scan_row(spectrum, ch, curve, tasks[i].first, tasks[i].second, opt);
  };
  const int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(tasks.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (double k : kappa_list) {
    std::vector<double> e, ts, J, M, V;
    for (const auto& r : sum.rows) {
      if (r.kappa != k || !r.error.empty()) continue;
      e.push_back(r.epsilon);
      ts.push_back(r.t_star);
      J.push_back(r.J_max);
      M.push_back(r.M_max);
      V.push_back(r.V_max);
    }
    sum.slope_t_star[k] = loglog_slope(e, ts);
    sum.slope_J[k] = loglog_slope(e, J);
    sum.slope_M[k] = loglog_slope(e, M);
    sum.slope_V[k] = loglog_slope(e, V);
  }
  for (const auto& r : sum.rows) {
    if (r.satisfied) ++sum.satisfied;
    if (!r.outside_theory) ++sum.admissible;
    if (!r.error.empty()) ++sum.failures;
  }
  return sum;
}

}  // namespace charblow
