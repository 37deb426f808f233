#pragma once

// Wave components w_i = l_i(u) u_x, characteristic tracing through a stored
// trajectory, the transport-equation residual along a trace and the
// smallness functionals J, M, S, V~, W_p^out, V.

#include <algorithm>
#include <vector>

#include "charblow/coefficients.hpp"
#include "charblow/evolve.hpp"

namespace charblow {

/// Per snapshot: ux[k][j * N + c] and w[k][j * N + i].
struct WaveField {
  int dim = 1;
  std::vector<double> t;
  std::vector<std::vector<double>> ux;
  std::vector<std::vector<double>> w;
};

/// Fourth-order centred x-derivative of one snapshot, zero beyond the window.
inline std::vector<double> snapshot_derivative(const Trajectory& tr, const Snapshot& s) {
  const int n = tr.n_cells();
  const int N = tr.dim;
  std::vector<double> d(static_cast<std::size_t>(n * N));
  auto at = [&](int j, int c) {
    return (j < 0 || j >= n) ? 0.0 : s.u[static_cast<std::size_t>(j * N + c)];
  };
  const double inv = 1.0 / (12.0 * tr.dx);
  for (int j = 0; j < n; ++j)
    for (int c = 0; c < N; ++c)
      d[static_cast<std::size_t>(j * N + c)] =
          (-at(j + 2, c) + 8.0 * at(j + 1, c) - 8.0 * at(j - 1, c) + at(j - 2, c)) * inv;
  return d;
}

inline WaveField decompose(const Spectrum& spectrum, const Trajectory& tr) {
  const int n = tr.n_cells();
  const int N = tr.dim;
  WaveField wf;
  wf.dim = N;
  const SpectralFrame& f0 = spectrum.origin_frame();
  for (const auto& s : tr.snapshots) {
    wf.t.push_back(s.t);
    std::vector<double> d = snapshot_derivative(tr, s);
    std::vector<double> w(d.size(), 0.0);
    Vec u(N), ux(N);
    for (int j = 0; j < n; ++j) {
      bool zero = true;
      for (int c = 0; c < N; ++c) {
        u[c] = s.u[static_cast<std::size_t>(j * N + c)];
        ux[c] = d[static_cast<std::size_t>(j * N + c)];
        zero = zero && u[c] == 0.0;
      }
      const Vec wj = zero ? Vec(f0.L * ux) : Vec(spectrum.frame(u).L * ux);
      for (int i = 0; i < N; ++i) w[static_cast<std::size_t>(j * N + i)] = wj[i];
    }
    wf.ux.push_back(std::move(d));
    wf.w.push_back(std::move(w));
  }
  return wf;
}

/// max_x |sum_i w_i r_i(u) - u_x| over one snapshot.
inline double reconstruction_residual(const Spectrum& spectrum, const Trajectory& tr,
                                      const WaveField& wf, std::size_t k) {
  const int N = tr.dim;
  double worst = 0.0;
  Vec w(N), ux(N);
  for (int j = 0; j < tr.n_cells(); ++j) {
    for (int c = 0; c < N; ++c) {
      w[c] = wf.w[k][static_cast<std::size_t>(j * N + c)];
      ux[c] = wf.ux[k][static_cast<std::size_t>(j * N + c)];
    }
    const SpectralFrame f = spectrum.frame(tr.state(tr.snapshots[k], j));
    worst = std::max(worst, (f.R * w - ux).cwiseAbs().maxCoeff());
  }
  return worst;
}

//---------------------------------------------------------------------------//
// Tracing.
//---------------------------------------------------------------------------//

struct CharTrace {
  int family = 0;  // 0-based
  double start_t = 0.0;
  double start_x = 0.0;
  bool truncated = false;
  std::vector<double> t;
  std::vector<double> x;
  std::vector<Vec> u;
  std::vector<double> lambda;
};

/// Space-time interpolant of a trajectory: cubic in x, linear in t.
class TrajectoryInterpolant {
 public:
  explicit TrajectoryInterpolant(const Trajectory& tr) : tr_(tr) {
    if (tr.snapshots.empty()) throw ConfigError("trajectory has no snapshots");
  }

  [[nodiscard]] double t_min() const { return tr_.snapshots.front().t; }
  [[nodiscard]] double t_max() const { return tr_.snapshots.back().t; }

  /// Index k with t_k <= t <= t_{k+1} (clamped).
  [[nodiscard]] std::size_t interval(double t) const {
    const auto& s = tr_.snapshots;
    if (s.size() < 2) return 0;
    auto it = std::upper_bound(s.begin(), s.end(), t,
                               [](double v, const Snapshot& sn) { return v < sn.t; });
    std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - s.begin() - 1));
    return std::min(k, s.size() - 2);
  }

  /// Value of snapshot k at physical position x.
  [[nodiscard]] Vec at_snapshot(std::size_t k, double x) const {
    return detail::interp_state(tr_.snapshots[k].u, tr_.n_cells(), tr_.dim, tr_.x.front(),
                                tr_.dx, x - tr_.frame_speed * tr_.snapshots[k].t);
  }

  [[nodiscard]] Vec operator()(double t, double x) const {
    const auto& s = tr_.snapshots;
    if (s.size() == 1) return at_snapshot(0, x);
    const std::size_t k = interval(t);
    const double th = (t - s[k].t) / (s[k + 1].t - s[k].t);
    return (1.0 - th) * at_snapshot(k, x) + th * at_snapshot(k + 1, x);
  }

  /// Same interpolation for an arbitrary per-snapshot cell-major field.
  [[nodiscard]] Vec field(const std::vector<std::vector<double>>& data, double t, double x) const {
    const auto& s = tr_.snapshots;
    auto one = [&](std::size_t k) {
      return detail::interp_state(data[k], tr_.n_cells(), tr_.dim, tr_.x.front(), tr_.dx,
                                  x - tr_.frame_speed * s[k].t);
    };
    if (s.size() == 1) return one(0);
    const std::size_t k = interval(t);
    const double th = (t - s[k].t) / (s[k + 1].t - s[k].t);
    return (1.0 - th) * one(k) + th * one(k + 1);
  }

 private:
  const Trajectory& tr_;
};

/// Maximal relative change of lambda_i along a trace allowed within one
/// snapshot interval before the cadence is considered too coarse.
inline constexpr double kTraceLambdaVariation = 0.01;

/// Integrate dX/dt = lambda_i(u(t, X)) from (t0, x0) to t1 (t1 < t0 traces
/// backwards). Segments are split at snapshot times, where nodes are stored.
inline CharTrace trace(const Spectrum& spectrum, const Trajectory& tr, int family, double t0,
                       double x0, double t1, double rtol = 1e-10) {
  if (family < 0 || family >= tr.dim) throw ConfigError("trace family out of range");
  const TrajectoryInterpolant U(tr);
  const double tlo = U.t_min();
  const double thi = U.t_max();
  if (t0 < tlo - 1e-12 || t0 > thi + 1e-12 || t1 < tlo - 1e-12 || t1 > thi + 1e-12)
    throw ConfigError("trace times outside the simulated range");
  if (x0 < tr.window_lo(t0) || x0 > tr.window_hi(t0))
    throw ConfigError("trace start outside the window");

  CharTrace ct;
  ct.family = family;
  ct.start_t = t0;
  ct.start_x = x0;
  using S1 = Eigen::Matrix<double, 1, 1>;
  auto speed = [&](double t, double x) { return spectrum.eigenvalues(U(t, x))[family]; };
  auto rhs = [&](double t, const S1& y) { return S1(speed(t, y[0])); };
  auto record = [&](double t, double x) {
    const Vec u = U(t, x);
    ct.t.push_back(t);
    ct.x.push_back(x);
    ct.u.push_back(u);
    ct.lambda.push_back(spectrum.eigenvalues(u)[family]);
  };

  // Segment boundaries: snapshot times strictly between t0 and t1.
  std::vector<double> stops;
  for (const auto& s : tr.snapshots)
    if ((s.t - t0) * (t1 - s.t) > 0.0) stops.push_back(s.t);
  if (t1 < t0) std::reverse(stops.begin(), stops.end());
  stops.push_back(t1);

  ode::Options opt;
  opt.rtol = rtol;
  opt.atol = 1e-13;
  double t = t0;
  S1 y(x0);
  record(t, x0);
  for (double ts : stops) {
    if (ts == t) continue;
    y = ode::integrate<S1>(rhs, t, y, ts, opt).y;
    t = ts;
    if (y[0] < tr.window_lo(t) || y[0] > tr.window_hi(t)) {
      ct.truncated = true;
      break;
    }
    const double lam_prev = ct.lambda.back();
    record(t, y[0]);
    const double lam = ct.lambda.back();
    const double scale = std::max({std::abs(lam), std::abs(lam_prev), 1e-3 * tr.delta});
    if (std::abs(lam - lam_prev) > kTraceLambdaVariation * scale)
      throw NumericError("snapshot cadence too coarse for tracing: lambda varies by more than 1% "
                         "within one interval");
  }
  return ct;
}

/// Linear interpolation of a trace position at time t.
inline double trace_position(const CharTrace& ct, double t) {
  const auto& ts = ct.t;
  if (ts.size() == 1) return ct.x.front();
  const bool fwd = ts.back() >= ts.front();
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    const double a = ts[k], b = ts[k + 1];
    if ((fwd && t >= a && t <= b) || (!fwd && t <= a && t >= b)) {
      const double th = (t - a) / (b - a);
      return (1.0 - th) * ct.x[k] + th * ct.x[k + 1];
    }
  }
  throw ConfigError("time outside the trace");
}

/// Linear interpolation of a probe position at time t.
inline double probe_position(const Probe& p, double t) {
  if (p.t.empty()) throw ConfigError("empty probe");
  if (t <= p.t.front()) return p.x.front();
  if (t >= p.t.back()) return p.x.back();
  const auto it = std::lower_bound(p.t.begin(), p.t.end(), t);
  const std::size_t k = static_cast<std::size_t>(it - p.t.begin());
  if (p.t[k] == t) return p.x[k];
  const double th = (t - p.t[k - 1]) / (p.t[k] - p.t[k - 1]);
  return (1.0 - th) * p.x[k - 1] + th * p.x[k];
}

/// Wave components l(u) u_x along a probe.
inline std::vector<Vec> probe_waves(const Spectrum& spectrum, const Probe& p) {
  std::vector<Vec> out;
  out.reserve(p.t.size());
  for (std::size_t k = 0; k < p.t.size(); ++k)
    out.push_back(spectrum.frame(p.u[k]).L * p.ux[k]);
  return out;
}

/// Minimal pairwise distance between probes of one family at common step times.
inline double min_probe_gap(const std::vector<const Probe*>& probes) {
  double best = kInf;
  for (std::size_t a = 0; a < probes.size(); ++a)
    for (std::size_t b = a + 1; b < probes.size(); ++b) {
      const std::size_t n = std::min(probes[a]->x.size(), probes[b]->x.size());
      const double sign = probes[b]->start_x > probes[a]->start_x ? 1.0 : -1.0;
      for (std::size_t k = 0; k < n; ++k)
        best = std::min(best, sign * (probes[b]->x[k] - probes[a]->x[k]));
    }
  return best;
}

//---------------------------------------------------------------------------//
// Strip functionals J, M, S, V along the p-wave.
//---------------------------------------------------------------------------//

struct Lemma3Bounds {
  double c_J = kInf, c_M = kInf, c_S = kInf, c_V = kInf;
  double epsilon = 0.0;
};

struct Lemma3Report {
  std::vector<double> t;
  std::vector<double> J, M, S, V_tilde, W_p_out, V;
  std::vector<double> a_p, b_p;
  double dx = 0.0;
  int n_cells = 0;
  bool edges_from_probes = false;
  std::optional<Lemma3Bounds> bounds;
  bool J_ok = true, M_ok = true, S_ok = true, V_ok = true;

  [[nodiscard]] static double last(const std::vector<double>& v) { return v.empty() ? 0.0 : v.back(); }
};

/// Running suprema over the stored snapshots. Strip edges a_p, b_p are the
/// p-characteristics from the ends of the data support; they are taken from
/// in-run probes when present and traced through the snapshots otherwise.
inline Lemma3Report lemma3_quantities(const Spectrum& spectrum, const Trajectory& tr,
                                      const WaveField& wf,
                                      std::optional<Lemma3Bounds> bounds = std::nullopt) {
  const int N = tr.dim;
  const int pp = spectrum.model().gnl();
  const int n = tr.n_cells();
  Lemma3Report rep;
  rep.dx = tr.dx;
  rep.n_cells = n;
  rep.bounds = bounds;

  const Probe* pa = nullptr;
  const Probe* pb = nullptr;
  for (const auto& p : tr.probes) {
    if (p.family != pp) continue;
    if (p.start_x == tr.support_lo) pa = &p;
    if (p.start_x == tr.support_hi) pb = &p;
  }
  std::optional<CharTrace> ta, tb;
  rep.edges_from_probes = pa && pb;
  if (!rep.edges_from_probes) {
    const double t0 = tr.snapshots.front().t, t1 = tr.snapshots.back().t;
    ta = trace(spectrum, tr, pp, t0, tr.support_lo, t1);
    tb = trace(spectrum, tr, pp, t0, tr.support_hi, t1);
    if (ta->truncated || tb->truncated) throw NumericError("strip edges leave the window");
  }

  double J = 0.0, M = 0.0, S = 0.0, Vt = 0.0, Wo = 0.0;
  const double band = 0.5 * tr.dx;
  for (std::size_t k = 0; k < tr.snapshots.size(); ++k) {
    const Snapshot& s = tr.snapshots[k];
    const double a = pa ? probe_position(*pa, s.t) : trace_position(*ta, s.t);
    const double b = pb ? probe_position(*pb, s.t) : trace_position(*tb, s.t);
    double jint = 0.0, mk = 0.0, vk = 0.0, wok = 0.0;
    for (int j = 0; j < n; ++j) {
      const double xj = tr.x_at(j, s.t);
      double u2 = 0.0;
      for (int c = 0; c < N; ++c) {
        const double uv = s.u[static_cast<std::size_t>(j * N + c)];
        u2 += uv * uv;
      }
      mk = std::max(mk, std::sqrt(u2));
      const double wp = std::abs(wf.w[k][static_cast<std::size_t>(j * N + pp)]);
      if (xj >= a && xj <= b) jint += wp * tr.dx;
      if (xj < a - band || xj > b + band) wok = std::max(wok, wp);
      for (int i = 0; i < N; ++i)
        if (i != pp) vk = std::max(vk, std::abs(wf.w[k][static_cast<std::size_t>(j * N + i)]));
    }
    J = std::max(J, jint);
    M = std::max(M, mk);
    S = std::max(S, b - a);
    Vt = std::max(Vt, vk);
    Wo = std::max(Wo, wok);
    rep.t.push_back(s.t);
    rep.a_p.push_back(a);
    rep.b_p.push_back(b);
    rep.J.push_back(J);
    rep.M.push_back(M);
    rep.S.push_back(S);
    rep.V_tilde.push_back(Vt);
    rep.W_p_out.push_back(Wo);
    rep.V.push_back(Wo + Vt);
  }
  if (bounds) {
    const double e = bounds->epsilon;
    rep.J_ok = Lemma3Report::last(rep.J) < bounds->c_J * e;
    rep.M_ok = Lemma3Report::last(rep.M) < bounds->c_M * e;
    rep.S_ok = Lemma3Report::last(rep.S) < bounds->c_S;
    // N = 1: no transversal families, V and c_V both vanish.
    const double v = Lemma3Report::last(rep.V);
    rep.V_ok = v < bounds->c_V * e * e || (v == 0.0 && bounds->c_V == 0.0);
  }
  return rep;
}

//---------------------------------------------------------------------------//
// Transport residual.
//---------------------------------------------------------------------------//

struct TransportResidual {
  std::vector<double> t;
  std::vector<double> residual;  // |d/dt w_i - rhs| at interior nodes
  std::vector<double> w;         // w_i along the trace
  [[nodiscard]] double max() const {
    return residual.empty() ? 0.0 : *std::max_element(residual.begin(), residual.end());
  }
};

/// Defect of L_i w_i = sum gamma_ijk w_j w_k + s sum G_ik w_k along a trace,
/// sampled at the trace nodes (snapshot times) with second-order differences
/// in t.
inline TransportResidual transport_residual(const Spectrum& spectrum, const Trajectory& tr,
                                            const WaveField& wf, const CharTrace& ct,
                                            double source_scale) {
  const TrajectoryInterpolant U(tr);
  const int i = ct.family;
  TransportResidual out;
  std::vector<Vec> wv;
  for (std::size_t k = 0; k < ct.t.size(); ++k) wv.push_back(U.field(wf.w, ct.t[k], ct.x[k]));
  for (const auto& v : wv) out.w.push_back(v[i]);
  for (std::size_t k = 1; k + 1 < ct.t.size(); ++k) {
    const double h0 = ct.t[k] - ct.t[k - 1];
    const double h1 = ct.t[k + 1] - ct.t[k];
    const double dwdt = -h1 / (h0 * (h0 + h1)) * wv[k - 1][i] +
                        (h1 - h0) / (h0 * h1) * wv[k][i] +
                        h0 / (h1 * (h0 + h1)) * wv[k + 1][i];
    const CoefficientSet cs = coefficients_at(spectrum, ct.u[k]);
    double rhs = cs.gamma.quadratic_form(i, wv[k]);
    if (source_scale != 0.0) rhs += source_scale * cs.G.row(i).dot(wv[k]);
    out.t.push_back(ct.t[k]);
    out.residual.push_back(std::abs(dwdt - rhs));
  }
  return out;
}

}  // namespace charblow
