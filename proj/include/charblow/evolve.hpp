#pragma once

// Method-of-lines integration of u_t + a(u) u_x = s g(u) with fourth-order
// centred differences and classical RK4, plus an exact characteristic
// oracle for scalar equations.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "charblow/initial_data.hpp"
#include "charblow/ode.hpp"
#include "charblow/spectral.hpp"

namespace charblow {

struct GridConfig {
  int n_cells = 4096;
  /// Explicit window; when both are NaN the window is the support cone at
  /// t_end widened by `window_slack` on each side.
  double x_min = std::numeric_limits<double>::quiet_NaN();
  double x_max = std::numeric_limits<double>::quiet_NaN();
  /// When > 0, overrides n_cells so that the window has about this spacing.
  double target_dx = 0.0;
  double cfl = 0.5;
  double dissipation = 0.0;
  /// Absolute cap on max |u_x|; 0 means gradient_cap_factor * initial max |u_x|.
  double gradient_cap = 0.0;
  double gradient_cap_factor = 1e3;
  /// A derived cap never exceeds max|u0| / (resolution_cells * dx), the
  /// steepest front the grid can carry; 0 disables the clamp.
  double resolution_cells = 10.0;
  double window_slack = 0.2;
  /// Snapshot cadence in steps; 0 means time-based with `target_snapshots`.
  int snap_every = 0;
  int target_snapshots = 200;
  /// The grid moves with this speed; NaN selects lambda_p(0).
  double frame_speed = std::numeric_limits<double>::quiet_NaN();
};

enum class RunStatus { completed, gradient_blowup, ball_exit };

inline std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::completed: return "completed";
    case RunStatus::gradient_blowup: return "gradient_blowup";
    case RunStatus::ball_exit: return "ball_exit";
  }
  return "unknown";
}

/// Solution values on the grid at one instant, cell-major: u[j * dim + c].
struct Snapshot {
  double t = 0.0;
  std::vector<double> u;
};

/// A characteristic advanced together with the solution (same RK4 stages).
struct ProbeRequest {
  int family = 0;  // 0-based
  double start_x = 0.0;
};

struct Probe {
  int family = 0;
  double start_x = 0.0;
  std::vector<double> t;
  std::vector<double> x;
  std::vector<Vec> u;
  std::vector<Vec> ux;
};

struct Trajectory {
  int dim = 1;
  double delta = 0.0;
  double dx = 0.0;
  /// Cell centres in the co-moving coordinate xi = x - frame_speed * t.
  std::vector<double> x;
  double frame_speed = 0.0;
  std::vector<Snapshot> snapshots;
  std::vector<Probe> probes;
  RunStatus status = RunStatus::completed;
  double t_stop = 0.0;
  double t_end = 0.0;
  double source_scale = 0.0;
  double gradient_cap = 0.0;
  double initial_max_gradient = 0.0;
  bool cap_from_resolution = false;
  double dissipation = 0.0;
  long steps = 0;
  // Support cone metadata: supp u(0) in [support_lo, support_hi].
  double support_lo = -0.5;
  double support_hi = 0.5;
  double lambda_min0 = 0.0;
  double lambda_max0 = 0.0;

  [[nodiscard]] int n_cells() const { return static_cast<int>(x.size()); }
  [[nodiscard]] double x_min() const { return x.front() - 0.5 * dx; }
  [[nodiscard]] double x_max() const { return x.back() + 0.5 * dx; }
  /// Physical position of cell j at time t.
  [[nodiscard]] double x_at(int j, double t) const {
    return x[static_cast<std::size_t>(j)] + frame_speed * t;
  }
  [[nodiscard]] double window_lo(double t) const { return x_min() + frame_speed * t; }
  [[nodiscard]] double window_hi(double t) const { return x_max() + frame_speed * t; }
  [[nodiscard]] Vec state(const Snapshot& s, int j) const {
    Vec v(dim);
    for (int c = 0; c < dim; ++c) v[c] = s.u[static_cast<std::size_t>(j * dim + c)];
    return v;
  }
  [[nodiscard]] std::vector<double> times() const {
    std::vector<double> t;
    t.reserve(snapshots.size());
    for (const auto& s : snapshots) t.push_back(s.t);
    return t;
  }
};

namespace detail {

/// Four-point Lagrange interpolation of a cell-centred field (zero outside
/// the window). `stride`/`comp` select one component of a cell-major array.
inline double interp_cubic(const double* data, int n, int stride, int comp, double x0, double dx,
                           double x) {
  const double s = (x - x0) / dx;  // x0 is the centre of cell 0
  const int j = static_cast<int>(std::floor(s));
  const double t = s - j;
  auto at = [&](int idx) {
    return (idx < 0 || idx >= n) ? 0.0 : data[static_cast<std::size_t>(idx * stride + comp)];
  };
  const double fm = at(j - 1), f0 = at(j), f1 = at(j + 1), f2 = at(j + 2);
  return -t * (t - 1) * (t - 2) / 6.0 * fm + (t + 1) * (t - 1) * (t - 2) / 2.0 * f0 -
         (t + 1) * t * (t - 2) / 2.0 * f1 + (t + 1) * t * (t - 1) / 6.0 * f2;
}

inline Vec interp_state(const std::vector<double>& u, int n, int dim, double x0, double dx,
                        double x) {
  Vec v(dim);
  for (int c = 0; c < dim; ++c) v[c] = interp_cubic(u.data(), n, dim, c, x0, dx, x);
  return v;
}

}  // namespace detail

/// Union over [0, t_end] of the support cone [-R + lambda_1(0) t, R + lambda_N(0) t]
/// in coordinates moving with `frame_speed`, widened by `slack`.
inline std::pair<double, double> cone_window(const Spectrum& spectrum, double support_radius,
                                             double t_end, double slack,
                                             double frame_speed = 0.0) {
  const Vec& lam = spectrum.origin_frame().lambdas;
  const double lo = -support_radius + std::min(0.0, (lam[0] - frame_speed) * t_end);
  const double hi = support_radius + std::max(0.0, (lam[lam.size() - 1] - frame_speed) * t_end);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo) * (1.0 + slack);
  return {mid - half, mid + half};
}

/// Integrate the Cauchy problem until t_end, gradient blow-up (max |u_x|
/// above the cap) or exit from B_delta(0).
inline Trajectory simulate(const Spectrum& spectrum, const InitialDataSpec& data,
                           const GridConfig& grid, double t_end, double source_scale,
                           const std::vector<ProbeRequest>& probe_requests = {}) {
  const SystemModel& model = spectrum.model();
  const int N = model.dim;
  if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");
  if (!(grid.cfl > 0.0 && grid.cfl < 1.0)) throw ConfigError("cfl must lie in (0, 1)");
  if (!(grid.dissipation >= 0.0)) throw ConfigError("dissipation must be >= 0");
  if (!std::isfinite(source_scale)) throw ConfigError("source scale must be finite");

  Trajectory tr;
  tr.dim = N;
  tr.delta = model.delta;
  tr.t_end = t_end;
  tr.source_scale = source_scale;
  tr.dissipation = grid.dissipation;
  tr.support_lo = -data.support_radius();
  tr.support_hi = data.support_radius();
  const Vec& lam0 = spectrum.origin_frame().lambdas;
  tr.lambda_min0 = lam0[0];
  tr.lambda_max0 = lam0[N - 1];
  const double sigma = std::isnan(grid.frame_speed) ? lam0[model.gnl()] : grid.frame_speed;
  if (!std::isfinite(sigma)) throw ConfigError("frame speed must be finite");
  tr.frame_speed = sigma;

  double x_min = grid.x_min;
  double x_max = grid.x_max;
  const auto cone = cone_window(spectrum, data.support_radius(), t_end, 0.0, sigma);
  if (std::isnan(x_min) || std::isnan(x_max)) {
    std::tie(x_min, x_max) =
        cone_window(spectrum, data.support_radius(), t_end, grid.window_slack, sigma);
  } else if (!(x_min <= cone.first && x_max >= cone.second)) {
    throw ConfigError("grid window does not contain the support cone up to t_end");
  }
  int n = grid.n_cells;
  if (grid.target_dx > 0.0) n = static_cast<int>(std::ceil((x_max - x_min) / grid.target_dx));
  if (n < 16) throw ConfigError("n_cells must be at least 16");
  const double dx = (x_max - x_min) / n;
  tr.dx = dx;
  tr.x.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) tr.x[static_cast<std::size_t>(j)] = x_min + (j + 0.5) * dx;
  const double x0 = tr.x.front();

  // State with three ghost cells per side holding the background state 0.
  constexpr int G = 3;
  const std::size_t total = static_cast<std::size_t>((n + 2 * G) * N);
  std::vector<double> U(total, 0.0);
  auto cell = [N](std::vector<double>& v, int j) { return v.data() + (j + G) * N; };
  for (int j = 0; j < n; ++j) {
    const Vec u0 = data.at(tr.x[static_cast<std::size_t>(j)]);
    for (int c = 0; c < N; ++c) cell(U, j)[c] = u0[c];
  }

  const int np = static_cast<int>(probe_requests.size());
  for (const auto& pr : probe_requests) {
    if (pr.family < 0 || pr.family >= N) throw ConfigError("probe family out of range");
    Probe p;
    p.family = pr.family;
    p.start_x = pr.start_x;
    tr.probes.push_back(p);
  }
  std::vector<double> X(static_cast<std::size_t>(np));
  for (int k = 0; k < np; ++k) X[static_cast<std::size_t>(k)] = probe_requests[static_cast<std::size_t>(k)].start_x;

  std::vector<double> ux(static_cast<std::size_t>(n * N));
  std::vector<Mat> Acache(static_cast<std::size_t>(n));
  const double inv12dx = 1.0 / (12.0 * dx);
  const double g_rate = std::abs(source_scale) *
                        model.source_jacobian(model.origin()).cwiseAbs().rowwise().sum().maxCoeff();

  // Right-hand side of the semi-discrete system; also fills ux (and the a(u)
  // cache when requested). Returns max |a| spectral bound for CFL when asked.
  auto rhs = [&](std::vector<double>& V, std::vector<double>& out, bool cache, double* max_speed) {
    double smax = 0.0;
    const double diss_coef = grid.dissipation / (64.0 * dx);
    Vec u(N), d(N), r(N);
    for (int j = 0; j < n; ++j) {
      const double* um2 = cell(V, j - 2);
      const double* um1 = cell(V, j - 1);
      const double* uc = cell(V, j);
      const double* up1 = cell(V, j + 1);
      const double* up2 = cell(V, j + 2);
      for (int c = 0; c < N; ++c) {
        u[c] = uc[c];
        d[c] = (-up2[c] + 8.0 * up1[c] - 8.0 * um1[c] + um2[c]) * inv12dx;
        ux[static_cast<std::size_t>(j * N + c)] = d[c];
      }
      Mat A = model.a(u);
      r = sigma * d - A * d;
      if (source_scale != 0.0) r += source_scale * model.g(u);
      if (grid.dissipation > 0.0) {
        const double* um3 = cell(V, j - 3);
        const double* up3 = cell(V, j + 3);
        for (int c = 0; c < N; ++c)
          r[c] += diss_coef * (up3[c] - 6.0 * up2[c] + 15.0 * up1[c] - 20.0 * uc[c] +
                               15.0 * um1[c] - 6.0 * um2[c] + um3[c]);
      }
      if (max_speed)
        smax = std::max(smax, (spectrum.eigenvalues(u).array() - sigma).abs().maxCoeff());
      if (cache) Acache[static_cast<std::size_t>(j)] = std::move(A);
      for (int c = 0; c < N; ++c) out[static_cast<std::size_t>((j + G) * N + c)] = r[c];
    }
    if (max_speed) *max_speed = smax;
  };

  auto probe_speed = [&](const std::vector<double>& V, int k, double xk) {
    Vec u(N);
    for (int c = 0; c < N; ++c)
      u[c] = detail::interp_cubic(V.data() + G * N, n, N, c, x0, dx, xk);
    return spectrum.eigenvalues(u)[tr.probes[static_cast<std::size_t>(k)].family] - sigma;
  };

  std::vector<double> k1(total, 0.0), k2(total, 0.0), k3(total, 0.0), k4(total, 0.0),
      tmp(total, 0.0);
  std::vector<double> pk1(static_cast<std::size_t>(np)), pk2(pk1), pk3(pk1), pk4(pk1);

  const double snap_dt = t_end / std::max(1, grid.target_snapshots);
  double next_snap = 0.0;
  double t = 0.0;
  double cap = grid.gradient_cap;
  long step = 0;
  auto take_snapshot = [&](double time) {
    if (!tr.snapshots.empty() && tr.snapshots.back().t == time) return;
    Snapshot s;
    s.t = time;
    s.u.assign(U.begin() + G * N, U.begin() + (G + n) * N);
    tr.snapshots.push_back(std::move(s));
  };

  while (true) {
    double smax = 0.0;
    rhs(U, k1, true, &smax);

    for (int k = 0; k < np; ++k) {
      auto& p = tr.probes[static_cast<std::size_t>(k)];
      const double xk = X[static_cast<std::size_t>(k)];
      p.t.push_back(t);
      p.x.push_back(xk + sigma * t);
      Vec u(N), d(N);
      for (int c = 0; c < N; ++c) {
        u[c] = detail::interp_cubic(U.data() + G * N, n, N, c, x0, dx, xk);
        d[c] = detail::interp_cubic(ux.data(), n, N, c, x0, dx, xk);
      }
      p.u.push_back(u);
      p.ux.push_back(d);
    }

    double gmax = 0.0;
    double umax = 0.0;
    bool finite = true;
    for (int j = 0; j < n; ++j) {
      double g2 = 0.0;
      double u2 = 0.0;
      for (int c = 0; c < N; ++c) {
        const double gv = ux[static_cast<std::size_t>(j * N + c)];
        const double uv = cell(U, j)[c];
        g2 += gv * gv;
        u2 += uv * uv;
      }
      finite = finite && std::isfinite(g2) && std::isfinite(u2);
      gmax = std::max(gmax, g2);
      umax = std::max(umax, u2);
    }
    gmax = std::sqrt(gmax);
    umax = std::sqrt(umax);
    if (step == 0) {
      tr.initial_max_gradient = gmax;
      if (cap <= 0.0) {
        cap = grid.gradient_cap_factor * std::max(gmax, 1e-300);
        if (grid.resolution_cells > 0.0 && umax > 0.0) {
          const double resolvable = umax / (grid.resolution_cells * dx);
          if (resolvable < cap) {
            cap = resolvable;
            tr.cap_from_resolution = true;
          }
        }
      }
      tr.gradient_cap = cap;
    }
    if (!finite) {
      throw NumericError("non-finite state at t = " + std::to_string(t) +
                         " before the gradient cap was reached");
    }
    if (gmax > cap) {
      tr.status = RunStatus::gradient_blowup;
      break;
    }
    if (umax > model.delta) {
      tr.status = RunStatus::ball_exit;
      break;
    }
    if (grid.snap_every > 0 ? (step % grid.snap_every == 0) : (t >= next_snap - 1e-12 * t_end)) {
      take_snapshot(t);
      while (next_snap <= t + 1e-12 * t_end) next_snap += snap_dt;
    }
    if (t >= t_end) {
      tr.status = RunStatus::completed;
      break;
    }

    // Step size: advective CFL and the steepening rate |d_x a(u)|.
    double rate = g_rate;
    for (int j = 1; j + 1 < n; ++j) {
      const Mat dA = Acache[static_cast<std::size_t>(j + 1)] - Acache[static_cast<std::size_t>(j - 1)];
      rate = std::max(rate, dA.cwiseAbs().rowwise().sum().maxCoeff() / (2.0 * dx));
    }
    double dt = grid.cfl * dx / std::max(smax, 1e-12);
    if (rate > 0.0) dt = std::min(dt, 0.5 * grid.cfl / rate);
    if (t + dt > t_end) dt = t_end - t;

    for (int k = 0; k < np; ++k)
      pk1[static_cast<std::size_t>(k)] = probe_speed(U, k, X[static_cast<std::size_t>(k)]);

    auto stage = [&](const std::vector<double>& K, double h, std::vector<double>& Kout,
                     const std::vector<double>& PK, std::vector<double>& PKout) {
      for (std::size_t i = G * N; i < static_cast<std::size_t>((G + n) * N); ++i)
        tmp[i] = U[i] + h * K[i];
      rhs(tmp, Kout, false, nullptr);
      for (int k = 0; k < np; ++k)
        PKout[static_cast<std::size_t>(k)] =
            probe_speed(tmp, k, X[static_cast<std::size_t>(k)] + h * PK[static_cast<std::size_t>(k)]);
    };
    stage(k1, 0.5 * dt, k2, pk1, pk2);
    stage(k2, 0.5 * dt, k3, pk2, pk3);
    stage(k3, dt, k4, pk3, pk4);
    for (std::size_t i = G * N; i < static_cast<std::size_t>((G + n) * N); ++i)
      U[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    for (int k = 0; k < np; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      X[kk] += dt / 6.0 * (pk1[kk] + 2.0 * pk2[kk] + 2.0 * pk3[kk] + pk4[kk]);
    }
    t = (t + dt >= t_end) ? t_end : t + dt;
    ++step;
  }
  take_snapshot(t);
  tr.t_stop = t;
  tr.steps = step;
  return tr;
}

//---------------------------------------------------------------------------//
// Exact characteristics for N = 1.
//---------------------------------------------------------------------------//

struct CharacteristicSolution {
  double start_x = 0.0;
  double w0 = 0.0;
  double blowup_time = kInf;  // +inf when u_x stays bounded
  std::vector<double> t;
  std::vector<double> x;
  std::vector<double> u;
  std::vector<double> ux;  // NaN after blow-up
};

/// Solve dX/dt = a(u), du/dt = s g(u), d(1/w)/dt = -s g'(u) (1/w) + a'(u)
/// from (X, u, u_x) = (x0, u0(x0), u0'(x0)); blow-up is the zero of 1/w.
inline CharacteristicSolution scalar_characteristic(const SystemModel& model,
                                                    const InitialDataSpec& data,
                                                    double source_scale, double x0,
                                                    const std::vector<double>& t_query,
                                                    double t_horizon = kInf) {
  if (model.dim != 1) throw ConfigError("the scalar oracle needs N = 1");
  using S3 = Eigen::Vector3d;
  CharacteristicSolution sol;
  sol.start_x = x0;
  const double u0 = data.at(x0)[0];
  const double w0 = data.derivative_at(x0)[0];
  sol.w0 = w0;
  const Vec one = Vec::Ones(1);
  auto scal = [](double v) { return Vec::Constant(1, v); };
  ode::Options opt;
  opt.rtol = 1e-12;
  opt.atol = 1e-14;

  if (w0 == 0.0) {
    // u_x stays zero along this characteristic.
    auto f = [&](double, const S3& y) {
      const Vec u = scal(y[1]);
      return S3(model.a(u)(0, 0), source_scale * model.g(u)[0], 0.0);
    };
    S3 y(x0, u0, 0.0);
    double tc = 0.0;
    for (double tq : t_query) {
      y = ode::integrate<S3>(f, tc, y, tq, opt).y;
      tc = tq;
      sol.t.push_back(tq);
      sol.x.push_back(y[0]);
      sol.u.push_back(y[1]);
      sol.ux.push_back(0.0);
    }
    return sol;
  }

  auto f = [&](double, const S3& y) {
    const Vec u = scal(y[1]);
    const double ap = model.a_derivative(u, one)(0, 0);
    const double gp = model.source_jacobian(u)(0, 0);
    return S3(model.a(u)(0, 0), source_scale * model.g(u)[0], -source_scale * gp * y[2] + ap);
  };
  std::function<double(double, const S3&)> event = [](double, const S3& y) { return y[2]; };
  S3 y(x0, u0, 1.0 / w0);
  double tc = 0.0;
  bool blown = false;
  for (double tq : t_query) {
    if (!blown) {
      auto res = ode::integrate<S3>(f, tc, y, tq, opt, event);
      y = res.y;
      tc = res.t;
      if (res.event) {
        blown = true;
        sol.blowup_time = res.t;
      }
    }
    sol.t.push_back(tq);
    sol.x.push_back(blown ? std::numeric_limits<double>::quiet_NaN() : y[0]);
    sol.u.push_back(blown ? std::numeric_limits<double>::quiet_NaN() : y[1]);
    sol.ux.push_back(blown ? std::numeric_limits<double>::quiet_NaN() : 1.0 / y[2]);
  }
  if (!blown && std::isfinite(t_horizon) && t_horizon > tc) {
    auto res = ode::integrate<S3>(f, tc, y, t_horizon, opt, event);
    if (res.event) sol.blowup_time = res.t;
  }
  return sol;
}

struct ScalarOracle {
  double t_star = kInf;  // earliest characteristic blow-up
  double x_star = 0.0;   // its starting point
  std::vector<CharacteristicSolution> characteristics;
};

/// Exact states on characteristics from `starts`, and the exact lifespan
/// min over starting points of the characteristic blow-up time (searched on
/// the data support and refined by golden section).
inline ScalarOracle scalar_oracle(const SystemModel& model, const InitialDataSpec& data,
                                  double source_scale, const std::vector<double>& starts,
                                  const std::vector<double>& t_query, double t_horizon) {
  ScalarOracle out;
  for (double x0 : starts)
    out.characteristics.push_back(
        scalar_characteristic(model, data, source_scale, x0, t_query, t_horizon));

  auto blow = [&](double x0) {
    return scalar_characteristic(model, data, source_scale, x0, {}, t_horizon).blowup_time;
  };
  const double R = data.support_radius();
  constexpr int kScan = 400;
  double best = kInf;
  double best_x = 0.0;
  const double h = 2.0 * R / kScan;
  for (int k = 1; k < kScan; ++k) {
    const double x = -R + k * h;
    const double tb = blow(x);
    if (tb < best) {
      best = tb;
      best_x = x;
    }
  }
  if (std::isfinite(best)) {
    double lo = best_x - h, hi = best_x + h;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = blow(x1), f2 = blow(x2);
    for (int it = 0; it < 100 && hi - lo > 1e-12 * R; ++it) {
      if (f1 > f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = blow(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = blow(x1);
      }
    }
    const double xm = 0.5 * (lo + hi);
    const double fm = blow(xm);
    if (fm < best) {
      best = fm;
      best_x = xm;
    }
  }
  out.t_star = best;
  out.x_star = best_x;
  return out;
}

//---------------------------------------------------------------------------//
// Support cone check.
//---------------------------------------------------------------------------//

struct SupportInterval {
  double t = 0.0;
  bool empty = true;
  double lo = 0.0;
  double hi = 0.0;
  double cone_lo = 0.0;
  double cone_hi = 0.0;
  bool violation = false;
};

/// Numerical support {|u| > threshold} per snapshot, flagged against the
/// cone [lo + lambda_1(0) t, hi + lambda_N(0) t] with a margin of 6 dx.
inline std::vector<SupportInterval> support_bounds(const Trajectory& tr, double threshold) {
  std::vector<SupportInterval> out;
  const double margin = 6.0 * tr.dx;
  for (const auto& s : tr.snapshots) {
    SupportInterval si;
    si.t = s.t;
    si.cone_lo = tr.support_lo + tr.lambda_min0 * s.t;
    si.cone_hi = tr.support_hi + tr.lambda_max0 * s.t;
    for (int j = 0; j < tr.n_cells(); ++j) {
      if (tr.state(s, j).norm() > threshold) {
        const double xj = tr.x_at(j, s.t);
        if (si.empty) {
          si.lo = xj;
          si.empty = false;
        }
        si.hi = xj;
      }
    }
    if (si.empty) {
      si.lo = si.hi = 0.5 * (si.cone_lo + si.cone_hi);
    } else {
      si.violation = si.lo < si.cone_lo - margin || si.hi > si.cone_hi + margin;
    }
    out.push_back(si);
  }
  return out;
}

inline int count_cone_violations(const std::vector<SupportInterval>& v) {
  return static_cast<int>(std::count_if(v.begin(), v.end(), [](const auto& s) { return s.violation; }));
}

}  // namespace charblow
