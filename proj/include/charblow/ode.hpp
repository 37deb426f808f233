#pragma once

// Small explicit Runge-Kutta toolkit: classical RK4 steps and an adaptive
// Dormand-Prince 5(4) integrator with event location.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include "charblow/types.hpp"

namespace charblow::ode {

template <class State, class Rhs>
State rk4_step(Rhs&& f, double t, const State& y, double h) {
  const State k1 = f(t, y);
  const State k2 = f(t + 0.5 * h, State(y + 0.5 * h * k1));
  const State k3 = f(t + 0.5 * h, State(y + 0.5 * h * k2));
  const State k4 = f(t + h, State(y + h * k3));
  return State(y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

struct Options {
  double rtol = 1e-10;
  double atol = 1e-12;
  double initial_step = 0.0;  // 0 picks |t1 - t0| / 100
  double max_step = kInf;
  long max_steps = 2'000'000;
};

template <class State>
struct Result {
  double t = 0.0;
  State y;
  bool event = false;  // integration stopped at an event root
  long steps = 0;
};

namespace detail {

// Dormand-Prince 5(4) tableau.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                        b6 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

template <class State, class Rhs>
std::pair<State, double> dopri_step(Rhs& f, double t, const State& y, double h,
                                    const Options& opt) {
  const State k1 = f(t, y);
  const State k2 = f(t + c2 * h, State(y + h * (a21 * k1)));
  const State k3 = f(t + c3 * h, State(y + h * (a31 * k1 + a32 * k2)));
  const State k4 = f(t + c4 * h, State(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
  const State k5 = f(t + c5 * h, State(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
  const State k6 =
      f(t + h, State(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
  const State y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  const State k7 = f(t + h, y5);
  const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  double norm = 0.0;
  for (int i = 0; i < y.size(); ++i) {
    const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
    norm = std::max(norm, std::abs(err[i]) / sc);
  }
  return {y5, norm};
}

}  // namespace detail

/// Integrate y' = f(t, y) from t0 to t1 (either direction). If `event` is
/// given, integration stops at the first sign change of event(t, y) and the
/// crossing is located to within ~1e-14 relative in t. `observer(t, y)` is
/// called after every accepted step.
template <class State, class Rhs>
Result<State> integrate(Rhs&& f, double t0, State y0, double t1, const Options& opt = {},
                        const std::function<double(double, const State&)>& event = {},
                        const std::function<void(double, const State&)>& observer = {}) {
  Result<State> res;
  res.t = t0;
  res.y = y0;
  const double span = t1 - t0;
  if (span == 0.0) return res;
  const double dir = span > 0 ? 1.0 : -1.0;
  double h = opt.initial_step > 0.0 ? opt.initial_step : std::abs(span) / 100.0;
  h = std::min(h, opt.max_step);
  double t = t0;
  State y = y0;
  double ev_prev = event ? event(t, y) : 0.0;
  while (dir * (t1 - t) > 0.0) {
    if (++res.steps > opt.max_steps) throw NumericError("ODE integration exceeded max_steps");
    const double hs = std::min(h, std::abs(t1 - t));
    auto [ynew, errn] = detail::dopri_step<State>(f, t, y, dir * hs, opt);
    if (!std::isfinite(errn)) errn = 1e10;
    if (errn <= 1.0) {
      const double tnew = (std::abs(t1 - t) <= hs) ? t1 : t + dir * hs;
      if (event) {
        const double ev_new = event(tnew, ynew);
        if ((ev_prev > 0.0 && ev_new <= 0.0) || (ev_prev < 0.0 && ev_new >= 0.0)) {
          // Bisect the crossing using single steps from (t, y).
          double lo = 0.0;
          double hi = hs;
          State yhi = ynew;
          for (int it = 0; it < 200 && (hi - lo) > 1e-15 * std::max(1.0, std::abs(t)); ++it) {
            const double mid = 0.5 * (lo + hi);
            State ymid = detail::dopri_step<State>(f, t, y, dir * mid, opt).first;
            const double em = event(t + dir * mid, ymid);
            if ((ev_prev > 0.0 && em <= 0.0) || (ev_prev < 0.0 && em >= 0.0)) {
              hi = mid;
              yhi = ymid;
            } else {
              lo = mid;
            }
          }
          res.t = t + dir * hi;
          res.y = yhi;
          res.event = true;
          if (observer) observer(res.t, res.y);
          return res;
        }
        ev_prev = ev_new;
      }
      t = tnew;
      y = ynew;
      if (observer) observer(t, y);
    }
    const double fac = errn == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(errn, -0.2), 0.2, 5.0);
    h = std::min(hs * fac, opt.max_step);
    if (h < 1e-15 * std::max(1.0, std::abs(t)))
      throw NumericError("ODE step size underflow");
  }
  res.t = t;
  res.y = y;
  return res;
}

}  // namespace charblow::ode
