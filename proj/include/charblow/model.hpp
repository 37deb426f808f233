#pragma once

// Quasilinear hyperbolic systems u_t + a(u) u_x = g(u) and the built-in registry.

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "charblow/types.hpp"

namespace charblow {

using ParamMap = std::map<std::string, double>;

/// The pair (a, g) together with the working ball radius and the genuinely
/// nonlinear family. Immutable after construction; copies share nothing
/// mutable, so a model can be read concurrently from scan workers.
struct SystemModel {
  std::string name;
  ParamMap params;

  int dim = 1;
  double delta = 0.5;  // radius of the working ball; B_{2 delta}(0) is the state domain
  int p = 1;           // genuinely nonlinear family, 1-based

  std::function<Mat(const Vec&)> a;
  std::function<Vec(const Vec&)> g;
  /// Optional d/ds a(u + s d) at s = 0. Finite differences are used when empty.
  std::function<Mat(const Vec&, const Vec&)> da_dir;
  /// Optional Dg(u). Finite differences are used when empty.
  std::function<Mat(const Vec&)> dg;
  /// Optional closed-form eigenvalues sorted ascending; only used as a fast
  /// path for time-step control.
  std::function<Vec(const Vec&)> speeds;

  /// Background state in physical variables and the physical Jacobian/source,
  /// kept so the variable shift can be checked.
  Vec background;
  std::function<Mat(const Vec&)> physical_a;
  std::function<Vec(const Vec&)> physical_g;

  [[nodiscard]] int gnl() const { return p - 1; }

  [[nodiscard]] Vec origin() const { return Vec::Zero(dim); }

  /// Directional derivative of a at u in direction d.
  [[nodiscard]] Mat a_derivative(const Vec& u, const Vec& d, double step = 1e-6) const {
    if (da_dir) return da_dir(u, d);
    return (a(u + step * d) - a(u - step * d)) / (2.0 * step);
  }

  [[nodiscard]] Mat source_jacobian(const Vec& u, double step = 1e-6) const {
    if (dg) return dg(u);
    Mat J(dim, dim);
    for (int k = 0; k < dim; ++k) {
      Vec e = unit(dim, k);
      J.col(k) = (g(u + step * e) - g(u - step * e)) / (2.0 * step);
    }
    return J;
  }

  /// Spectral radius bound used for CFL control.
  [[nodiscard]] double max_speed(const Vec& u) const {
    if (speeds) return speeds(u).cwiseAbs().maxCoeff();
    Eigen::EigenSolver<Mat> es(a(u), false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
};

namespace detail {

inline double param_or(const ParamMap& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

inline void check_known_params(const std::string& model, const ParamMap& params,
                               const std::vector<std::string>& known) {
  for (const auto& [key, value] : params) {
    bool found = false;
    for (const auto& k : known) found = found || (k == key);
    if (!found) throw ConfigError("model '" + model + "' has no parameter '" + key + "'");
    if (!std::isfinite(value))
      throw ConfigError("model parameter '" + key + "' must be finite");
  }
}

inline Mat mat1(double v) {
  Mat m(1, 1);
  m(0, 0) = v;
  return m;
}

inline Vec vec1(double v) {
  Vec x(1);
  x[0] = v;
  return x;
}

inline SystemModel make_scalar(std::string name, ParamMap params, double beta, double offset) {
  SystemModel m;
  m.name = std::move(name);
  m.params = std::move(params);
  m.dim = 1;
  m.delta = 0.5;
  m.p = 1;
  m.a = [](const Vec& u) { return mat1(u[0]); };
  m.da_dir = [](const Vec&, const Vec& d) { return mat1(d[0]); };
  m.g = [beta, offset](const Vec& u) { return vec1(-beta * u[0] + offset); };
  m.dg = [beta](const Vec&) { return mat1(-beta); };
  m.speeds = [](const Vec& u) { return vec1(u[0]); };
  m.background = Vec::Zero(1);
  m.physical_a = m.a;
  m.physical_g = m.g;
  return m;
}

/// x^e with exact repeated multiplication for small integer exponents.
inline double fast_pow(double x, double e) {
  const double r = std::round(e);
  if (r == e && std::abs(r) <= 8.0) {
    double out = 1.0;
    for (int k = 0; k < static_cast<int>(std::abs(r)); ++k) out *= x;
    return r < 0.0 ? 1.0 / out : out;
  }
  return std::pow(x, e);
}

// Isentropic Euler with linear friction, p(rho) = rho^gamma, in the shifted
// variables u = (rho - rho_bar, v).
inline SystemModel make_euler_friction(ParamMap params) {
  const double gam = param_or(params, "gamma", 2.0);
  const double rho_bar = param_or(params, "rho_bar", 1.0);
  const double beta = param_or(params, "beta", 0.5);
  if (!(gam >= 1.0)) throw ConfigError("euler_friction: gamma must be >= 1");
  if (!(rho_bar > 0.0)) throw ConfigError("euler_friction: rho_bar must be > 0");
  if (!(beta >= 0.0)) throw ConfigError("euler_friction: beta must be >= 0");
  params["gamma"] = gam;
  params["rho_bar"] = rho_bar;
  params["beta"] = beta;

  SystemModel m;
  m.name = "euler_friction";
  m.params = params;
  m.dim = 2;
  // Strictly hyperbolic exactly where rho > 0, i.e. on |u| < rho_bar.
  m.delta = 0.5 * rho_bar;
  m.p = 2;

  auto phys_a = [gam](const Vec& s) {
    const double rho = s[0];
    const double v = s[1];
    Mat A(2, 2);
    A << v, rho, gam * fast_pow(rho, gam - 2.0), v;
    return A;
  };
  auto phys_g = [beta](const Vec& s) {
    Vec out(2);
    out << 0.0, -beta * s[1];
    return out;
  };
  Vec bg(2);
  bg << rho_bar, 0.0;
  m.background = bg;
  m.physical_a = phys_a;
  m.physical_g = phys_g;

  m.a = [gam, rho_bar](const Vec& u) {
    const double rho = rho_bar + u[0];
    Mat A(2, 2);
    A << u[1], rho, gam * fast_pow(rho, gam - 2.0), u[1];
    return A;
  };
  m.g = [phys_g, bg](const Vec& u) { return phys_g(Vec(u + bg)); };
  m.da_dir = [gam, rho_bar](const Vec& u, const Vec& d) {
    const double rho = rho_bar + u[0];
    Mat D(2, 2);
    D << d[1], d[0], gam * (gam - 2.0) * fast_pow(rho, gam - 3.0) * d[0], d[1];
    return D;
  };
  m.dg = [beta](const Vec&) {
    Mat D(2, 2);
    D << 0.0, 0.0, 0.0, -beta;
    return D;
  };
  m.speeds = [gam, rho_bar](const Vec& u) {
    const double c = std::sqrt(gam * fast_pow(rho_bar + u[0], gam - 1.0));
    Vec s(2);
    s << u[1] - c, u[1] + c;
    return s;
  };
  return m;
}

// 2x2 relaxation system: the second component relaxes toward h(u_1) = u_1^2 / 2
// with time constant tau; a(u) = [[u_1, 1], [c^2, u_1]].
inline SystemModel make_relax_2x2(ParamMap params) {
  const double tau = param_or(params, "tau", 1.0);
  const double c = param_or(params, "c", 1.0);
  if (!(tau > 0.0)) throw ConfigError("relax_2x2: tau must be > 0");
  if (!(c > 0.0)) throw ConfigError("relax_2x2: c must be > 0");
  params["tau"] = tau;
  params["c"] = c;

  SystemModel m;
  m.name = "relax_2x2";
  m.params = params;
  m.dim = 2;
  m.delta = 0.5;
  m.p = 2;
  m.a = [c](const Vec& u) {
    Mat A(2, 2);
    A << u[0], 1.0, c * c, u[0];
    return A;
  };
  m.da_dir = [](const Vec&, const Vec& d) {
    Mat D(2, 2);
    D << d[0], 0.0, 0.0, d[0];
    return D;
  };
  m.g = [tau](const Vec& u) {
    Vec out(2);
    out << 0.0, (0.5 * u[0] * u[0] - u[1]) / tau;
    return out;
  };
  m.dg = [tau](const Vec& u) {
    Mat D(2, 2);
    D << 0.0, 0.0, u[0] / tau, -1.0 / tau;
    return D;
  };
  m.speeds = [c](const Vec& u) {
    Vec s(2);
    s << u[0] - c, u[0] + c;
    return s;
  };
  m.background = Vec::Zero(2);
  m.physical_a = m.a;
  m.physical_g = m.g;
  return m;
}

}  // namespace detail

/// Names accepted by builtin_model. `burgers_offset` violates g(0) = 0 on
/// purpose and exists to exercise the assumption gate.
inline const std::vector<std::string>& builtin_model_names() {
  static const std::vector<std::string> names{"burgers", "burgers_damped", "euler_friction",
                                              "relax_2x2", "burgers_offset"};
  return names;
}

/// Instantiate a registry model. Unknown parameters and out-of-range values
/// raise ConfigError; the returned params map holds every resolved value.
inline SystemModel builtin_model(const std::string& name, const ParamMap& params = {}) {
  if (name == "burgers") {
    detail::check_known_params(name, params, {});
    return detail::make_scalar(name, {}, 0.0, 0.0);
  }
  if (name == "burgers_damped") {
    detail::check_known_params(name, params, {"beta"});
    const double beta = detail::param_or(params, "beta", 0.1);
    if (!(beta >= 0.0)) throw ConfigError("burgers_damped: beta must be >= 0");
    return detail::make_scalar(name, {{"beta", beta}}, beta, 0.0);
  }
  if (name == "burgers_offset") {
    detail::check_known_params(name, params, {"beta", "offset"});
    const double beta = detail::param_or(params, "beta", 0.0);
    const double offset = detail::param_or(params, "offset", 1.0);
    return detail::make_scalar(name, {{"beta", beta}, {"offset", offset}}, beta, offset);
  }
  if (name == "euler_friction") {
    detail::check_known_params(name, params, {"gamma", "rho_bar", "beta"});
    return detail::make_euler_friction(params);
  }
  if (name == "relax_2x2") {
    detail::check_known_params(name, params, {"tau", "c"});
    return detail::make_relax_2x2(params);
  }
  throw ConfigError("unknown model '" + name + "'");
}

/// Shrink the working ball. Enlarging it is refused: the default radius is
/// the largest one checked for strict hyperbolicity.
inline SystemModel with_delta(SystemModel model, double delta) {
  if (!(delta > 0.0) || delta > model.delta)
    throw ConfigError("delta may only be reduced (0 < delta <= " + std::to_string(model.delta) +
                      ")");
  model.delta = delta;
  return model;
}

}  // namespace charblow
