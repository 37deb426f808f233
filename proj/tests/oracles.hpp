#pragma once

// Reference computations used by the tests. Nothing here calls the
// coefficient formulas of the library; derivatives are plain central
// differences of a, g and of oriented eigen-frames.

#include <random>

#include "charblow/charblow.hpp"

namespace oracle {

using charblow::Mat;
using charblow::Spectrum;
using charblow::SpectralFrame;
using charblow::SystemModel;
using charblow::Vec;

// Bump reference constants (50-digit quadrature / root solve).
inline constexpr double kMaxDalpha = 4.34071417142067738818844073963;
inline constexpr double kArgmaxZ = -0.379917842825796273665593875327;

/// Uniform sample of the ball of radius r in R^n.
inline Vec ball_point(std::mt19937_64& rng, int n, double r) {
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = nd(rng);
  return v / v.norm() * r * std::pow(ud(rng), 1.0 / n);
}

inline Vec random_vec(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = ud(rng);
  return v;
}

/// Frame at u + d, sign-aligned with `ref`.
inline SpectralFrame aligned(const Spectrum& sp, const Vec& u, const SpectralFrame& ref) {
  SpectralFrame f = sp.frame(u);
  for (int i = 0; i < f.dim(); ++i)
    if (f.L.row(i).dot(ref.L.row(i)) < 0.0) {
      f.L.row(i) *= -1.0;
      f.R.col(i) *= -1.0;
    }
  return f;
}

/// Directional derivative of l_i along d.
inline Vec dl(const Spectrum& sp, const SpectralFrame& f, int i, const Vec& d, double h) {
  const SpectralFrame p = aligned(sp, f.u + h * d, f);
  const SpectralFrame m = aligned(sp, f.u - h * d, f);
  return (p.L.row(i) - m.L.row(i)).transpose() / (2.0 * h);
}

/// <D lambda_i(u), d>.
inline double dlambda(const Spectrum& sp, const Vec& u, int i, const Vec& d, double h) {
  return (sp.eigenvalues(u + h * d)[i] - sp.eigenvalues(u - h * d)[i]) / (2.0 * h);
}

/// c_ijk = l_i (d/ds a(u + s r_k)) r_j by differencing a itself.
inline double c(const SystemModel& m, const SpectralFrame& f, int i, int j, int k, double h) {
  const Mat D = (m.a(f.u + h * f.r(k)) - m.a(f.u - h * f.r(k))) / (2.0 * h);
  return f.l(i).dot(D * f.r(j));
}

inline Mat Dg(const SystemModel& m, const Vec& u, double h) {
  Mat J(m.dim, m.dim);
  for (int k = 0; k < m.dim; ++k) {
    const Vec e = Vec::Unit(m.dim, k);
    J.col(k) = (m.g(u + h * e) - m.g(u - h * e)) / (2.0 * h);
  }
  return J;
}

/// Quadratic part of L_i w_i derived from u_t + a u_x = g with u_x = sum_k w_k r_k:
///   -sum c_ijk w_j w_k + sum_k (lambda_i - lambda_k) w_k <Dl_i[r_k], sum_j w_j r_j>.
inline double wave_quadratic(const Spectrum& sp, const SpectralFrame& f, int i, const Vec& w,
                             double h) {
  const int n = f.dim();
  const SystemModel& m = sp.model();
  const Vec ux = f.R * w;
  double s = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) s -= c(m, f, i, j, k, h) * w[j] * w[k];
  for (int k = 0; k < n; ++k)
    s += (f.lambdas[i] - f.lambdas[k]) * w[k] * dl(sp, f, i, f.r(k), h).dot(ux);
  return s;
}

/// Linear (source) part of L_i w_i: l_i Dg u_x + <Dl_i[g], u_x>.
inline double wave_linear(const Spectrum& sp, const SpectralFrame& f, int i, const Vec& w, double h) {
  const SystemModel& m = sp.model();
  const Vec ux = f.R * w;
  const Vec g = m.g(f.u);
  double s = f.l(i).dot(Dg(m, f.u, h) * ux);
  if (g.norm() > 0.0) s += dl(sp, f, i, g, h).dot(ux);
  return s;
}

/// Scalar model with constant speed mu and no source (linear transport).
inline SystemModel constant_speed(double mu) {
  SystemModel m;
  m.name = "constant_speed";
  m.dim = 1;
  m.delta = 0.5;
  m.p = 1;
  m.a = [mu](const Vec&) { return Mat::Constant(1, 1, mu); };
  m.g = [](const Vec& u) { return Vec::Zero(u.size()); };
  m.background = Vec::Zero(1);
  m.physical_a = m.a;
  m.physical_g = m.g;
  return m;
}

/// 2x2 constant-coefficient system a = [[0, 1], [mu^2, 0]] (speeds -mu, mu).
inline SystemModel constant_wave(double mu) {
  SystemModel m;
  m.name = "constant_wave";
  m.dim = 2;
  m.delta = 0.5;
  m.p = 2;
  m.a = [mu](const Vec&) {
    Mat A(2, 2);
    A << 0.0, 1.0, mu * mu, 0.0;
    return A;
  };
  m.g = [](const Vec& u) { return Vec::Zero(u.size()); };
  m.background = Vec::Zero(2);
  m.physical_a = m.a;
  m.physical_g = m.g;
  return m;
}

/// Exact lifespan of Burgers data eps * alpha: 1 / (eps max alpha').
inline double burgers_lifespan(double eps) { return 1.0 / (eps * kMaxDalpha); }

/// Exact lifespan of w' = -beta w - w^2 from w0 < -beta: -(1/beta) ln(1 + beta / w0).
inline double damped_lifespan(double beta, double w0) { return -std::log1p(beta / w0) / beta; }

}  // namespace oracle
