#pragma once

// Interaction coefficients of the wave decomposition w = sum_j w_j r_j(u):
//
//   L_i w_i = sum_{j,k} gamma_ijk w_j w_k + sum_k G_ik w_k,
//
// the symmetrised tensor Gamma_ijk (Gamma_ijj = 0) and the global bounds
// over B_delta(0) that feed the constant chain.

#include "charblow/spectral.hpp"

namespace charblow {

struct CoefficientSet {
  Vec u;
  SpectralFrame frame;
  Tensor3 c;
  Tensor3 gamma;
  Tensor3 Gamma;
  Mat G;
  Mat dlambda_r;  // dlambda_r(i, k) = <D lambda_i(u), r_k(u)>
};

/// c_ijk = l_i (d/ds a(u + s r_k)) r_j at s = 0.
inline Tensor3 c_tensor(const SystemModel& model, const SpectralFrame& f, double step) {
  const int n = f.dim();
  Tensor3 c(n);
  for (int k = 0; k < n; ++k) {
    const Vec rk = f.r(k);
    if (!model.da_dir && f.u.norm() + step * rk.norm() > 2.0 * model.delta)
      throw DomainError("c_tensor stencil leaves the ball B_{2 delta}(0)");
    const Mat D = model.a_derivative(f.u, rk, step);
    const Mat LDR = f.L * D * f.R;  // (i, j) -> l_i D r_j
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) c(i, j, k) = LDR(i, j);
  }
  return c;
}

/// gamma_ijk assembled from c_ijk, the eigenvalues and the Gram entries <l_j, l_i>.
inline Tensor3 gamma_tensor(const SpectralFrame& f, const Tensor3& c) {
  const int n = f.dim();
  const Vec& lam = f.lambdas;
  Tensor3 g(n);
  for (int i = 0; i < n; ++i) {
    g(i, i, i) = -c(i, i, i);
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      double s = -c(i, i, k) - c(i, k, i);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        s += (lam[i] - lam[k]) / (lam[j] - lam[i]) * c(i, j, k) * f.gram(j, i);
      }
      g(i, i, k) = 0.5 * s;
      g(i, k, i) = 0.5 * s;
    }
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      for (int k = j; k < n; ++k) {
        if (k == i) continue;
        const double v = 0.5 * (-(lam[j] - lam[k]) / (lam[j] - lam[i]) * c(i, j, k) -
                                (lam[k] - lam[j]) / (lam[k] - lam[i]) * c(i, k, j));
        g(i, j, k) = v;
        g(i, k, j) = v;
      }
    }
  }
  return g;
}

/// Gamma_ijk = gamma_ijk + (delta_ij <Dl_i, r_k> + delta_ik <Dl_i, r_j>) / 2, the
/// symmetric tensor with sum_jk gamma w_j w_k + w_i sum_k w_k <Dl_i, r_k> = sum_jk Gamma w_j w_k.
inline Tensor3 Gamma_tensor(const Tensor3& gamma, const Mat& dlambda_r) {
  const int n = gamma.size();
  Tensor3 G = gamma;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      G(i, i, k) += 0.5 * dlambda_r(i, k);
      G(i, k, i) += 0.5 * dlambda_r(i, k);
    }
  return G;
}

/// G_ik obtained by collecting the coefficient of w_k in
///   sum_k l_i Dg r_k w_k + sum_{j != i, k} c_ijk (l_k g) (<l_j, l_i> w_i - w_j) / (lambda_j - lambda_i).
inline Mat G_matrix(const SpectralFrame& f, const Tensor3& c, const Mat& Dg, const Vec& g) {
  const int n = f.dim();
  const Vec& lam = f.lambdas;
  Mat G = f.L * Dg * f.R;
  const Vec lg = f.L * g;  // lg[m] = l_m g
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double cg = 0.0;
      for (int m = 0; m < n; ++m) cg += c(i, j, m) * lg[m];
      cg /= (lam[j] - lam[i]);
      G(i, i) += cg * f.gram(j, i);
      G(i, j) -= cg;
    }
  }
  return G;
}

inline CoefficientSet coefficients_at(const Spectrum& spectrum, const Vec& u, double step = 0.0) {
  const SystemModel& model = spectrum.model();
  const double h = step > 0.0 ? step : spectrum.default_step();
  CoefficientSet cs;
  cs.u = u;
  cs.frame = spectrum.frame(u);
  const FrameDerivatives d = spectrum.derivatives(u, h);
  cs.dlambda_r = d.dlambda * cs.frame.R;
  cs.c = c_tensor(model, cs.frame, h);
  cs.gamma = gamma_tensor(cs.frame, cs.c);
  cs.Gamma = Gamma_tensor(cs.gamma, cs.dlambda_r);
  cs.G = G_matrix(cs.frame, cs.c, model.source_jacobian(u, h), model.g(u));
  return cs;
}

inline Tensor3 c_tensor(const Spectrum& spectrum, const Vec& u, double step = 0.0) {
  const double h = step > 0.0 ? step : spectrum.default_step();
  return c_tensor(spectrum.model(), spectrum.frame(u), h);
}
inline Tensor3 gamma_tensor(const Spectrum& spectrum, const Vec& u, double step = 0.0) {
  return coefficients_at(spectrum, u, step).gamma;
}
inline Tensor3 Gamma_tensor(const Spectrum& spectrum, const Vec& u, double step = 0.0) {
  return coefficients_at(spectrum, u, step).Gamma;
}
inline Mat G_matrix(const Spectrum& spectrum, const Vec& u, double step = 0.0) {
  return coefficients_at(spectrum, u, step).G;
}

/// Largest violations of the structural identities over a ball sample:
/// gamma_ijk = gamma_ikj, gamma_ijj = -delta_ij <D lambda_i, r_i>, Gamma_ijj = 0.
struct InvariantReport {
  int samples = 0;
  double gamma_symmetry = 0.0;
  double gamma_relation = 0.0;
  double Gamma_relation = 0.0;
};

inline InvariantReport check_invariants(const Spectrum& spectrum, int samples = 1000) {
  const SystemModel& model = spectrum.model();
  const int n = model.dim;
  InvariantReport rep;
  rep.samples = samples;
  for (const Vec& u : ball_samples(n, model.delta, samples)) {
    const CoefficientSet cs = coefficients_at(spectrum, u);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k)
          rep.gamma_symmetry =
              std::max(rep.gamma_symmetry, std::abs(cs.gamma(i, j, k) - cs.gamma(i, k, j)));
        const double rel = cs.gamma(i, j, j) + (i == j ? cs.dlambda_r(i, i) : 0.0);
        rep.gamma_relation = std::max(rep.gamma_relation, std::abs(rel));
        rep.Gamma_relation = std::max(rep.Gamma_relation, std::abs(cs.Gamma(i, j, j)));
      }
  }
  return rep;
}

/// Suprema over B_delta(0) used by the constant chain.
struct ModelBounds {
  double c_bar = 1.0;  // max{1, sup max_i sum_jk |c_ijk|}
  double gamma_bar = 0.0;
  double Gamma_bar = 0.0;
  double G_bar = 0.0;
  double r_bar = 0.0;  // sup sum_k |r_k|
  double c_lambda = kInf;
  double lambda1_0 = 0.0;
  double lambdaN_0 = 0.0;
  double gamma_ppp_0 = 0.0;
  double delta = 0.0;
  int samples = 0;
};

inline ModelBounds model_bounds(const Spectrum& spectrum, int samples = 4096) {
  const SystemModel& model = spectrum.model();
  const int n = model.dim;
  const int pp = model.gnl();
  ModelBounds b;
  b.samples = samples;
  b.delta = model.delta;
  double c_sup = 0.0;
  for (const Vec& u : ball_samples(n, model.delta, samples)) {
    const CoefficientSet cs = coefficients_at(spectrum, u);
    c_sup = std::max(c_sup, cs.c.row_abs_sum_max());
    b.gamma_bar = std::max(b.gamma_bar, cs.gamma.row_abs_sum_max());
    b.Gamma_bar = std::max(b.Gamma_bar, cs.Gamma.row_abs_sum_max());
    b.G_bar = std::max(b.G_bar, cs.G.cwiseAbs().rowwise().sum().maxCoeff());
    double rs = 0.0;
    for (int k = 0; k < n; ++k) rs += cs.frame.R.col(k).norm();
    b.r_bar = std::max(b.r_bar, rs);
  }
  b.c_bar = std::max(1.0, c_sup);
  b.c_lambda = spectrum.gap(samples);
  const CoefficientSet c0 = coefficients_at(spectrum, model.origin());
  b.lambda1_0 = c0.frame.lambdas[0];
  b.lambdaN_0 = c0.frame.lambdas[n - 1];
  b.gamma_ppp_0 = c0.gamma(pp, pp, pp);
  if (!(b.gamma_ppp_0 > 0.0))
    throw TheoryError("gamma_ppp(0) must be positive after orientation");
  return b;
}

}  // namespace charblow
