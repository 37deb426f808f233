#pragma once

#include "charblow/spectral.hpp"

namespace charblow {

struct AssumptionReport {
  bool a1_ok = false;  // a(0) has real, simple eigenvalues
  bool a2_ok = false;  // family p genuinely nonlinear at 0
  bool a3_ok = false;  // g(0) = 0
  double eigen_separation = 0.0;
  double gnl_value = 0.0;
  double g_at_zero_norm = 0.0;

  [[nodiscard]] bool all_ok() const { return a1_ok && a2_ok && a3_ok; }
};

struct AssumptionThresholds {
  double g_zero = 1e-10;
  double gnl = 1e-8;
};

/// Check strict hyperbolicity, genuine nonlinearity and g(0) = 0 at the origin. Eigen-solver failures are reported as a1_ok = false.
inline AssumptionReport verify_assumptions(const SystemModel& model,
                                           const AssumptionThresholds& thr = {}) {
  AssumptionReport rep;
  const Vec zero = model.origin();
  rep.g_at_zero_norm = model.g(zero).norm();
  rep.a3_ok = rep.g_at_zero_norm <= thr.g_zero;

  try {
    const SpectralFrame f = raw_eigensystem(model.a(zero));
    rep.eigen_separation = kInf;
    for (int i = 0; i + 1 < f.dim(); ++i)
      rep.eigen_separation = std::min(rep.eigen_separation, f.lambdas[i + 1] - f.lambdas[i]);
    rep.a1_ok = true;
  } catch (const Error&) {
    Eigen::EigenSolver<Mat> es(model.a(zero), false);
    auto ev = es.eigenvalues();
    rep.eigen_separation = 0.0;
    if (ev.size() > 1) {
      double best = kInf;
      for (int i = 0; i < ev.size(); ++i)
        for (int j = i + 1; j < ev.size(); ++j) best = std::min(best, std::abs(ev[i] - ev[j]));
      rep.eigen_separation = best;
    }
    rep.a1_ok = false;
    return rep;
  }

  try {
    const Spectrum spectrum(model);
    rep.gnl_value = spectrum.gnl_value();
    rep.a2_ok = std::abs(rep.gnl_value) > thr.gnl;
  } catch (const Error&) {
    rep.a2_ok = false;
  }
  return rep;
}

}  // namespace charblow
