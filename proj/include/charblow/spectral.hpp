#pragma once

// Eigen-frames (lambda_i, l_i, r_i) of a(u) with |l_i| = 1, l_i r_j = delta_ij,
// eigenvalues ascending, and a sign convention anchored at the origin.

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

#include "charblow/model.hpp"
#include "charblow/sampling.hpp"

namespace charblow {

struct SpectralFrame {
  Vec u;
  Vec lambdas;  // ascending
  Mat L;        // row i is l_i
  Mat R;        // column i is r_i
  Mat gram;     // gram(j, i) = <l_j, l_i>

  [[nodiscard]] int dim() const { return static_cast<int>(lambdas.size()); }
  [[nodiscard]] Vec l(int i) const { return L.row(i).transpose(); }
  [[nodiscard]] Vec r(int i) const { return R.col(i); }
};

/// Derivatives of the frame at a point. Entries are central differences of
/// oriented frames, so they are linear in the direction.
struct FrameDerivatives {
  Mat dlambda;               // row i = D lambda_i(u)
  std::vector<Mat> dR;       // dR[k](:, i) = d r_i / d u_k
  std::vector<Mat> dL;       // dL[k](i, :) = d l_i / d u_k
  double step = 0.0;

  [[nodiscard]] Vec dr_dir(int i, const Vec& d) const {
    Vec out = Vec::Zero(dlambda.rows());
    for (std::size_t k = 0; k < dR.size(); ++k) out += d[static_cast<int>(k)] * dR[k].col(i);
    return out;
  }
  [[nodiscard]] Vec dl_dir(int i, const Vec& d) const {
    Vec out = Vec::Zero(dlambda.rows());
    for (std::size_t k = 0; k < dL.size(); ++k)
      out += d[static_cast<int>(k)] * dL[k].row(i).transpose();
    return out;
  }
};

struct EigenTolerances {
  double imag = 1e-10;        // relative to the spectral scale
  double separation = 1e-8;   // minimal eigenvalue gap, relative to the spectral scale
};

/// Real, simple eigensystem of a matrix without any sign convention applied.
/// Throws HyperbolicityError on complex or nearly repeated eigenvalues.
inline SpectralFrame raw_eigensystem(const Mat& A, const EigenTolerances& tol = {}) {
  const int n = static_cast<int>(A.rows());
  SpectralFrame f;
  if (!A.allFinite()) throw NumericError("non-finite entries in a(u)");
  if (n == 1) {
    f.lambdas = Vec::Constant(1, A(0, 0));
    f.L = Mat::Ones(1, 1);
    f.R = Mat::Ones(1, 1);
    f.gram = Mat::Ones(1, 1);
    return f;
  }
  Eigen::EigenSolver<Mat> es(A, true);
  if (es.info() != Eigen::Success) throw HyperbolicityError("eigen-solver failed on a(u)");
  const auto ev = es.eigenvalues();
  const auto evec = es.eigenvectors();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (int i = 0; i < n; ++i) {
    if (std::abs(ev[i].imag()) > tol.imag * scale)
      throw HyperbolicityError("a(u) has complex eigenvalues");
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return ev[x].real() < ev[y].real(); });

  f.lambdas.resize(n);
  f.R.resize(n, n);
  for (int i = 0; i < n; ++i) {
    f.lambdas[i] = ev[order[static_cast<std::size_t>(i)]].real();
    f.R.col(i) = evec.col(order[static_cast<std::size_t>(i)]).real();
  }
  for (int i = 0; i + 1 < n; ++i) {
    if (f.lambdas[i + 1] - f.lambdas[i] <= tol.separation * scale) {
      std::ostringstream msg;
      msg << "eigenvalues of a(u) not separated: " << f.lambdas[i] << ", " << f.lambdas[i + 1];
      throw HyperbolicityError(msg.str());
    }
  }
  Eigen::FullPivLU<Mat> lu(f.R);
  if (!lu.isInvertible()) throw HyperbolicityError("eigenvectors of a(u) are degenerate");
  f.L = lu.inverse();
  for (int i = 0; i < n; ++i) {
    const double nl = f.L.row(i).norm();
    f.L.row(i) /= nl;
    f.R.col(i) *= nl;
  }
  f.gram = f.L * f.L.transpose();
  return f;
}

namespace detail {

inline void flip(SpectralFrame& f, int i) {
  f.L.row(i) *= -1.0;
  f.R.col(i) *= -1.0;
}

inline void align_to(SpectralFrame& f, const SpectralFrame& reference) {
  for (int i = 0; i < f.dim(); ++i)
    if (f.L.row(i).dot(reference.L.row(i)) < 0.0) flip(f, i);
}

}  // namespace detail

/// Oriented eigen-frame field of a model on B_{2 delta}(0).
///
/// At the origin each l_i has its first non-negligible component positive,
/// except l_p, r_p which are signed so that <D lambda_p(0), r_p(0)> < 0.
/// Elsewhere each l_i is signed by maximal overlap with l_i(0).
class Spectrum {
 public:
  explicit Spectrum(SystemModel model, EigenTolerances tol = {})
      : model_(std::move(model)), tol_(tol) {
    if (model_.dim < 1 || model_.dim > kMaxDim)
      throw ConfigError("state dimension must be in 1.." + std::to_string(kMaxDim));
    if (model_.p < 1 || model_.p > model_.dim) throw ConfigError("GNL index p out of range");
    const Vec zero = model_.origin();
    origin_ = raw_eigensystem(model_.a(zero), tol_);
    origin_.u = zero;
    for (int i = 0; i < origin_.dim(); ++i) {
      for (int j = 0; j < origin_.dim(); ++j) {
        const double c = origin_.L(i, j);
        if (std::abs(c) > 1e-12) {
          if (c < 0.0) detail::flip(origin_, i);
          break;
        }
      }
    }
    const int pp = model_.gnl();
    Vec dl = Vec::Zero(model_.dim);
    const double h = default_step();
    for (int k = 0; k < model_.dim; ++k) {
      const Vec e = unit(model_.dim, k);
      const Vec lp = raw_eigensystem(model_.a(zero + h * e), tol_).lambdas;
      const Vec lm = raw_eigensystem(model_.a(zero - h * e), tol_).lambdas;
      dl[k] = (lp[pp] - lm[pp]) / (2.0 * h);
    }
    gnl_value_ = dl.dot(origin_.r(pp));
    if (gnl_value_ > 0.0) {
      detail::flip(origin_, pp);
      gnl_value_ = -gnl_value_;
    }
  }

  [[nodiscard]] const SystemModel& model() const { return model_; }
  [[nodiscard]] int dim() const { return model_.dim; }
  [[nodiscard]] const SpectralFrame& origin_frame() const { return origin_; }
  /// <D lambda_p(0), r_p(0)> after orientation (never positive).
  [[nodiscard]] double gnl_value() const { return gnl_value_; }
  [[nodiscard]] double default_step() const { return 1e-5 * model_.delta; }

  [[nodiscard]] SpectralFrame frame(const Vec& u) const {
    if (u.size() != model_.dim) throw ConfigError("state has wrong dimension");
    if (u.norm() > 2.0 * model_.delta * (1.0 + 1e-12))
      throw DomainError("state leaves the ball B_{2 delta}(0)");
    SpectralFrame f = raw_eigensystem(model_.a(u), tol_);
    f.u = u;
    detail::align_to(f, origin_);
    return f;
  }

  /// Eigenvalues only (sorted, no eigenvectors).
  [[nodiscard]] Vec eigenvalues(const Vec& u) const {
    if (model_.speeds) return model_.speeds(u);
    return raw_eigensystem(model_.a(u), tol_).lambdas;
  }

  [[nodiscard]] FrameDerivatives derivatives(const Vec& u, double step = 0.0) const {
    const double h = step > 0.0 ? step : default_step();
    if (u.norm() + h > 2.0 * model_.delta)
      throw DomainError("finite-difference stencil leaves the ball B_{2 delta}(0)");
    const int n = model_.dim;
    const SpectralFrame base = frame(u);
    FrameDerivatives d;
    d.step = h;
    d.dlambda.resize(n, n);
    for (int k = 0; k < n; ++k) {
      const Vec e = unit(n, k);
      SpectralFrame fp = frame(u + h * e);
      SpectralFrame fm = frame(u - h * e);
      detail::align_to(fp, base);
      detail::align_to(fm, base);
      d.dlambda.col(k) = (fp.lambdas - fm.lambdas) / (2.0 * h);
      d.dR.push_back((fp.R - fm.R) / (2.0 * h));
      d.dL.push_back((fp.L - fm.L) / (2.0 * h));
    }
    return d;
  }

  /// c_lambda = min_{i != p} inf_{u in B_delta(0)} |lambda_i(u) - lambda_p(u)|,
  /// estimated on a deterministic sample. +inf when N = 1.
  [[nodiscard]] double gap(int samples = 4096) const {
    if (model_.dim == 1) return kInf;
    const int pp = model_.gnl();
    double best = kInf;
    for (const Vec& u : ball_samples(model_.dim, model_.delta, samples)) {
      const Vec lam = raw_eigensystem(model_.a(u), tol_).lambdas;
      for (int i = 0; i < model_.dim; ++i)
        if (i != pp) best = std::min(best, std::abs(lam[i] - lam[pp]));
    }
    if (!(best > tol_.separation)) throw TheoryError("spectral gap c_lambda is not positive");
    return best;
  }

 private:
  SystemModel model_;
  EigenTolerances tol_;
  SpectralFrame origin_;
  double gnl_value_ = 0.0;
};

inline SpectralFrame eigenframe(const SystemModel& model, const Vec& u) {
  return Spectrum(model).frame(u);
}

inline FrameDerivatives frame_derivatives(const SystemModel& model, const Vec& u,
                                          double step = 0.0) {
  return Spectrum(model).derivatives(u, step);
}

inline double spectral_gap(const SystemModel& model, int samples = 4096) {
  return Spectrum(model).gap(samples);
}

}  // namespace charblow
