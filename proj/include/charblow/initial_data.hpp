#pragma once

// Blow-up initial data u0(x) = U(eps * alpha(x)) built from a compactly
// supported bump alpha and an integral curve U of r_p through the origin.

#include <optional>
#include <vector>

#include "charblow/ode.hpp"
#include "charblow/spectral.hpp"

namespace charblow {

/// alpha(x) = A exp(1 - 1 / (1 - 4 x^2)) on |x| < 1/2, zero elsewhere.
class BumpProfile {
 public:
  explicit BumpProfile(double amplitude = 1.0) : amplitude_(amplitude) {
    if (!(amplitude > 0.0) || !std::isfinite(amplitude))
      throw ConfigError("bump amplitude must be positive");
    locate_max_slope();
  }

  [[nodiscard]] double amplitude() const { return amplitude_; }
  [[nodiscard]] static constexpr double support_radius() { return 0.5; }
  [[nodiscard]] double max_dalpha() const { return max_dalpha_; }
  [[nodiscard]] double argmax_z() const { return argmax_z_; }
  /// Integral of |alpha'| over the line; alpha rises to A and falls back.
  [[nodiscard]] double total_variation() const { return 2.0 * amplitude_; }

  [[nodiscard]] double operator()(double x) const { return evaluate(x); }

  [[nodiscard]] double evaluate(double x) const {
    const double q = 1.0 - 4.0 * x * x;
    if (q <= 0.0) return 0.0;
    return amplitude_ * std::exp(1.0 - 1.0 / q);
  }

  [[nodiscard]] double derivative(double x) const {
    const double q = 1.0 - 4.0 * x * x;
    if (q <= 0.0) return 0.0;
    return evaluate(x) * (-8.0 * x / (q * q));
  }

 private:
  void locate_max_slope() {
    // Dense scan for a bracket, then golden-section refinement.
    constexpr int kScan = 4000;
    double best_x = 0.0;
    double best = -kInf;
    const double h = 1.0 / kScan;
    for (int k = 1; k < kScan; ++k) {
      const double x = -0.5 + k * h;
      const double v = derivative(x);
      if (v > best) {
        best = v;
        best_x = x;
      }
    }
    double lo = best_x - h;
    double hi = best_x + h;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = derivative(x1);
    double f2 = derivative(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = derivative(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = derivative(x1);
      }
    }
    argmax_z_ = 0.5 * (lo + hi);
    max_dalpha_ = std::max(derivative(argmax_z_), best);
  }

  double amplitude_ = 1.0;
  double max_dalpha_ = 0.0;
  double argmax_z_ = 0.0;
};

inline BumpProfile standard_bump(double amplitude = 1.0) { return BumpProfile(amplitude); }

/// Integral curve U' = r_p(U), U(0) = 0, on a uniform xi grid with cubic
/// Hermite interpolation through the stored slopes r_p(U(xi_k)).
class IntegralCurve {
 public:
  IntegralCurve() = default;

  IntegralCurve(const Spectrum& spectrum, double xi_max, double step) {
    if (!(xi_max > 0.0) || !(step > 0.0)) throw ConfigError("integral curve needs xi_max, step > 0");
    const int pp = spectrum.model().gnl();
    const double delta = spectrum.model().delta;
    auto rhs = [&](double, const Vec& U) { return Vec(spectrum.frame(U).r(pp)); };
    const int nmax = static_cast<int>(std::ceil(xi_max / step - 1e-9));
    step_ = step;

    auto branch = [&](double dir) {
      std::vector<Vec> pts;
      Vec U = spectrum.model().origin();
      for (int k = 0; k < nmax; ++k) {
        Vec next = ode::rk4_step(rhs, 0.0, U, dir * step);
        if (!(next.norm() < delta)) {
          truncated_ = true;
          break;
        }
        pts.push_back(next);
        U = next;
      }
      return pts;
    };
    std::vector<Vec> pos = branch(1.0);
    std::vector<Vec> neg = branch(-1.0);
    n_neg_ = static_cast<int>(neg.size());
    points_.reserve(neg.size() + pos.size() + 1);
    for (auto it = neg.rbegin(); it != neg.rend(); ++it) points_.push_back(*it);
    points_.push_back(spectrum.model().origin());
    for (auto& v : pos) points_.push_back(v);
    slopes_.reserve(points_.size());
    for (const auto& U : points_) slopes_.push_back(spectrum.frame(U).r(pp));
  }

  [[nodiscard]] double xi_min() const { return -n_neg_ * step_; }
  [[nodiscard]] double xi_max() const {
    return (static_cast<int>(points_.size()) - 1 - n_neg_) * step_;
  }
  [[nodiscard]] double step() const { return step_; }
  [[nodiscard]] bool truncated() const { return truncated_; }
  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] double xi_at(std::size_t k) const {
    return (static_cast<int>(k) - n_neg_) * step_;
  }
  [[nodiscard]] const Vec& point(std::size_t k) const { return points_[k]; }
  [[nodiscard]] const Vec& slope(std::size_t k) const { return slopes_[k]; }

  [[nodiscard]] bool contains(double xi) const {
    return xi >= xi_min() - 1e-14 && xi <= xi_max() + 1e-14;
  }

  [[nodiscard]] Vec operator()(double xi) const { return eval(xi, false); }
  /// dU/dxi of the interpolant.
  [[nodiscard]] Vec derivative(double xi) const { return eval(xi, true); }

 private:
  [[nodiscard]] Vec eval(double xi, bool deriv) const {
    if (points_.empty()) throw ConfigError("integral curve is empty");
    if (!contains(xi)) throw DomainError("xi outside the stored integral-curve range");
    const double s = xi / step_ + n_neg_;
    int k = static_cast<int>(std::floor(s));
    k = std::clamp(k, 0, static_cast<int>(points_.size()) - 2);
    if (points_.size() == 1) return deriv ? slopes_[0] : points_[0];
    const double t = s - k;
    const auto& p0 = points_[static_cast<std::size_t>(k)];
    const auto& p1 = points_[static_cast<std::size_t>(k) + 1];
    const auto& m0 = slopes_[static_cast<std::size_t>(k)];
    const auto& m1 = slopes_[static_cast<std::size_t>(k) + 1];
    const double h = step_;
    if (!deriv) {
      const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
      const double h10 = t * (1 - t) * (1 - t);
      const double h01 = t * t * (3 - 2 * t);
      const double h11 = t * t * (t - 1);
      return h00 * p0 + h10 * h * m0 + h01 * p1 + h11 * h * m1;
    }
    const double d00 = 6 * t * t - 6 * t;
    const double d10 = 3 * t * t - 4 * t + 1;
    const double d01 = -6 * t * t + 6 * t;
    const double d11 = 3 * t * t - 2 * t;
    return (d00 * p0 + d01 * p1) / h + d10 * m0 + d11 * m1;
  }

  double step_ = 0.0;
  int n_neg_ = 0;
  bool truncated_ = false;
  std::vector<Vec> points_;
  std::vector<Vec> slopes_;
};

/// Smallest |r_p(u)| over a sample of B_delta(0).
inline double min_rp_norm(const Spectrum& spectrum, int samples = 256) {
  double best = kInf;
  for (const Vec& u : ball_samples(spectrum.dim(), spectrum.model().delta, samples))
    best = std::min(best, spectrum.frame(u).r(spectrum.model().gnl()).norm());
  return best;
}

inline IntegralCurve integral_curve(const Spectrum& spectrum, double xi_max = 0.0,
                                    double step = 0.0) {
  if (xi_max <= 0.0) xi_max = 0.9 * spectrum.model().delta / min_rp_norm(spectrum);
  if (step <= 0.0) step = xi_max / 1024.0;
  return IntegralCurve(spectrum, xi_max, step);
}

/// u0(x) = U(eps alpha(x)); in the rescaled form u0((eps kappa)^{-1} x).
struct InitialDataSpec {
  double epsilon = 0.05;
  std::optional<double> kappa;
  bool rescaled = false;
  BumpProfile profile;
  IntegralCurve curve;

  InitialDataSpec(double eps, std::optional<double> kap, bool resc, BumpProfile prof,
                  IntegralCurve crv)
      : epsilon(eps), kappa(kap), rescaled(resc), profile(prof), curve(std::move(crv)) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ConfigError("epsilon must lie in (0, 1]");
    if (kappa && !(*kappa >= 0.0 && *kappa <= 1.0)) throw ConfigError("kappa must lie in [0, 1]");
    if (rescaled && !(kappa && *kappa > 0.0))
      throw ConfigError("rescaled data require kappa > 0");
    if (!curve.contains(epsilon * profile.amplitude()))
      throw DomainError("epsilon * amplitude exceeds the stored integral-curve range");
  }

  /// Spatial scale factor: x = scale * (bump coordinate).
  [[nodiscard]] double length_scale() const { return rescaled ? epsilon * (*kappa) : 1.0; }
  [[nodiscard]] double support_radius() const {
    return BumpProfile::support_radius() * length_scale();
  }
  /// Starting point of the characteristic through the steepest point of the data.
  [[nodiscard]] double peak_x() const { return profile.argmax_z() * length_scale(); }

  [[nodiscard]] Vec at(double x) const { return curve(epsilon * profile(x / length_scale())); }

  /// Exact x-derivative: eps alpha'(x) r_p(u0(x)) (divided by eps kappa when rescaled).
  [[nodiscard]] Vec derivative_at(double x) const {
    const double xb = x / length_scale();
    return epsilon * profile.derivative(xb) * curve.derivative(epsilon * profile(xb)) /
           length_scale();
  }
};

inline InitialDataSpec make_initial_data(const Spectrum& spectrum, double epsilon,
                                         std::optional<double> kappa = std::nullopt,
                                         bool rescaled = false, double amplitude = 1.0) {
  return InitialDataSpec(epsilon, kappa, rescaled, BumpProfile(amplitude),
                         integral_curve(spectrum));
}

inline std::vector<Vec> sample_data(const InitialDataSpec& spec, const std::vector<double>& x) {
  std::vector<Vec> out;
  out.reserve(x.size());
  for (double xi : x) out.push_back(spec.at(xi));
  return out;
}

}  // namespace charblow
