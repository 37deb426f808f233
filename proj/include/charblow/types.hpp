#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace charblow {

/// Largest state dimension supported by the fixed-capacity vector types.
inline constexpr int kMaxDim = 4;

/// State vector u (stack allocated, dimension chosen at runtime).
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
/// N x N matrix such as a(u), Dg(u) or the eigenvector frames.
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

//---------------------------------------------------------------------------//
// Error hierarchy. The CLI maps the three leaf families onto exit codes.
//---------------------------------------------------------------------------//
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input or configuration (exit code 1).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A structural assumption of the theory fails (exit code 2).
class TheoryError : public Error {
 public:
  using Error::Error;
};

/// Complex or nearly repeated eigenvalues.
class HyperbolicityError : public TheoryError {
 public:
  using TheoryError::TheoryError;
};

/// Numerical breakdown: non-finite values, stencils leaving the ball (exit code 3).
class NumericError : public Error {
 public:
  using Error::Error;
};

class DomainError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Dense rank-3 tensor T(i, j, k) with 0 <= i, j, k < n.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int n) : n_(n) { data_.fill(0.0); }

  [[nodiscard]] int size() const { return n_; }

  double& operator()(int i, int j, int k) {
    assert(i >= 0 && i < n_ && j >= 0 && j < n_ && k >= 0 && k < n_);
    return data_[static_cast<std::size_t>((i * n_ + j) * n_ + k)];
  }
  double operator()(int i, int j, int k) const {
    assert(i >= 0 && i < n_ && j >= 0 && j < n_ && k >= 0 && k < n_);
    return data_[static_cast<std::size_t>((i * n_ + j) * n_ + k)];
  }

  /// max_i sum_{j,k} |T(i,j,k)|
  [[nodiscard]] double row_abs_sum_max() const {
    double best = 0.0;
    for (int i = 0; i < n_; ++i) {
      double s = 0.0;
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k) s += std::abs((*this)(i, j, k));
      best = std::max(best, s);
    }
    return best;
  }

  /// sum_{j,k} T(i,j,k) w_j w_k
  template <class V>
  [[nodiscard]] double quadratic_form(int i, const V& w) const {
    double s = 0.0;
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) s += (*this)(i, j, k) * w[j] * w[k];
    return s;
  }

 private:
  int n_ = 0;
  std::array<double, kMaxDim * kMaxDim * kMaxDim> data_{};
};

inline Vec zeros(int n) { return Vec::Zero(n); }

inline Vec unit(int n, int k) {
  Vec e = Vec::Zero(n);
  e[k] = 1.0;
  return e;
}

}  // namespace charblow
