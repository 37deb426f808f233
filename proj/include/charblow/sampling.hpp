#pragma once

#include <vector>

#include "charblow/types.hpp"

namespace charblow {

/// Radical inverse of `index` in the given prime base.
inline double radical_inverse(unsigned long long index, unsigned base) {
  double inv = 1.0 / base;
  double factor = inv;
  double result = 0.0;
  while (index > 0) {
    result += static_cast<double>(index % base) * factor;
    index /= base;
    factor *= inv;
  }
  return result;
}

/// Deterministic low-discrepancy points in the closed ball B_radius(0) of R^dim.
/// The origin is always the first point; the rest are Halton points of
/// [-1, 1]^dim kept when they fall in the unit ball, then scaled.
inline std::vector<Vec> ball_samples(int dim, double radius, int count) {
  static constexpr unsigned kPrimes[kMaxDim] = {2, 3, 5, 7};
  std::vector<Vec> out;
  if (count <= 0) return out;
  out.reserve(static_cast<std::size_t>(count));
  out.push_back(Vec::Zero(dim));
  unsigned long long index = 1;
  while (static_cast<int>(out.size()) < count) {
    Vec x(dim);
    for (int k = 0; k < dim; ++k) x[k] = 2.0 * radical_inverse(index, kPrimes[k]) - 1.0;
    ++index;
    if (x.norm() <= 1.0) out.push_back(radius * x);
  }
  return out;
}

}  // namespace charblow
