#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <string>

#include "wpc/error.hpp"

namespace wpc {

/// Principal branch W0 of the Lambert W function: the w >= -1 solving w e^w = x.
///
/// Defined for x >= -1/e. Arguments within 1e-15 below the branch point are
/// clamped onto it. Halley iteration from a branch-aware initial guess; the
/// result satisfies |w e^w - x| <= 1e-12 max(1, |x|) (for double) or a
/// ConvergenceError is thrown.
template <std::floating_point T>
T lambert_w0(T x) {
  constexpr T kBranch = -1 / std::numbers::e_v<T>;
  constexpr T kClamp = T(1e-15);
  constexpr T kResidualTol = std::max(T(1e-12), 64 * std::numeric_limits<T>::epsilon());
  constexpr int kMaxIterations = 50;

  if (std::isnan(x)) throw DomainError("lambert_w0: NaN argument");
  if (x < kBranch - kClamp) {
    throw DomainError("lambert_w0: argument " + std::to_string(x) + " below -1/e");
  }
  if (x <= kBranch) return T(-1);
  if (x == 0) return T(0);
  if (std::isinf(x)) return x;

  T w;
  if (x >= 0) {
    w = std::log1p(x);
  } else if (x > T(-0.25)) {
    w = x * (1 - x);
  } else {
    // sqrt expansion about the branch point
    w = -1 + std::sqrt(2 * (1 + std::numbers::e_v<T> * x));
  }

  const T scale = std::max(T(1), std::abs(x));
  for (int it = 0; it < kMaxIterations; ++it) {
    const T ew = std::exp(w);
    const T f = w * ew - x;
    if (std::abs(f) <= kResidualTol * scale / 4) return w;
    const T wp1 = w + 1;
    if (wp1 == 0) break;
    const T step = f / (ew * wp1 - (w + 2) * f / (2 * wp1));
    const T next = std::max(w - step, T(-1));
    if (next == w) break;
    w = next;
  }

  const T residual = std::abs(w * std::exp(w) - x);
  if (!(residual <= kResidualTol * scale)) {
    throw ConvergenceError("lambert_w0: residual " + std::to_string(residual) + " at x = " +
                           std::to_string(x));
  }
  return w;
}

}  // namespace wpc
