#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <numbers>
#include <utility>

#include "wpc/error.hpp"

namespace wpc {

template <std::floating_point T>
struct ScalarMax {
  T x;
  T value;
  std::size_t evaluations = 0;
};

/// Maximizes f on [lo, hi].
///
/// A 64-point uniform pre-scan picks the best grid cell; golden-section search
/// then refines over the two cells adjacent to it until the bracket is below
/// tol * (hi - lo). For unimodal f this converges to the true maximizer; for
/// general f it returns the refined best grid cell. Exceptions thrown by f
/// propagate.
template <std::floating_point T, std::invocable<T> F>
ScalarMax<T> maximize_scalar(F&& f, T lo, T hi, T tol) {
  constexpr std::size_t kScan = 64;
  if (!(lo < hi)) throw DomainError("maximize_scalar: requires lo < hi");
  if (!(tol > 0)) throw DomainError("maximize_scalar: requires tol > 0");

  std::size_t evals = 0;
  auto eval = [&](T x) -> T {
    ++evals;
    return static_cast<T>(f(x));
  };

  const T h = (hi - lo) / (kScan - 1);
  std::array<T, kScan> grid{};
  std::size_t best = 0;
  for (std::size_t i = 0; i < kScan; ++i) {
    const T x = i + 1 == kScan ? hi : lo + h * i;
    grid[i] = eval(x);
    if (grid[i] > grid[best]) best = i;
  }

  ScalarMax<T> result{best + 1 == kScan ? hi : lo + h * best, grid[best], 0};

  T a = best == 0 ? lo : lo + h * (best - 1);
  T b = best + 1 >= kScan - 1 ? hi : lo + h * (best + 1);
  const T invphi = 1 / std::numbers::phi_v<T>;
  const T stop = tol * (hi - lo);

  T c = b - invphi * (b - a);
  T d = a + invphi * (b - a);
  T fc = eval(c);
  T fd = eval(d);
  while (b - a > stop) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = eval(d);
    }
  }
  const T mid = (a + b) / 2;
  const T fmid = eval(mid);
  for (auto [x, v] : {std::pair{c, fc}, std::pair{d, fd}, std::pair{mid, fmid}}) {
    if (v > result.value) result = {x, v, 0};
  }
  result.evaluations = evals;
  return result;
}

}  // namespace wpc
