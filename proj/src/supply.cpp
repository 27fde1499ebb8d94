#include "wpc/supply.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "wpc/error.hpp"

namespace wpc {

namespace {

void check_supply_domain(double m, double n, double a) {
  if (!(a >= 0)) throw DomainError(fmt::format("power ratio a must be >= 0 (got {})", a));
  if (!(n >= 0)) throw DomainError(fmt::format("n must be >= 0 (got {})", n));
  if (!(m > 0)) throw DomainError(fmt::format("m must be > 0 (got {})", m));
  if (!(m > 2 * a)) {
    throw DomainError(fmt::format("m <= 2a: closed form invalid, use `mc` (m = {}, a = {})", m, a));
  }
}

}  // namespace

double energy_supply_probability(double m, double n, double a) {
  check_supply_domain(m, n, a);
  // exp(-(n/2) log1p(2a/m)) keeps precision when 2a/m is tiny.
  const double p = std::exp(-0.5 * n * std::log1p(2 * a / m));
  return std::clamp(p, 0.0, 1.0);
}

double energy_outage_probability(double m, double n, double a) {
  return 1.0 - energy_supply_probability(m, n, a);
}

double min_power_ratio_for_supply(double m, double n, double rho) {
  if (!(m >= 1)) throw DomainError(fmt::format("m must be >= 1 (got {})", m));
  if (!(n >= 1)) throw DomainError(fmt::format("n must be >= 1 (got {})", n));
  if (!(rho > 0 && rho <= 1)) throw DomainError(fmt::format("rho must lie in (0, 1] (got {})", rho));
  return 0.5 * m * std::expm1(-2 * std::log(rho) / n);
}

double asymptotic_supply_limit(double a, double c) {
  if (!(a > 0)) throw DomainError(fmt::format("power ratio a must be > 0 (got {})", a));
  if (!(c > 0)) throw DomainError(fmt::format("proportionality constant c must be > 0 (got {})", c));
  return std::exp(-a / c);
}

}  // namespace wpc
