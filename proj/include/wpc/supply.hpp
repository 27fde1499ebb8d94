#pragma once

// Closed-form energy supply probability for fully correlated exponential
// energy arrivals and an IID Gaussian codeword.

namespace wpc {

/// Pr[sum_{l<=n} X_l^2 <= m Z] = (1 + 2a/m)^(-n/2).
///
/// Requires m > 2a (the chi-squared MGF diverges otherwise), n >= 0, a >= 0.
/// Result is clamped to [0, 1].
double energy_supply_probability(double m, double n, double a);

/// 1 - energy_supply_probability(m, n, a).
double energy_outage_probability(double m, double n, double a);

/// Smallest power ratio a giving supply probability rho: (m/2)(rho^(-2/n) - 1).
/// Inverse of energy_supply_probability in a; linear in m.
double min_power_ratio_for_supply(double m, double n, double rho);

/// e^(-a/c): limit of energy_supply_probability(c n, n, a) as n grows.
///
/// Since ln(1+y) <= y, every finite-n value lies at or above this limit and
/// the sequence decreases toward it.
double asymptotic_supply_limit(double a, double c);

}  // namespace wpc
