#pragma once

#include "wpc/system.hpp"

namespace wpc {

/// Finite-blocklength ε-achievable rate of the harvest-then-transmit frame.
struct RateResult {
  double rate_nats = 0.0;  ///< clamped to 0 unless `feasible`
  double rate_bits = 0.0;  ///< rate_nats / ln 2
  double raw_nats = 0.0;   ///< unclamped closed-form value, may be negative
  Blocklengths blocklengths;
  bool constraints_satisfied = false;  ///< m >= m_min, n <= n_max(m), n >= floor(n_min)
  bool feasible = false;               ///< constraints hold and raw_nats >= 0
};

/// Blocklength constraints under which the achievable rate holds, for fixed (ε, a).
struct FeasibleRegion {
  double epsilon = 0.0;
  double power_ratio = 0.0;
  double m_min = 0.0;  ///< 2a / (exp(2 ln(1+ε/2) / n_min) - 1)
  double n_min = 0.0;  ///< (ln((2+ε)/ε²))^4, real valued

  /// Largest admissible n for a given m: 2 ln(1+ε/2) / ln(1+2a/m).
  double n_max(double m) const;

  /// Smallest integral n admitted. Integer frames use floor(n_min).
  double n_min_integral() const;

  bool contains(const Blocklengths& bl) const;
};

/// Relative slack applied when comparing against constraint boundaries.
inline constexpr double kConstraintSlack = 1e-12;

/// (ln((2+ε)/ε²))^4. Requires 0 < ε < 1.
double min_transmit_blocklength(double epsilon);

FeasibleRegion feasible_region(double epsilon, double a);

/// Achievable rate in nats/channel use for params and blocklengths; see RateResult.
/// Throws DomainError for ε = 0 or m <= 2a.
RateResult achievable_rate(const SystemParams& params, const Blocklengths& bl);

/// Constraint check alone (no sign test on the rate).
bool is_feasible(double epsilon, double a, const Blocklengths& bl);

/// Minimum-latency frame: n = floor(n_min(ε)) and the smallest integral m
/// meeting both m >= m_min and n <= n_max(m).
Blocklengths min_latency_blocklengths(double epsilon, double a);

/// ½ ln(1+γ).
double capacity_awgn(double gamma);

/// 1 / (1 + a / ln(1+ε/2)), the asymptotic prelog loss factor in [0, 1].
double capacity_loss_factor(double a, double epsilon);

/// capacity_loss_factor(a, ε) * capacity_awgn(γ), in nats/channel use.
double asymptotic_rate(const SystemParams& params);

/// Transmit power maximizing asymptotic_rate over P_t (closed form via W0).
double optimal_power_asymptotic(double epsilon, double p_e, double sigma2);

/// Finite-blocklength rate at transmit power p_t with minimum-latency blocklengths.
RateResult min_latency_rate(double epsilon, double p_e, double p_t, double sigma2);

struct PowerOptimum {
  double p_t = 0.0;
  RateResult rate;
};

/// Maximizes min_latency_rate over P_t by pre-scan plus golden section in log P_t
/// over [1e-6 σ², P_E max(1, 10 ln(1+ε/2))]. Throws OptimizationError when no
/// feasible power exists in that bracket.
PowerOptimum optimal_power_finite(double epsilon, double p_e, double sigma2);

}  // namespace wpc
