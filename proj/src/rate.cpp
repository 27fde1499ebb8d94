#include "wpc/rate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "wpc/error.hpp"
#include "wpc/lambert_w.hpp"
#include "wpc/scalar_max.hpp"

namespace wpc {

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0 && epsilon < 1)) {
    throw DomainError(fmt::format("epsilon must lie in (0, 1) (got {})", epsilon));
  }
}

void check_power_ratio(double a) {
  if (!(a > 0)) throw DomainError(fmt::format("power ratio a must be > 0 (got {})", a));
}

// ln(1 + ε/2), the per-use energy budget exponent shared by every constraint.
double budget_log(double epsilon) { return std::log1p(0.5 * epsilon); }

// Smallest real m with n <= n_max(m), i.e. 2a / ((1+ε/2)^(2/n) - 1).
double boundary_harvest_length(double epsilon, double a, double n) {
  return 2 * a / std::expm1(2 * budget_log(epsilon) / n);
}

}  // namespace

double min_transmit_blocklength(double epsilon) {
  check_epsilon(epsilon);
  const double l = std::log((2 + epsilon) / (epsilon * epsilon));
  return (l * l) * (l * l);
}

double FeasibleRegion::n_max(double m) const {
  if (!(m > 0)) throw DomainError(fmt::format("m must be > 0 (got {})", m));
  return 2 * budget_log(epsilon) / std::log1p(2 * power_ratio / m);
}

double FeasibleRegion::n_min_integral() const { return std::floor(n_min); }

bool FeasibleRegion::contains(const Blocklengths& bl) const {
  return bl.m >= m_min * (1 - kConstraintSlack) && bl.n <= n_max(bl.m) * (1 + kConstraintSlack) &&
         bl.n >= n_min_integral();
}

FeasibleRegion feasible_region(double epsilon, double a) {
  check_epsilon(epsilon);
  check_power_ratio(a);
  FeasibleRegion region;
  region.epsilon = epsilon;
  region.power_ratio = a;
  region.n_min = min_transmit_blocklength(epsilon);
  region.m_min = boundary_harvest_length(epsilon, a, region.n_min);
  return region;
}

bool is_feasible(double epsilon, double a, const Blocklengths& bl) {
  return feasible_region(epsilon, a).contains(bl);
}

RateResult achievable_rate(const SystemParams& params, const Blocklengths& bl) {
  params.validate();
  bl.validate();
  if (params.epsilon == 0) throw DomainError("epsilon = 0: achievable rate undefined (divides by epsilon)");
  const double a = params.power_ratio();
  if (!(bl.m > 2 * a)) {
    throw DomainError(fmt::format("m <= 2a: rate expression invalid (m = {}, a = {})", bl.m, a));
  }

  const double eps = params.epsilon;
  const double gamma = params.snr();
  const double n = bl.n;
  const double backoff = std::sqrt((2 + eps) / eps * gamma / (gamma + 1) * n);
  const double numerator = 0.5 * n * std::log1p(gamma) - backoff - std::pow(n, 0.25) - 1;

  RateResult r;
  r.blocklengths = bl;
  r.raw_nats = numerator / (n + bl.m);
  r.constraints_satisfied = is_feasible(eps, a, bl);
  r.feasible = r.constraints_satisfied && r.raw_nats >= 0;
  r.rate_nats = r.feasible ? r.raw_nats : 0.0;
  r.rate_bits = r.rate_nats / std::numbers::ln2;
  return r;
}

Blocklengths min_latency_blocklengths(double epsilon, double a) {
  const FeasibleRegion region = feasible_region(epsilon, a);
  const double n = region.n_min_integral();
  const double m = std::max(region.m_min, boundary_harvest_length(epsilon, a, n));
  return {std::max(1.0, std::ceil(m)), n};
}

double capacity_awgn(double gamma) {
  if (!(gamma >= 0)) throw DomainError(fmt::format("SNR must be >= 0 (got {})", gamma));
  return 0.5 * std::log1p(gamma);
}

double capacity_loss_factor(double a, double epsilon) {
  check_epsilon(epsilon);
  if (!(a >= 0)) throw DomainError(fmt::format("power ratio a must be >= 0 (got {})", a));
  return 1 / (1 + a / budget_log(epsilon));
}

double asymptotic_rate(const SystemParams& params) {
  params.validate();
  return capacity_loss_factor(params.power_ratio(), params.epsilon) * capacity_awgn(params.snr());
}

double optimal_power_asymptotic(double epsilon, double p_e, double sigma2) {
  check_epsilon(epsilon);
  if (!(p_e > 0)) throw DomainError(fmt::format("p_e must be > 0 (got {})", p_e));
  if (!(sigma2 > 0)) throw DomainError(fmt::format("sigma2 must be > 0 (got {})", sigma2));

  // Stationary point of ln(1+P/σ²) / (1 + P/(P_E ln(1+ε/2))). With
  // x = (P_E/σ²) ln(1+ε/2) > 0 we have x - 1 > -1, so the W0 argument
  // (x-1)/e is strictly above -1/e and W0 is always defined here.
  const double x = p_e / sigma2 * budget_log(epsilon);
  const double y = x - 1;
  if (std::abs(y) < 1e-9) return sigma2 * (std::numbers::e - 1);  // W0(z) ~ z near 0
  return sigma2 * (y / lambert_w0(y / std::numbers::e) - 1);
}

RateResult min_latency_rate(double epsilon, double p_e, double p_t, double sigma2) {
  const SystemParams params{p_e, p_t, sigma2, epsilon};
  params.validate();
  check_epsilon(epsilon);
  return achievable_rate(params, min_latency_blocklengths(epsilon, params.power_ratio()));
}

PowerOptimum optimal_power_finite(double epsilon, double p_e, double sigma2) {
  check_epsilon(epsilon);
  if (!(p_e > 0)) throw DomainError(fmt::format("p_e must be > 0 (got {})", p_e));
  if (!(sigma2 > 0)) throw DomainError(fmt::format("sigma2 must be > 0 (got {})", sigma2));

  const double lo = std::log(1e-6 * sigma2);
  const double hi = std::log(p_e * std::max(1.0, 10 * budget_log(epsilon)));
  auto rate_at = [&](double log_pt) {
    return min_latency_rate(epsilon, p_e, std::exp(log_pt), sigma2).rate_nats;
  };
  const auto best = maximize_scalar(rate_at, lo, hi, 1e-6 / (hi - lo));

  PowerOptimum opt{std::exp(best.x), min_latency_rate(epsilon, p_e, std::exp(best.x), sigma2)};

  const double p_asym = optimal_power_asymptotic(epsilon, p_e, sigma2);
  if (std::log(p_asym) >= lo && std::log(p_asym) <= hi) {
    const RateResult r = min_latency_rate(epsilon, p_e, p_asym, sigma2);
    if (r.rate_nats > opt.rate.rate_nats) opt = {p_asym, r};
  }

  if (!opt.rate.feasible) {
    throw OptimizationError(
        fmt::format("no feasible transmit power in [{}, {}] for epsilon = {}, p_e = {}, sigma2 = {}",
                    std::exp(lo), std::exp(hi), epsilon, p_e, sigma2));
  }
  return opt;
}

}  // namespace wpc
