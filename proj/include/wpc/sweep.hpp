#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wpc/csv.hpp"
#include "wpc/system.hpp"

namespace wpc {

enum class SweepVariable { PowerRatio, Epsilon, HarvestPower, TransmitPower, HarvestLength, TransmitLength };
enum class SweepScale { Linear, Log };
enum class SweepMode { Fig1, Fig2, Fig3, Custom };

std::optional<SweepVariable> parse_sweep_variable(std::string_view s);
std::optional<SweepScale> parse_sweep_scale(std::string_view s);
std::optional<SweepMode> parse_sweep_mode(std::string_view s);
std::string_view to_string(SweepVariable v);
std::string_view to_string(SweepScale s);
std::string_view to_string(SweepMode m);

struct SweepSpec {
  SweepVariable variable = SweepVariable::PowerRatio;
  double start = 1e-4;
  double stop = 1e-1;
  int points = 200;
  SweepScale scale = SweepScale::Log;
  SystemParams fixed;
  /// When set, used as-is instead of minimum-latency blocklengths (custom mode).
  std::optional<Blocklengths> blocklengths;

  /// Throws DomainError unless start < stop, points >= 2 and log scale has start > 0.
  void validate() const;

  std::vector<double> axis() const;
};

/// Defaults for a figure mode: axis variable, range, resolution and fixed params.
SweepSpec default_sweep(SweepMode mode);

/// Rate vs power ratio a at fixed P_E, ε (minimum-latency blocklengths).
/// Columns: a,p_t,m,n,feasible,rate_nats,rate_bits,asymptotic_rate_nats,asymptotic_rate_bits
csv::Table sweep_fig1(const SweepSpec& spec);

/// Rate vs ε: fixed power, finite-optimal power, asymptotically optimal power,
/// and the asymptotic rate at the fixed power.
csv::Table sweep_fig2(const SweepSpec& spec);

/// Asymptotic and finite optimal transmit power vs P_E.
csv::Table sweep_fig3(const SweepSpec& spec);

/// Achievable rate and supply probability along any variable. The first
/// column is named `sweep_<variable>`.
csv::Table sweep_custom(const SweepSpec& spec);

csv::Table run_sweep(SweepMode mode, const SweepSpec& spec);

}  // namespace wpc
