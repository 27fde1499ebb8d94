#include "wpc/sweep.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include <fmt/format.h>

#include "wpc/error.hpp"
#include "wpc/rate.hpp"
#include "wpc/supply.hpp"
#include "wpc/version.hpp"

namespace wpc {

namespace {

constexpr std::array<std::pair<SweepVariable, std::string_view>, 6> kVariables{{
    {SweepVariable::PowerRatio, "power_ratio"},
    {SweepVariable::Epsilon, "epsilon"},
    {SweepVariable::HarvestPower, "p_e"},
    {SweepVariable::TransmitPower, "p_t"},
    {SweepVariable::HarvestLength, "m"},
    {SweepVariable::TransmitLength, "n"},
}};

constexpr std::array<std::pair<SweepMode, std::string_view>, 4> kModes{{
    {SweepMode::Fig1, "fig1"},
    {SweepMode::Fig2, "fig2"},
    {SweepMode::Fig3, "fig3"},
    {SweepMode::Custom, "custom"},
}};

using csv::format_bool;
using csv::format_number;

csv::Table make_table(SweepMode mode, const SweepSpec& spec, std::vector<std::string> header) {
  csv::Table t;
  t.add_metadata("wpc_version", std::string(kVersion));
  t.add_metadata("mode", std::string(to_string(mode)));
  t.add_metadata("variable", std::string(to_string(spec.variable)));
  t.add_metadata("start", format_number(spec.start));
  t.add_metadata("stop", format_number(spec.stop));
  t.add_metadata("points", std::to_string(spec.points));
  t.add_metadata("scale", std::string(to_string(spec.scale)));
  t.add_metadata("p_e", format_number(spec.fixed.p_e));
  t.add_metadata("p_t", format_number(spec.fixed.p_t));
  t.add_metadata("sigma2", format_number(spec.fixed.sigma2));
  t.add_metadata("epsilon", format_number(spec.fixed.epsilon));
  if (spec.blocklengths) {
    t.add_metadata("m", format_number(spec.blocklengths->m));
    t.add_metadata("n", format_number(spec.blocklengths->n));
  }
  t.header = std::move(header);
  return t;
}

void require_variable(const SweepSpec& spec, SweepVariable expected, SweepMode mode) {
  if (spec.variable != expected) {
    throw DomainError(fmt::format("sweep mode {} requires variable {} (got {})", to_string(mode),
                                  to_string(expected), to_string(spec.variable)));
  }
}

}  // namespace

std::optional<SweepVariable> parse_sweep_variable(std::string_view s) {
  for (const auto& [v, name] : kVariables) {
    if (name == s) return v;
  }
  return std::nullopt;
}

std::optional<SweepScale> parse_sweep_scale(std::string_view s) {
  if (s == "linear") return SweepScale::Linear;
  if (s == "log") return SweepScale::Log;
  return std::nullopt;
}

std::optional<SweepMode> parse_sweep_mode(std::string_view s) {
  for (const auto& [m, name] : kModes) {
    if (name == s) return m;
  }
  return std::nullopt;
}

std::string_view to_string(SweepVariable v) {
  for (const auto& [var, name] : kVariables) {
    if (var == v) return name;
  }
  return "?";
}

std::string_view to_string(SweepScale s) { return s == SweepScale::Log ? "log" : "linear"; }

std::string_view to_string(SweepMode m) {
  for (const auto& [mode, name] : kModes) {
    if (mode == m) return name;
  }
  return "?";
}

void SweepSpec::validate() const {
  if (!(start < stop)) throw DomainError(fmt::format("sweep requires start < stop (got {} .. {})", start, stop));
  if (points < 2) throw DomainError(fmt::format("sweep requires points >= 2 (got {})", points));
  if (scale == SweepScale::Log && !(start > 0)) {
    throw DomainError(fmt::format("log-scale sweep requires start > 0 (got {})", start));
  }
}

std::vector<double> SweepSpec::axis() const {
  validate();
  std::vector<double> xs(static_cast<std::size_t>(points));
  const double last = points - 1;
  for (int i = 0; i < points; ++i) {
    const double t = i / last;
    if (scale == SweepScale::Log) {
      xs[i] = std::exp(std::log(start) + t * (std::log(stop) - std::log(start)));
    } else {
      xs[i] = start + t * (stop - start);
    }
  }
  xs.front() = start;
  xs.back() = stop;
  return xs;
}

SweepSpec default_sweep(SweepMode mode) {
  SweepSpec s;
  switch (mode) {
    case SweepMode::Fig1:
    case SweepMode::Custom:
      s.variable = SweepVariable::PowerRatio;
      s.start = 1e-4;
      s.stop = 1e-1;
      s.points = 200;
      s.fixed = {1e2, 1.0, 1.0, 1e-2};
      break;
    case SweepMode::Fig2:
      s.variable = SweepVariable::Epsilon;
      s.start = 1e-4;
      s.stop = 0.5;
      s.points = 50;
      s.fixed = {1e3, 1.1554, 1.0, 1e-3};
      break;
    case SweepMode::Fig3:
      s.variable = SweepVariable::HarvestPower;
      s.start = 1e2;
      s.stop = 1e4;
      s.points = 20;
      s.fixed = {1e3, 1.0, 1.0, 0.05};
      break;
  }
  s.scale = SweepScale::Log;
  return s;
}

csv::Table sweep_fig1(const SweepSpec& spec) {
  require_variable(spec, SweepVariable::PowerRatio, SweepMode::Fig1);
  auto table = make_table(SweepMode::Fig1, spec,
                          {"a", "p_t", "m", "n", "feasible", "rate_nats", "rate_bits", "asymptotic_rate_nats",
                           "asymptotic_rate_bits"});
  for (double a : spec.axis()) {
    SystemParams p = spec.fixed;
    p.p_t = a * p.p_e;
    const RateResult r = achievable_rate(p, min_latency_blocklengths(p.epsilon, a));
    const double asym = asymptotic_rate(p);
    table.add_row({format_number(a), format_number(p.p_t), format_number(r.blocklengths.m),
                   format_number(r.blocklengths.n), format_bool(r.feasible), format_number(r.rate_nats),
                   format_number(r.rate_bits), format_number(asym), format_number(asym / std::numbers::ln2)});
  }
  return table;
}

csv::Table sweep_fig2(const SweepSpec& spec) {
  require_variable(spec, SweepVariable::Epsilon, SweepMode::Fig2);
  auto table = make_table(SweepMode::Fig2, spec,
                          {"epsilon", "n", "fixed_p_t", "fixed_m", "fixed_rate_nats", "fixed_rate_bits",
                           "asym_power_p_t", "asym_power_m", "asym_power_rate_nats", "asym_power_rate_bits",
                           "finite_opt_p_t", "finite_opt_m", "finite_opt_rate_nats", "finite_opt_rate_bits",
                           "asymptotic_rate_nats", "asymptotic_rate_bits"});
  const SystemParams& f = spec.fixed;
  for (double eps : spec.axis()) {
    const RateResult fixed = min_latency_rate(eps, f.p_e, f.p_t, f.sigma2);
    const double p_asym = optimal_power_asymptotic(eps, f.p_e, f.sigma2);
    const RateResult at_asym = min_latency_rate(eps, f.p_e, p_asym, f.sigma2);
    const PowerOptimum best = optimal_power_finite(eps, f.p_e, f.sigma2);
    const double asym = asymptotic_rate({f.p_e, f.p_t, f.sigma2, eps});
    table.add_row({format_number(eps), format_number(fixed.blocklengths.n), format_number(f.p_t),
                   format_number(fixed.blocklengths.m), format_number(fixed.rate_nats),
                   format_number(fixed.rate_bits), format_number(p_asym), format_number(at_asym.blocklengths.m),
                   format_number(at_asym.rate_nats), format_number(at_asym.rate_bits), format_number(best.p_t),
                   format_number(best.rate.blocklengths.m), format_number(best.rate.rate_nats),
                   format_number(best.rate.rate_bits), format_number(asym),
                   format_number(asym / std::numbers::ln2)});
  }
  return table;
}

csv::Table sweep_fig3(const SweepSpec& spec) {
  require_variable(spec, SweepVariable::HarvestPower, SweepMode::Fig3);
  auto table = make_table(SweepMode::Fig3, spec,
                          {"p_e", "n", "asym_p_t", "asym_a", "asym_m", "asym_rate_nats", "asym_rate_bits",
                           "finite_p_t", "finite_a", "finite_m", "finite_rate_nats", "finite_rate_bits"});
  const SystemParams& f = spec.fixed;
  for (double p_e : spec.axis()) {
    const double p_asym = optimal_power_asymptotic(f.epsilon, p_e, f.sigma2);
    const RateResult at_asym = min_latency_rate(f.epsilon, p_e, p_asym, f.sigma2);
    const PowerOptimum best = optimal_power_finite(f.epsilon, p_e, f.sigma2);
    table.add_row({format_number(p_e), format_number(best.rate.blocklengths.n), format_number(p_asym),
                   format_number(p_asym / p_e), format_number(at_asym.blocklengths.m),
                   format_number(at_asym.rate_nats), format_number(at_asym.rate_bits), format_number(best.p_t),
                   format_number(best.p_t / p_e), format_number(best.rate.blocklengths.m),
                   format_number(best.rate.rate_nats), format_number(best.rate.rate_bits)});
  }
  return table;
}

csv::Table sweep_custom(const SweepSpec& spec) {
  auto table = make_table(SweepMode::Custom, spec,
                          {"sweep_" + std::string(to_string(spec.variable)), "p_e", "p_t", "sigma2", "epsilon", "a", "m", "n",
                           "constraints_satisfied", "feasible", "rate_nats", "rate_bits", "asymptotic_rate_nats",
                           "asymptotic_rate_bits", "supply_probability"});
  for (double v : spec.axis()) {
    SystemParams p = spec.fixed;
    std::optional<Blocklengths> bl = spec.blocklengths;
    switch (spec.variable) {
      case SweepVariable::PowerRatio: p.p_t = v * p.p_e; break;
      case SweepVariable::Epsilon: p.epsilon = v; break;
      case SweepVariable::HarvestPower: p.p_e = v; break;
      case SweepVariable::TransmitPower: p.p_t = v; break;
      case SweepVariable::HarvestLength:
        if (!bl) bl = min_latency_blocklengths(p.epsilon, p.power_ratio());
        bl->m = std::ceil(v);
        break;
      case SweepVariable::TransmitLength:
        if (!bl) bl = min_latency_blocklengths(p.epsilon, p.power_ratio());
        bl->n = std::floor(v);
        break;
    }
    p.validate();
    const Blocklengths frame = bl ? *bl : min_latency_blocklengths(p.epsilon, p.power_ratio());
    const RateResult r = achievable_rate(p, frame);
    const double asym = asymptotic_rate(p);
    const double supply = energy_supply_probability(frame.m, frame.n, p.power_ratio());
    table.add_row({format_number(v), format_number(p.p_e), format_number(p.p_t), format_number(p.sigma2),
                   format_number(p.epsilon), format_number(p.power_ratio()), format_number(frame.m),
                   format_number(frame.n), format_bool(r.constraints_satisfied), format_bool(r.feasible),
                   format_number(r.rate_nats), format_number(r.rate_bits), format_number(asym),
                   format_number(asym / std::numbers::ln2), format_number(supply)});
  }
  return table;
}

csv::Table run_sweep(SweepMode mode, const SweepSpec& spec) {
  spec.validate();
  switch (mode) {
    case SweepMode::Fig1: return sweep_fig1(spec);
    case SweepMode::Fig2: return sweep_fig2(spec);
    case SweepMode::Fig3: return sweep_fig3(spec);
    case SweepMode::Custom: return sweep_custom(spec);
  }
  throw DomainError("unknown sweep mode");
}

}  // namespace wpc
