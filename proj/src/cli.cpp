#include "wpc/cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "wpc/csv.hpp"
#include "wpc/error.hpp"
#include "wpc/montecarlo.hpp"
#include "wpc/rate.hpp"
#include "wpc/supply.hpp"
#include "wpc/sweep.hpp"
#include "wpc/version.hpp"

namespace wpc::cli {

namespace {

// Flat `key=value` config. Keys are flag names without the leading dashes.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DomainError(fmt::format("cannot open config file '{}'", path));
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  for (int lineno = 1; std::getline(is, line); ++lineno) {
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError(fmt::format("{}:{}: expected key=value", path, lineno));
    }
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw DomainError(fmt::format("{}:{}: empty key", path, lineno));
    if (key == "config") throw DomainError(fmt::format("{}:{}: nested config not allowed", path, lineno));
    entries.emplace_back(std::move(key), trim(line.substr(eq + 1)));
  }
  return entries;
}

bool has_flag(const std::vector<std::string>& args, const std::string& name) {
  const std::string flag = "--" + name;
  for (const auto& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

// Removes `--config <path>` and appends every config entry not already given
// on the command line, so explicit flags win.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw DomainError("--config requires a path");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (!path) return args;

  const std::vector<std::string> given = args;
  for (const auto& [key, value] : read_config(*path)) {
    if (has_flag(given, key)) continue;
    if (key == "min-latency" || key == "finite") {
      if (value == "true" || value == "1") {
        args.push_back("--" + key);
      } else if (value != "false" && value != "0") {
        throw DomainError(fmt::format("config key '{}' expects true/false (got '{}')", key, value));
      }
      continue;
    }
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

std::string human(double x) { return fmt::format("{:.12g}", x); }

struct Flags {
  double pe = 0, pt = 0, a = 0, eps = 0, sigma2 = 1, m = 0, n = 0;
  double start = 0, stop = 0;
  int points = 0;
  std::string var, scale, mode = "fig1", out;
  std::uint64_t samples = 100000, seed = 0, chunk_size = std::uint64_t{1} << 16;
  unsigned threads = 1;
  bool min_latency = false, finite = false;
};

struct Options {
  CLI::Option* pe = nullptr;
  CLI::Option* pt = nullptr;
  CLI::Option* a = nullptr;
  CLI::Option* eps = nullptr;
  CLI::Option* sigma2 = nullptr;
  CLI::Option* m = nullptr;
  CLI::Option* n = nullptr;
};

void require(CLI::Option* opt, std::string_view what) {
  if (opt == nullptr || opt->count() == 0) throw DomainError(fmt::format("missing required flag --{}", what));
}

bool given(CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }

std::int64_t as_count(double v, std::string_view name) {
  if (!(v >= 1) || std::floor(v) != v) {
    throw DomainError(fmt::format("--{} must be a positive integer (got {})", name, v));
  }
  return static_cast<std::int64_t>(v);
}

void add_metadata(csv::Table& t, const Flags& f) {
  t.add_metadata("wpc_version", std::string(kVersion));
  t.add_metadata("p_e", csv::format_number(f.pe));
  t.add_metadata("p_t", csv::format_number(f.pt));
  t.add_metadata("sigma2", csv::format_number(f.sigma2));
  t.add_metadata("epsilon", csv::format_number(f.eps));
}

int cmd_supply_prob(const Flags& f, const Options& o, std::ostream& out) {
  require(o.m, "m");
  require(o.n, "n");
  double a = f.a;
  if (given(o.a)) {
    if (given(o.pe) || given(o.pt)) throw DomainError("give either --a or --pe/--pt, not both");
  } else {
    require(o.pe, "pe (or --a)");
    require(o.pt, "pt (or --a)");
    if (!(f.pe > 0)) throw DomainError(fmt::format("--pe must be > 0 (got {})", f.pe));
    a = f.pt / f.pe;
  }
  out << fmt::format("{:.12f}\n", energy_supply_probability(f.m, f.n, a));
  return kExitOk;
}

int cmd_rate(const Flags& f, const Options& o, std::ostream& out) {
  require(o.pe, "pe");
  require(o.pt, "pt");
  require(o.eps, "eps");
  const SystemParams params{f.pe, f.pt, f.sigma2, f.eps};
  params.validate();
  if (f.eps == 0) throw DomainError("--eps must be > 0: achievable rate undefined at epsilon = 0");

  Blocklengths bl;
  if (f.min_latency) {
    if (given(o.m) || given(o.n)) throw DomainError("--min-latency conflicts with --m/--n");
    bl = min_latency_blocklengths(f.eps, params.power_ratio());
  } else {
    require(o.m, "m (or --min-latency)");
    require(o.n, "n (or --min-latency)");
    bl = {static_cast<double>(as_count(f.m, "m")), static_cast<double>(as_count(f.n, "n"))};
  }
  const RateResult r = achievable_rate(params, bl);
  const double asym = asymptotic_rate(params);

  csv::Table t;
  add_metadata(t, f);
  t.add_metadata("blocklengths", f.min_latency ? "min-latency" : "given");
  t.header = {"m", "n", "feasible", "rate_nats", "rate_bits", "asymptotic_rate_bits"};
  t.add_row({csv::format_number(bl.m), csv::format_number(bl.n), csv::format_bool(r.feasible),
             csv::format_number(r.rate_nats), csv::format_number(r.rate_bits),
             csv::format_number(asym / std::numbers::ln2)});
  csv::write(out, t);
  return kExitOk;
}

int cmd_sweep(const Flags& f, const Options& o, std::ostream& out) {
  const auto mode = parse_sweep_mode(f.mode);
  if (!mode) throw DomainError(fmt::format("unknown --mode '{}' (fig1, fig2, fig3, custom)", f.mode));
  SweepSpec spec = default_sweep(*mode);
  if (!f.var.empty()) {
    const auto v = parse_sweep_variable(f.var);
    if (!v) throw DomainError(fmt::format("unknown --var '{}' (power_ratio, epsilon, p_e, p_t, m, n)", f.var));
    spec.variable = *v;
  }
  if (!f.scale.empty()) {
    const auto s = parse_sweep_scale(f.scale);
    if (!s) throw DomainError(fmt::format("unknown --scale '{}' (linear, log)", f.scale));
    spec.scale = *s;
  }
  if (f.points != 0) spec.points = f.points;
  if (f.start != 0 || f.stop != 0) {
    spec.start = f.start;
    spec.stop = f.stop;
  }
  if (given(o.pe)) spec.fixed.p_e = f.pe;
  if (given(o.pt)) spec.fixed.p_t = f.pt;
  if (given(o.eps)) spec.fixed.epsilon = f.eps;
  if (given(o.sigma2)) spec.fixed.sigma2 = f.sigma2;
  if (given(o.m) || given(o.n)) {
    require(o.m, "m");
    require(o.n, "n");
    spec.blocklengths = Blocklengths{static_cast<double>(as_count(f.m, "m")),
                                     static_cast<double>(as_count(f.n, "n"))};
  }
  spec.validate();

  const csv::Table table = run_sweep(*mode, spec);
  if (f.out.empty()) {
    csv::write(out, table);
  } else {
    csv::write_file_atomic(f.out, table);
  }
  return kExitOk;
}

int cmd_mc(const Flags& f, const Options& o, std::ostream& out) {
  require(o.m, "m");
  require(o.n, "n");
  require(o.pe, "pe");
  require(o.pt, "pt");
  const std::int64_t m = as_count(f.m, "m");
  const std::int64_t n = as_count(f.n, "n");
  const McConfig cfg{f.samples, f.seed, f.chunk_size, f.threads};
  const McEstimate est = simulate_supply_probability(m, n, f.pe, f.pt, cfg);

  out << "p_hat: " << human(est.p_hat) << '\n';
  out << "std_err: " << human(est.std_err) << '\n';
  out << "samples: " << est.samples << '\n';
  out << "seed: " << f.seed << '\n';
  const double a = f.pt / f.pe;
  if (static_cast<double>(m) > 2 * a) {
    const double exact = energy_supply_probability(static_cast<double>(m), static_cast<double>(n), a);
    out << "closed-form: " << human(exact) << '\n';
    if (est.std_err > 0) {
      out << "z-score: " << human((est.p_hat - exact) / est.std_err) << '\n';
    } else {
      out << "z-score: n/a (zero standard error)\n";
    }
  } else {
    out << "closed-form: n/a (m <= 2a)\n";
  }
  return kExitOk;
}

int cmd_optimal_power(const Flags& f, const Options& o, std::ostream& out) {
  require(o.eps, "eps");
  require(o.pe, "pe");
  const double p_t = optimal_power_asymptotic(f.eps, f.pe, f.sigma2);
  const double asym = asymptotic_rate({f.pe, p_t, f.sigma2, f.eps});
  out << "p_t_asymptotic: " << human(p_t) << '\n';
  out << "power_ratio_asymptotic: " << human(p_t / f.pe) << '\n';
  out << "asymptotic_rate_nats: " << human(asym) << '\n';
  out << "asymptotic_rate_bits: " << human(asym / std::numbers::ln2) << '\n';
  if (f.finite) {
    const RateResult at_asym = min_latency_rate(f.eps, f.pe, p_t, f.sigma2);
    const PowerOptimum best = optimal_power_finite(f.eps, f.pe, f.sigma2);
    out << "finite_rate_at_asymptotic_p_t_bits: " << human(at_asym.rate_bits) << '\n';
    out << "p_t_finite: " << human(best.p_t) << '\n';
    out << "power_ratio_finite: " << human(best.p_t / f.pe) << '\n';
    out << "m: " << human(best.rate.blocklengths.m) << '\n';
    out << "n: " << human(best.rate.blocklengths.n) << '\n';
    out << "finite_rate_nats: " << human(best.rate.rate_nats) << '\n';
    out << "finite_rate_bits: " << human(best.rate.rate_bits) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Finite-blocklength analysis of a wirelessly powered short-packet link", "wpc"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  auto harvest_flags = [&](CLI::App* sub, Options& o) {
    o.pe = sub->add_option("--pe", f.pe, "average harvested power P_E");
    o.pt = sub->add_option("--pt", f.pt, "transmit power P_t");
  };
  auto link_flags = [&](CLI::App* sub, Options& o) {
    harvest_flags(sub, o);
    o.eps = sub->add_option("--eps", f.eps, "target error probability");
    o.sigma2 = sub->add_option("--sigma2", f.sigma2, "noise variance")->capture_default_str();
  };
  auto frame_flags = [&](CLI::App* sub, Options& o) {
    o.m = sub->add_option("--m", f.m, "harvest blocklength");
    o.n = sub->add_option("--n", f.n, "transmit blocklength");
  };

  Options supply_opts;
  auto* supply = app.add_subcommand("supply-prob", "closed-form energy supply probability");
  frame_flags(supply, supply_opts);
  harvest_flags(supply, supply_opts);
  supply_opts.a = supply->add_option("--a", f.a, "power ratio P_t/P_E");

  Options rate_opts;
  auto* rate = app.add_subcommand("rate", "finite-blocklength achievable rate at one point");
  link_flags(rate, rate_opts);
  frame_flags(rate, rate_opts);
  rate->add_flag("--min-latency", f.min_latency, "derive (m, n) by minimum-latency selection");

  Options sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "parameter sweep as CSV");
  link_flags(sweep, sweep_opts);
  frame_flags(sweep, sweep_opts);
  sweep->add_option("--mode", f.mode, "fig1 | fig2 | fig3 | custom")->capture_default_str();
  sweep->add_option("--var", f.var, "power_ratio | epsilon | p_e | p_t | m | n");
  sweep->add_option("--start", f.start, "axis start");
  sweep->add_option("--stop", f.stop, "axis stop");
  sweep->add_option("--points", f.points, "number of axis points (>= 2)");
  sweep->add_option("--scale", f.scale, "linear | log");
  sweep->add_option("--out", f.out, "output CSV path (default stdout)");

  Options mc_opts;
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of the energy supply probability");
  frame_flags(mc, mc_opts);
  harvest_flags(mc, mc_opts);
  mc->add_option("--samples", f.samples, "number of trials")->capture_default_str();
  mc->add_option("--seed", f.seed, "64-bit seed")->capture_default_str();
  mc->add_option("--chunk-size", f.chunk_size, "trials per deterministic chunk")->capture_default_str();
  mc->add_option("--threads", f.threads, "worker threads (0 = all cores)")->capture_default_str();

  Options opt_opts;
  auto* opt = app.add_subcommand("optimal-power", "rate-maximizing transmit power");
  link_flags(opt, opt_opts);
  opt->add_flag("--finite", f.finite, "also optimize the finite-blocklength rate numerically");

  try {
    const std::vector<std::string> args = apply_config(raw_args);
    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitValidation;
    }

    if (supply->parsed()) return cmd_supply_prob(f, supply_opts, out);
    if (rate->parsed()) return cmd_rate(f, rate_opts, out);
    if (sweep->parsed()) return cmd_sweep(f, sweep_opts, out);
    if (mc->parsed()) return cmd_mc(f, mc_opts, out);
    if (opt->parsed()) return cmd_optimal_power(f, opt_opts, out);
    err << "no subcommand\n";
    return kExitValidation;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace wpc::cli
