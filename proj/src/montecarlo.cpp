#include "wpc/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "wpc/error.hpp"

namespace wpc {

double CounterRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2 * uniform() - 1;
    v = 2 * uniform() - 1;
    s = u * u + v * v;
  } while (s >= 1 || s == 0);
  const double k = std::sqrt(-2 * std::log(s) / s);
  spare_ = v * k;
  has_spare_ = true;
  return u * k;
}

void McConfig::validate() const {
  if (samples < 1) throw DomainError("samples must be >= 1");
  if (chunk_size < 1) throw DomainError("chunk_size must be >= 1");
}

namespace {

struct ChunkTally {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double chi2_sum = 0.0;
  double chi2_sq_sum = 0.0;
};

struct Trial {
  bool success;
  double chi2;
};

void check_inputs(std::int64_t m, std::int64_t n, double p_e, double p_t, const McConfig& cfg) {
  if (m < 1) throw DomainError(fmt::format("m must be >= 1 (got {})", m));
  if (n < 1) throw DomainError(fmt::format("n must be >= 1 (got {})", n));
  if (!(p_e > 0)) throw DomainError(fmt::format("p_e must be > 0 (got {})", p_e));
  if (!(p_t >= 0)) throw DomainError(fmt::format("p_t must be >= 0 (got {})", p_t));
  cfg.validate();
}

// Runs cfg.samples trials split into chunks. Chunk k, trial t uses the stream
// CounterRng::derive(seed, k, t), so results depend only on (samples, seed,
// chunk_size). Tallies are reduced in chunk order.
template <class TrialFn>
McEstimate run_trials(const McConfig& cfg, TrialFn&& trial) {
  const std::uint64_t chunks = (cfg.samples + cfg.chunk_size - 1) / cfg.chunk_size;
  std::vector<ChunkTally> tallies(chunks);

  auto run_chunk = [&](std::uint64_t k) {
    ChunkTally& tally = tallies[k];
    const std::uint64_t begin = k * cfg.chunk_size;
    tally.trials = std::min(cfg.chunk_size, cfg.samples - begin);
    for (std::uint64_t t = 0; t < tally.trials; ++t) {
      CounterRng rng(CounterRng::derive(cfg.seed, k, t));
      const Trial r = trial(rng);
      tally.successes += r.success ? 1 : 0;
      tally.chi2_sum += r.chi2;
      tally.chi2_sq_sum += r.chi2 * r.chi2;
    }
  };

  unsigned workers = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
  if (workers <= 1) {
    for (std::uint64_t k = 0; k < chunks; ++k) run_chunk(k);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          for (std::uint64_t k; (k = next.fetch_add(1)) < chunks;) run_chunk(k);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  ChunkTally total;
  for (const ChunkTally& t : tallies) {
    total.trials += t.trials;
    total.successes += t.successes;
    total.chi2_sum += t.chi2_sum;
    total.chi2_sq_sum += t.chi2_sq_sum;
  }

  McEstimate est;
  const double count = static_cast<double>(total.trials);
  est.samples = total.trials;
  est.successes = total.successes;
  est.p_hat = static_cast<double>(total.successes) / count;
  est.std_err = std::sqrt(est.p_hat * (1 - est.p_hat) / count);
  est.chi2_mean = total.chi2_sum / count;
  if (total.trials > 1) {
    const double var = std::max(0.0, (total.chi2_sq_sum - count * est.chi2_mean * est.chi2_mean) / (count - 1));
    est.chi2_std_err = std::sqrt(var / count);
  }
  return est;
}

}  // namespace

McEstimate simulate_supply_probability(std::int64_t m, std::int64_t n, double p_e, double p_t,
                                       const McConfig& cfg) {
  check_inputs(m, n, p_e, p_t, cfg);
  const double harvest = static_cast<double>(m);
  return run_trials(cfg, [&](CounterRng& rng) {
    const double z = rng.exponential(p_e);
    double energy = 0.0;
    double chi2 = 0.0;
    for (std::int64_t l = 0; l < n; ++l) {
      const double g = rng.normal();
      chi2 += g * g;
      energy += p_t * (g * g);
    }
    return Trial{energy <= harvest * z, chi2};
  });
}

McEstimate simulate_prefix_constraints(std::int64_t m, std::int64_t n, double p_e, double p_t,
                                       const McConfig& cfg) {
  check_inputs(m, n, p_e, p_t, cfg);
  const double harvest = static_cast<double>(m);
  return run_trials(cfg, [&](CounterRng& rng) {
    const double z = rng.exponential(p_e);
    const double budget = harvest * z;
    double energy = 0.0;
    double chi2 = 0.0;
    bool ok = true;
    for (std::int64_t l = 0; l < n; ++l) {
      const double g = rng.normal();
      chi2 += g * g;
      energy += p_t * (g * g);
      ok = ok && energy <= budget;
    }
    return Trial{ok, chi2};
  });
}

}  // namespace wpc
