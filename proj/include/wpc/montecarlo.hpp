#pragma once

#include <cmath>
#include <cstdint>

namespace wpc {

/// Counter-based generator: SplitMix64 applied to a Weyl sequence keyed by a
/// 64-bit stream id. Period 2^64 per stream; streams for distinct keys are
/// derived by hashing (seed, chunk, trial).
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) : state_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() { return mix(state_ += kGamma); }

  /// Uniform on (0, 1], 53-bit resolution.
  double uniform_open_closed() { return (static_cast<double>((*this)() >> 11) + 1.0) * 0x1.0p-53; }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Exponential with the given mean by inverse CDF.
  double exponential(double mean) { return -mean * std::log(uniform_open_closed()); }

  /// Standard normal by polar (Marsaglia) rejection; the second variate of each
  /// accepted pair is cached.
  double normal();

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Stream key for (seed, chunk, index) with independent-looking outputs.
  static constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t chunk, std::uint64_t index) {
    return mix(mix(mix(seed) + chunk * kGamma) ^ (index * 0xd1b54a32d192ed03ULL + 1));
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct McConfig {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  std::uint64_t chunk_size = std::uint64_t{1} << 16;
  unsigned threads = 1;  ///< worker threads; 0 = hardware concurrency

  void validate() const;
};

struct McEstimate {
  double p_hat = 0.0;
  double std_err = 0.0;  ///< sqrt(p_hat (1 - p_hat) / samples)
  std::uint64_t samples = 0;
  std::uint64_t successes = 0;
  /// Sample mean and standard error of sum_l G_l^2 with X_l = sqrt(p_t) G_l,
  /// i.e. the chi-squared(n) variate behind the codeword energy.
  double chi2_mean = 0.0;
  double chi2_std_err = 0.0;
};

/// Estimates Pr[sum_{l<=n} X_l^2 <= m Z] with Z ~ Exp(mean p_e), X_l ~ N(0, p_t).
///
/// Valid for every m >= 1, including m <= 2 p_t/p_e where no closed form exists.
/// Deterministic in (samples, seed, chunk_size) regardless of thread count.
McEstimate simulate_supply_probability(std::int64_t m, std::int64_t n, double p_e, double p_t,
                                       const McConfig& cfg);

/// Same trials, but checks every prefix constraint sum_{l<=k} X_l^2 <= m Z for
/// k = 1..n. Produces the same success count as simulate_supply_probability.
McEstimate simulate_prefix_constraints(std::int64_t m, std::int64_t n, double p_e, double p_t,
                                       const McConfig& cfg);

}  // namespace wpc
