#pragma once

namespace wpc {

/// Physical parameters of the save-then-transmit link.
///
/// All powers are in energy per channel use. The harvester efficiency,
/// beacon power and large-scale gain are lumped into `p_e`.
struct SystemParams {
  double p_e = 1.0;      ///< average harvested power E[Z]
  double p_t = 1.0;      ///< transmit power of the Gaussian codebook
  double sigma2 = 1.0;   ///< receiver noise variance
  double epsilon = 0.0;  ///< target decoding error probability, in [0, 1)

  /// Throws DomainError unless p_e, p_t, sigma2 > 0 and 0 <= epsilon < 1.
  void validate() const;

  double power_ratio() const { return p_t / p_e; }
  double snr() const { return p_t / sigma2; }
};

/// Harvest length m and transmit length n in channel uses.
///
/// Concrete frames carry integral values; closed forms also accept real m, n
/// so that asymptotic statements can be evaluated without rounding.
struct Blocklengths {
  double m = 1.0;
  double n = 1.0;

  /// Throws DomainError unless m >= 1 and n >= 1.
  void validate() const;

  double total() const { return m + n; }
  bool integral() const;
};

}  // namespace wpc
