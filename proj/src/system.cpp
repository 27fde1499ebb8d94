#include "wpc/system.hpp"

#include <cmath>

#include <fmt/format.h>

#include "wpc/error.hpp"

namespace wpc {

void SystemParams::validate() const {
  if (!(p_e > 0)) throw DomainError(fmt::format("p_e must be > 0 (got {})", p_e));
  if (!(p_t > 0)) throw DomainError(fmt::format("p_t must be > 0 (got {})", p_t));
  if (!(sigma2 > 0)) throw DomainError(fmt::format("sigma2 must be > 0 (got {})", sigma2));
  if (!(epsilon >= 0 && epsilon < 1)) {
    throw DomainError(fmt::format("epsilon must lie in [0, 1) (got {})", epsilon));
  }
}

void Blocklengths::validate() const {
  if (!(m >= 1)) throw DomainError(fmt::format("m must be >= 1 (got {})", m));
  if (!(n >= 1)) throw DomainError(fmt::format("n must be >= 1 (got {})", n));
}

bool Blocklengths::integral() const { return std::floor(m) == m && std::floor(n) == n; }

}  // namespace wpc
