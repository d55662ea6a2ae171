#pragma once

#include <cstddef>

#include "tlfreq/formula.hpp"
#include "tlfreq/kernel_table.hpp"

namespace tlfreq {

/// Uniform time grid: n samples starting at t0 with step dt.
struct Grid {
  double t0 = 0.0;
  double dt = 0.0;
  std::size_t size = 0;

  double time(std::size_t k) const noexcept { return t0 + static_cast<double>(k) * dt; }
};

/// Sub-range of the input grid on which a formula's robustness is computable.
struct ValidDomain {
  std::size_t first = 0;  // inclusive sample indices of the input grid
  std::size_t last = 0;
  double begin = 0.0;     // corresponding times
  double end = 0.0;

  std::size_t size() const noexcept { return last - first + 1; }
  bool contains(std::size_t k) const noexcept { return k >= first && k <= last; }
};

/// Temporal depth in samples: upper-bound lags summed along the deepest path.
std::size_t temporal_depth(const Formula& formula, double dt);

/// [t0 + depth + left kernel reach, t_end - right kernel reach].
/// Throws SignalTooShortForFormula when fewer than two samples remain.
ValidDomain valid_domain(const Formula& formula, const KernelTable& kernels, const Grid& grid);

}  // namespace tlfreq
