#pragma once

#include <cstddef>

namespace tlfreq {

/// Closed past-time interval [lo, hi] in seconds, 0 <= lo <= hi.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sample lags of the discrete window t - [lo, hi]: indices i-max .. i-min.
///
/// The lower time bound is rounded up and the upper bound down, so the
/// discrete window is contained in the continuous one. When that leaves no
/// grid point (a sub-step window that straddles no sample) the window
/// collapses onto the sample nearest to its midpoint.
struct Lags {
  std::size_t min = 0;
  std::size_t max = 0;

  std::size_t width() const noexcept { return max - min + 1; }
};

Lags to_lags(const Interval& interval, double dt);

/// Nearest grid lag of a non-negative delay.
std::size_t delay_lag(double delay, double dt);

}  // namespace tlfreq
