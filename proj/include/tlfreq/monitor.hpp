#pragma once

#include "tlfreq/domain.hpp"
#include "tlfreq/formula.hpp"
#include "tlfreq/kernel_table.hpp"
#include "tlfreq/signal.hpp"
#include "tlfreq/window.hpp"

namespace tlfreq {

enum class Extremum { Min, Max };

/// Robustness trace on the formula's valid domain. Explicit `true`
/// contributes +infinity.
struct RobustnessSignal {
  Signal values;
  ValidDomain domain;
};

RobustnessSignal robustness(const Formula& formula, const Signal& x, const KernelTable& kernels);

/// y(t) = min or max of u over the grid points of [t - hi, t - lo], for every
/// t of u's grid whose window fits; O(N) via a monotone deque.
Signal sliding_extremum(const Signal& u, const Interval& interval, Extremum mode);

/// max over t' in t - I of min(rho2(t'), min over t'' in (t', t] of rho1(t'')).
/// The inner minimum over an empty range is +infinity.
Signal since_robustness(const Signal& rho1, const Signal& rho2, const Interval& interval);

}  // namespace tlfreq
