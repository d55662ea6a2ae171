#pragma once

#include "tlfreq/kernel.hpp"
#include "tlfreq/signal.hpp"

namespace tlfreq {

/// dt * sum_k f(tau_k - t) x(tau_k). t is snapped to the nearest grid point
/// and the kernel window must lie inside x's domain.
double measure(const Kernel& f, const Signal& x, double t);

/// y(t) = <f(. - t), x> for every grid t where the whole kernel window fits.
Signal correlate(const Kernel& f, const Signal& x);

}  // namespace tlfreq
