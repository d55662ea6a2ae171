#include "tlfreq/measure.hpp"

#include <cmath>
#include <string>

#include "tlfreq/error.hpp"
#include "tlfreq/kernels.hpp"

namespace tlfreq {

double measure(const Kernel& f, const Signal& x, double t) {
  const double pos = std::round((t - x.t0()) / x.dt());
  const long i = static_cast<long>(pos);
  const long lo = i + f.first_offset();
  const long hi = i + f.last_offset();
  if (lo < 0 || hi >= static_cast<long>(x.size())) {
    throw Error("WindowOutOfDomain",
                "kernel window at t=" + std::to_string(t) + " leaves the signal domain");
  }
  double acc = 0.0;
  const auto taps = f.taps();
  for (std::size_t k = 0; k < taps.size(); ++k) {
    acc += taps[k] * x[static_cast<std::size_t>(lo) + k];
  }
  return x.dt() * acc;
}

Signal correlate(const Kernel& f, const Signal& x) {
  const long n = static_cast<long>(x.size());
  const long first = static_cast<long>(f.left_reach());
  const long last = n - 1 - static_cast<long>(f.right_reach());
  if (last < first) {
    throw Error("SignalShorterThanKernel", "signal is shorter than the kernel support");
  }
  std::vector<double> out(static_cast<std::size_t>(last - first + 1));
  kernels::parallel::correlate(x.samples(), f.taps(), f.first_offset(), x.dt(),
                               static_cast<std::size_t>(first), out);
  return Signal(x.time(static_cast<std::size_t>(first)), x.dt(), std::move(out));
}

}  // namespace tlfreq
