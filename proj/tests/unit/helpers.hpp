#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "tlfreq/error.hpp"
#include "tlfreq/kernel.hpp"
#include "tlfreq/kernel_table.hpp"
#include "tlfreq/signal.hpp"

namespace testing {

inline constexpr double kPi = std::numbers::pi;

/// Code of the tlfreq::Error thrown by f, or "" when nothing is thrown.
template <class F>
std::string error_code(F&& f) {
  try {
    f();
  } catch (const tlfreq::Error& e) {
    return e.code();
  }
  return "";
}

inline tlfreq::Signal constant(double value, double begin, double end, double dt) {
  const auto n = static_cast<std::size_t>(std::llround((end - begin) / dt)) + 1;
  return tlfreq::Signal(begin, dt, std::vector<double>(n, value));
}

template <class F>
tlfreq::Signal sampled(F&& f, double begin, double end, double dt) {
  const auto n = static_cast<std::size_t>(std::llround((end - begin) / dt)) + 1;
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = f(begin + static_cast<double>(k) * dt);
  return tlfreq::Signal(begin, dt, std::move(v));
}

inline tlfreq::Kernel gauss(double mean, double std, double dt) {
  return tlfreq::Kernel::gaussian(mean, std, tlfreq::Kernel::kDefaultTruncation * std, dt);
}

inline tlfreq::KernelTable single_atom(const std::string& name, double mean, double std, double dt) {
  tlfreq::KernelTable kt(dt);
  kt.add(name, gauss(mean, std, dt));
  return kt;
}

inline double max_abs_diff(const tlfreq::Signal& a, const tlfreq::Signal& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace testing
