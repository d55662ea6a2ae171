#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tlfreq/signal.hpp"

namespace tlfreq {

struct FrequencyRange {
  double lo = 0.0;  // rad/s
  double hi = 0.0;  // rad/s

  friend bool operator==(const FrequencyRange&, const FrequencyRange&) = default;
};

struct TimeDomain {
  double begin = 0.0;
  double end = 0.0;
};

struct Sinusoid {
  double amplitude = 0.0;
  double omega = 0.0;
  double phase = 0.0;
};

/// Deterministic stream of doubles in [0, 1) built from mt19937_64 bits, so
/// generated signals are identical across standard libraries.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double next(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 engine_;
};

/// Random component list with frequencies in range, phases in [0, 2 pi) and
/// amplitudes whose absolute sum equals amp_bound.
std::vector<Sinusoid> random_sinusoids(std::uint64_t seed, int num_terms, FrequencyRange range,
                                       double amp_bound);

Signal render_sinusoids(const std::vector<Sinusoid>& terms, TimeDomain domain, double dt);

/// sum_j a_j sin(w_j t + phi_j) with sum |a_j| = amp_bound, so ||x||_inf <= amp_bound
/// and ||x'||_inf <= amp_bound * range.hi.
Signal sum_of_sinusoids(std::uint64_t seed, int num_terms, FrequencyRange range, double amp_bound,
                        TimeDomain domain, double dt);

/// Like sum_of_sinusoids but every frequency is a harmonic k * 2 pi / period with
/// 1 <= k <= max_harmonic, so the signal is exactly periodic with that period.
Signal periodic_sum_of_sinusoids(std::uint64_t seed, int num_terms, int max_harmonic,
                                 double period, double amp_bound, TimeDomain domain, double dt);

}  // namespace tlfreq
