#include "tlfreq/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tlfreq/error.hpp"

namespace tlfreq {

namespace {

void normalize_amplitudes(std::vector<Sinusoid>& terms, double amp_bound) {
  double total = 0.0;
  for (const auto& s : terms) total += std::abs(s.amplitude);
  if (total <= 0.0) return;
  for (auto& s : terms) s.amplitude *= amp_bound / total;
}

}  // namespace

std::vector<Sinusoid> random_sinusoids(std::uint64_t seed, int num_terms, FrequencyRange range,
                                       double amp_bound) {
  if (!(range.lo >= 0.0) || !(range.hi >= range.lo)) {
    throw Error("BadRange", "frequency range must satisfy 0 <= lo <= hi");
  }
  if (num_terms < 0) {
    throw Error("BadRange", "number of sinusoids must be non-negative");
  }
  if (!(amp_bound > 0.0)) {
    throw Error("BadRange", "amplitude bound must be positive");
  }
  UniformSource rng(seed);
  std::vector<Sinusoid> terms(static_cast<std::size_t>(num_terms));
  for (auto& s : terms) {
    s.omega = rng.next(range.lo, range.hi);
    s.phase = rng.next(0.0, 2.0 * std::numbers::pi);
    s.amplitude = rng.next(0.1, 1.0);
  }
  normalize_amplitudes(terms, amp_bound);
  return terms;
}

Signal render_sinusoids(const std::vector<Sinusoid>& terms, TimeDomain domain, double dt) {
  if (!(dt > 0.0) || !(domain.end > domain.begin)) {
    throw Error("BadRange", "time domain must be non-empty with positive step");
  }
  const auto n = static_cast<std::size_t>(std::floor((domain.end - domain.begin) / dt + 1e-9)) + 1;
  std::vector<double> v(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = domain.begin + static_cast<double>(k) * dt;
    double acc = 0.0;
    for (const auto& s : terms) acc += s.amplitude * std::sin(s.omega * t + s.phase);
    v[k] = acc;
  }
  return Signal(domain.begin, dt, std::move(v));
}

Signal sum_of_sinusoids(std::uint64_t seed, int num_terms, FrequencyRange range, double amp_bound,
                        TimeDomain domain, double dt) {
  if (dt > 0.0 && !(range.hi < std::numbers::pi / dt)) {
    throw Error("BadRange", "frequency range must stay below the Nyquist frequency");
  }
  return render_sinusoids(random_sinusoids(seed, num_terms, range, amp_bound), domain, dt);
}

Signal periodic_sum_of_sinusoids(std::uint64_t seed, int num_terms, int max_harmonic,
                                 double period, double amp_bound, TimeDomain domain, double dt) {
  if (max_harmonic < 1 || !(period > 0.0)) {
    throw Error("BadRange", "periodic signal needs max_harmonic >= 1 and a positive period");
  }
  if (num_terms < 1 || !(amp_bound > 0.0)) {
    throw Error("BadRange", "need at least one sinusoid and a positive amplitude bound");
  }
  UniformSource rng(seed);
  std::vector<Sinusoid> terms(static_cast<std::size_t>(num_terms));
  const double base = 2.0 * std::numbers::pi / period;
  for (auto& s : terms) {
    const int k = 1 + static_cast<int>(rng.next() * max_harmonic);
    s.omega = base * std::min(k, max_harmonic);
    s.phase = rng.next(0.0, 2.0 * std::numbers::pi);
    s.amplitude = rng.next(0.1, 1.0);
  }
  normalize_amplitudes(terms, amp_bound);
  return render_sinusoids(terms, domain, dt);
}

}  // namespace tlfreq
