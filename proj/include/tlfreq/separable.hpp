#pragma once

#include <span>
#include <vector>

#include "tlfreq/fit_config.hpp"
#include "tlfreq/gfrf.hpp"
#include "tlfreq/monitor.hpp"
#include "tlfreq/poly_delay.hpp"
#include "tlfreq/signal.hpp"

namespace tlfreq {

/// N u(t) = sum_k coeffs[k] u(t)^k.
struct MemorylessPoly {
  std::vector<double> coeffs;  // coeffs[0] is the constant term

  double operator()(double s) const;
  std::size_t degree() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

/// H_0 = alpha_0, H_n = alpha_n for every frequency tuple.
Gfrf memoryless_poly_gfrf(const MemorylessPoly& poly);

/// min/max(u, v) ~ R(u(t)) + Q(v(t)) with zero constant terms.
struct SeparableFit {
  Extremum mode = Extremum::Max;
  MemorylessPoly r;  // applied to u (left operand)
  MemorylessPoly q;  // applied to v (right operand)
  FitReport report;
};

struct SamplePair {
  double u = 0.0;
  double v = 0.0;
};

/// Joint least squares on given (u, v) samples; minimum-norm when the data
/// do not determine R and Q separately (e.g. u == v).
SeparableFit fit_separable_on_pairs(Extremum mode, int degree, std::span<const SamplePair> pairs,
                                    double ridge = 0.0);

/// Training pairs from independent sinusoid combinations drawn per cfg.
std::vector<SamplePair> separable_training_pairs(const FitConfig& cfg);

SeparableFit fit_separable_minmax(Extremum mode, int degree, const FitConfig& cfg);

nlohmann::json separable_to_json(const SeparableFit& fit);

}  // namespace tlfreq
