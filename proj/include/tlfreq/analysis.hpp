#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "tlfreq/formula.hpp"
#include "tlfreq/gfrf.hpp"
#include "tlfreq/kernel_table.hpp"
#include "tlfreq/signal.hpp"
#include "tlfreq/spectrum.hpp"

namespace tlfreq {

struct OutputSpectrumOptions {
  std::size_t max_order = 3;
  /// Input bins with |X| <= support_tolerance * max|X| are treated as zero.
  double support_tolerance = 1e-12;
  /// Upper bound on (support bins)^(n-1) * output bins * terms per order.
  double budget = 2e10;
};

/// Y = sum_{n <= max_order} Y_n with
///   Y_n(w) = (domega / 2 pi)^(n-1) sum_{w_1 + .. + w_n = w} H_n(w_1..w_n) X(w_1)..X(w_n),
/// the Riemann sum of the output-spectrum integral on X's grid (the sqrt(n)
/// of the hyperplane measure cancels against the grid parametrisation).
/// Throws OrderTooHigh (max_order > 4) or ComputeBudgetExceeded.
Spectrum output_spectrum(const Gfrf& gfrf, const Spectrum& x, const OutputSpectrumOptions& options = {});

/// One order of the above.
Spectrum output_spectrum_order(const Gfrf& gfrf, const Spectrum& x, std::size_t n,
                               const OutputSpectrumOptions& options = {});

struct GfrfGrid {
  std::size_t order = 0;
  double omega_max = 0.0;
  std::size_t num_points = 0;
  std::vector<std::complex<double>> values;  // row-major, last slot fastest

  double omega(std::size_t i) const noexcept;
  const std::complex<double>& at(std::span<const std::size_t> index) const;
};

inline constexpr double kDefaultGridBudget = 1e7;

/// H_n on the uniform grid [0, omega_max]^n with num_points per axis. Throws GridTooLarge.
GfrfGrid gfrf_grid(const Gfrf& gfrf, std::size_t n, double omega_max, std::size_t num_points,
                   double budget = kDefaultGridBudget);

/// CSV `omega1[,omega2[,omega3]],re,im,abs`.
void write_grid_csv(std::ostream& out, const GfrfGrid& grid);

struct CutoffResult {
  double omega = 0.0;            // rad/s
  bool found = false;            // false -> omega is the omega_max sentinel
  std::string diagnostic;        // NoFrequencyBelowThreshold when !found
  std::vector<double> omegas;    // grid
  std::vector<double> profile;   // m(w): worst |H_n| with w in any slot
};

/// Smallest grid w* with m(w) < threshold for every grid w >= w*, where m(w)
/// maximises |H_n| over orders n <= max_order, slots, and grid values of the
/// other n-1 frequencies in [0, omega_max].
CutoffResult cutoff_frequency(const Gfrf& gfrf, double threshold, double omega_max,
                              std::size_t num_points, std::size_t max_order,
                              double budget = 5e9);

nlohmann::json cutoff_to_json(const CutoffResult& result, double threshold, std::size_t max_order);

struct SafetyTolerances {
  double rho_rel = 0.05;
  double tie = 1e-12;
};

struct SafetyReport {
  double cutoff = 0.0;
  double signal_rel_diff = 0.0;
  double rho_rel_diff = 0.0;
  double rho_max_abs_diff = 0.0;
  std::size_t truth_flip_count = 0;
  bool safe = false;
  Signal compressed;
  SafetyTolerances tolerances;
};

/// Low-passes x at cutoff (cutoffs at or above Nyquist leave x unchanged),
/// monitors both signals and compares robustness on the common domain.
SafetyReport compression_safety_report(const Formula& formula, const Signal& x, double cutoff,
                                       const KernelTable& kernels, const SafetyTolerances& tol = {});

nlohmann::json safety_report_to_json(const SafetyReport& report, const Formula& formula);

}  // namespace tlfreq
