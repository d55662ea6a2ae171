#include "tlfreq/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "tlfreq/error.hpp"
#include "tlfreq/io.hpp"
#include "tlfreq/kernels.hpp"
#include "tlfreq/monitor.hpp"

namespace tlfreq {

namespace {

// Factor table of order n over the given frequencies, optionally weighted
// per point (the input spectrum in output_spectrum).
kernels::FactorTable factor_table(const Gfrf& gfrf, std::size_t n, const std::vector<double>& omegas,
                                  const std::vector<std::complex<double>>* weights) {
  const auto& terms = gfrf.terms(n);
  kernels::FactorTable table;
  table.terms = terms.size();
  table.slots = n;
  table.points = omegas.size();
  table.coeffs.reserve(terms.size());
  table.factors.resize(table.terms * table.slots * table.points);
  for (std::size_t t = 0; t < terms.size(); ++t) {
    table.coeffs.push_back(terms[t].coeff);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < omegas.size(); ++i) {
        auto v = slot_factor(gfrf, terms[t], j, omegas[i]);
        if (weights != nullptr) v *= (*weights)[i];
        table.factors[(t * n + j) * table.points + i] = v;
      }
    }
  }
  return table;
}

std::vector<double> axis(double omega_max, std::size_t num_points) {
  std::vector<double> w(num_points);
  for (std::size_t i = 0; i < num_points; ++i) {
    w[i] = num_points == 1 ? 0.0 : omega_max * static_cast<double>(i) / static_cast<double>(num_points - 1);
  }
  return w;
}

}  // namespace

Spectrum output_spectrum_order(const Gfrf& gfrf, const Spectrum& x, std::size_t n,
                               const OutputSpectrumOptions& options) {
  if (n > 4) throw Error("OrderTooHigh", "output spectra are limited to order 4");
  Spectrum y{x.omega0, x.domega, x.time_origin, std::vector<std::complex<double>>(x.size(), 0.0)};
  if (n == 0) {
    // constant output h0 on the record length
    y.bins[y.zero_bin()] = gfrf.h0() * 2.0 * std::numbers::pi / x.domega;
    return y;
  }
  if (gfrf.terms(n).empty()) return y;
  if (n == 1) {
    for (std::size_t m = 0; m < x.size(); ++m) {
      const double w = x.omega(m);
      y.bins[m] = evaluate_gfrf(gfrf, 1, std::span<const double>(&w, 1)) * x.bins[m];
    }
    return y;
  }

  double peak = 0.0;
  for (const auto& v : x.bins) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return y;
  std::vector<double> omegas;
  std::vector<std::complex<double>> weights;
  std::vector<long> bin_of;
  const long zero = static_cast<long>(x.zero_bin());
  for (std::size_t m = 0; m < x.size(); ++m) {
    if (std::abs(x.bins[m]) > options.support_tolerance * peak) {
      omegas.push_back(x.omega(m));
      weights.push_back(x.bins[m]);
      bin_of.push_back(static_cast<long>(m) - zero);
    }
  }
  const double cost = std::pow(static_cast<double>(omegas.size()), static_cast<double>(n - 1)) *
                      static_cast<double>(x.size()) * static_cast<double>(gfrf.terms(n).size());
  if (cost > options.budget) {
    throw Error("ComputeBudgetExceeded", "order-" + std::to_string(n) + " output spectrum needs ~" +
                                             format_double(cost) + " operations (budget " +
                                             format_double(options.budget) + ")");
  }
  const auto table = factor_table(gfrf, n, omegas, &weights);
  // Output bins outside the input grid are dropped (no aliasing).
  std::vector<std::complex<double>> sums(x.size(), 0.0);
  kernels::parallel::hyperplane_sum(table, bin_of, -zero, sums);
  const double scale = std::pow(x.domega / (2.0 * std::numbers::pi), static_cast<double>(n - 1));
  for (std::size_t m = 0; m < x.size(); ++m) y.bins[m] = scale * sums[m];
  return y;
}

Spectrum output_spectrum(const Gfrf& gfrf, const Spectrum& x, const OutputSpectrumOptions& options) {
  if (options.max_order > 4) throw Error("OrderTooHigh", "output spectra are limited to order 4");
  Spectrum y = output_spectrum_order(gfrf, x, 0, options);
  for (std::size_t n = 1; n <= options.max_order; ++n) {
    const Spectrum yn = output_spectrum_order(gfrf, x, n, options);
    for (std::size_t m = 0; m < y.size(); ++m) y.bins[m] += yn.bins[m];
  }
  return y;
}

double GfrfGrid::omega(std::size_t i) const noexcept {
  return num_points <= 1 ? 0.0 : omega_max * static_cast<double>(i) / static_cast<double>(num_points - 1);
}

const std::complex<double>& GfrfGrid::at(std::span<const std::size_t> index) const {
  if (index.size() != order) throw Error("BadArity", "grid index has the wrong number of slots");
  std::size_t flat = 0;
  for (std::size_t j = 0; j < order; ++j) {
    if (index[j] >= num_points) throw Error("IndexOutOfRange", "grid index out of range");
    flat = flat * num_points + index[j];
  }
  return values[flat];
}

GfrfGrid gfrf_grid(const Gfrf& gfrf, std::size_t n, double omega_max, std::size_t num_points, double budget) {
  if (n < 1) throw Error("BadArity", "grid order must be at least 1");
  if (num_points < 2 || !(omega_max > 0.0)) {
    throw Error("BadGrid", "grid needs at least two points and a positive omega_max");
  }
  const double size = std::pow(static_cast<double>(num_points), static_cast<double>(n));
  if (size > budget) {
    throw Error("GridTooLarge", format_double(size) + " grid points exceed the budget of " + format_double(budget));
  }
  GfrfGrid grid{n, omega_max, num_points, std::vector<std::complex<double>>(static_cast<std::size_t>(size), 0.0)};
  if (gfrf.terms(n).empty()) return grid;
  const auto table = factor_table(gfrf, n, axis(omega_max, num_points), nullptr);
  kernels::parallel::evaluate_grid(table, grid.values);
  return grid;
}

void write_grid_csv(std::ostream& out, const GfrfGrid& grid) {
  for (std::size_t j = 0; j < grid.order; ++j) out << "omega" << j + 1 << ',';
  out << "re,im,abs\n";
  std::vector<std::size_t> index(grid.order, 0);
  for (std::size_t flat = 0; flat < grid.values.size(); ++flat) {
    std::size_t rest = flat;
    for (std::size_t j = grid.order; j-- > 0;) {
      index[j] = rest % grid.num_points;
      rest /= grid.num_points;
    }
    for (std::size_t j = 0; j < grid.order; ++j) out << format_double(grid.omega(index[j])) << ',';
    const auto v = grid.values[flat];
    out << format_double(v.real()) << ',' << format_double(v.imag()) << ',' << format_double(std::abs(v)) << '\n';
  }
}

CutoffResult cutoff_frequency(const Gfrf& gfrf, double threshold, double omega_max, std::size_t num_points,
                              std::size_t max_order, double budget) {
  if (!(threshold > 0.0)) throw Error("BadThreshold", "cutoff threshold must be positive");
  if (num_points < 2 || !(omega_max > 0.0)) {
    throw Error("BadGrid", "grid needs at least two points and a positive omega_max");
  }
  double cost = 0.0;
  for (std::size_t n = 1; n <= max_order; ++n) {
    cost += std::pow(static_cast<double>(num_points), static_cast<double>(n)) *
            static_cast<double>(gfrf.terms(n).size());
  }
  if (cost > budget) {
    throw Error("ComputeBudgetExceeded", "cutoff search needs ~" + format_double(cost) +
                                             " term evaluations (budget " + format_double(budget) +
                                             "); lower --points or --orders");
  }
  CutoffResult r;
  r.omegas = axis(omega_max, num_points);
  r.profile.assign(num_points, 0.0);
  std::vector<double> p(num_points);
  for (std::size_t n = 1; n <= max_order; ++n) {
    if (gfrf.terms(n).empty()) continue;
    kernels::parallel::slot_profile(factor_table(gfrf, n, r.omegas, nullptr), p);
    for (std::size_t i = 0; i < num_points; ++i) r.profile[i] = std::max(r.profile[i], p[i]);
  }
  std::size_t first_quiet = num_points;
  while (first_quiet > 0 && r.profile[first_quiet - 1] < threshold) --first_quiet;
  if (first_quiet == num_points) {
    r.omega = omega_max;
    r.found = false;
    r.diagnostic = "NoFrequencyBelowThreshold";
  } else {
    r.omega = r.omegas[first_quiet];
    r.found = true;
  }
  return r;
}

nlohmann::json cutoff_to_json(const CutoffResult& r, double threshold, std::size_t max_order) {
  nlohmann::json j = {{"cutoff_rad_s", r.omega},
                      {"cutoff_hz", r.omega / (2.0 * std::numbers::pi)},
                      {"found", r.found},
                      {"threshold", threshold},
                      {"max_order", max_order},
                      {"omega_max", r.omegas.empty() ? 0.0 : r.omegas.back()},
                      {"points", r.omegas.size()},
                      {"profile", r.profile}};
  if (!r.found) j["diagnostic"] = r.diagnostic;
  return j;
}

SafetyReport compression_safety_report(const Formula& formula, const Signal& x, double cutoff,
                                       const KernelTable& kernels, const SafetyTolerances& tol) {
  SafetyReport r{cutoff, 0.0, 0.0, 0.0, 0, false, x, tol};
  if (cutoff < nyquist(x.dt())) r.compressed = lowpass(x, cutoff);
  const RobustnessSignal rho = robustness(formula, x, kernels);
  const RobustnessSignal rho_c = robustness(formula, r.compressed, kernels);

  const double x_rms = rms(x.samples());
  const double dx = rms((x - r.compressed).samples());
  r.signal_rel_diff = x_rms > 0.0 ? dx / x_rms : dx;

  double sq_diff = 0.0;
  double sq_ref = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < rho.values.size(); ++k) {
    const double a = rho.values[k];
    const double b = rho_c.values[k];
    if ((a > tol.tie && b < -tol.tie) || (a < -tol.tie && b > tol.tie)) ++r.truth_flip_count;
    if (!std::isfinite(a) || !std::isfinite(b)) continue;
    sq_diff += (a - b) * (a - b);
    sq_ref += a * a;
    r.rho_max_abs_diff = std::max(r.rho_max_abs_diff, std::abs(a - b));
    ++count;
  }
  if (count > 0) {
    r.rho_rel_diff = sq_ref > 0.0 ? std::sqrt(sq_diff / sq_ref) : std::sqrt(sq_diff / static_cast<double>(count));
  }
  r.safe = r.rho_rel_diff <= tol.rho_rel && r.truth_flip_count == 0;
  return r;
}

nlohmann::json safety_report_to_json(const SafetyReport& r, const Formula& formula) {
  return {{"formula", to_string(formula)},
          {"cutoff_rad_s", r.cutoff},
          {"cutoff_hz", r.cutoff / (2.0 * std::numbers::pi)},
          {"signal_rel_diff", r.signal_rel_diff},
          {"rho_rel_diff", r.rho_rel_diff},
          {"rho_max_abs_diff", r.rho_max_abs_diff},
          {"truth_flip_count", r.truth_flip_count},
          {"verdict", r.safe ? "safe" : "unsafe"},
          {"tolerances", {{"rho_rel", r.tolerances.rho_rel}, {"tie", r.tolerances.tie}}},
          {"signal", {{"t0", r.compressed.t0()}, {"dt", r.compressed.dt()}, {"samples", r.compressed.size()}}}};
}

}  // namespace tlfreq
