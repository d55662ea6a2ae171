#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "tlfreq/fit_config.hpp"
#include "tlfreq/gfrf.hpp"
#include "tlfreq/monitor.hpp"
#include "tlfreq/signal.hpp"
#include "tlfreq/window.hpp"

namespace tlfreq {

enum class TemporalOp { Once, Hist };

const char* temporal_op_name(TemporalOp op);

struct FitReport {
  std::size_t rows = 0;
  std::size_t unknowns = 0;
  std::size_t rank = 0;
  double condition = 0.0;   // of the column-scaled design matrix
  double train_rms = 0.0;
  double ridge = 0.0;
};

/// Exponent vectors r with 1 <= sum r <= degree, grouped by total degree and
/// lexicographically descending within a degree. The constant monomial is
/// never included.
std::vector<std::vector<int>> monomial_exponents(std::size_t num_vars, int degree);

/// P(u(t - t_1), ..., u(t - t_D)) = sum_r alpha_r prod_j u(t - t_j)^{r_j}.
struct PolyDelayOperator {
  TemporalOp op = TemporalOp::Once;
  Interval interval;
  std::vector<double> delays;             // seconds, within interval
  int degree = 0;
  std::vector<std::vector<int>> exponents;
  std::vector<double> coefficients;       // aligned with exponents
  FitReport report;

  /// Evaluates at every grid t whose delayed samples exist (delays rounded to the grid).
  Signal apply(const Signal& u) const;
  /// Polynomial value for one vector of delayed samples.
  double evaluate(std::span<const double> delayed) const;
  std::size_t max_lag(double dt) const;
};

/// Least-squares fit of N_once / N_hist over the interval on random sinusoid
/// combinations. Throws UnderdeterminedSystem or RankDeficient.
PolyDelayOperator fit_poly_delay(TemporalOp op, const Interval& interval, const FitConfig& cfg);

/// Delays used for a fit: cfg.delays if given, else num_delays uniform over
/// [lo, hi] including both ends, deduplicated.
std::vector<double> fit_delays(const Interval& interval, const FitConfig& cfg);

/// One Gfrf term per monomial: delays t_j repeated r_j times in slot order.
Gfrf poly_delay_to_gfrf(const PolyDelayOperator& op);

nlohmann::json poly_delay_to_json(const PolyDelayOperator& op);
nlohmann::json fit_report_to_json(const FitReport& report);

/// Solves min ||A x - b||^2 + ridge ||x||^2 on unit-norm columns with a
/// complete orthogonal decomposition. A is row-major rows x cols.
struct LeastSquaresResult {
  std::vector<double> solution;
  std::size_t rank = 0;
  double condition = 0.0;
};
LeastSquaresResult solve_least_squares(std::span<const double> a, std::size_t rows, std::size_t cols,
                                       std::span<const double> b, double ridge,
                                       bool require_full_rank);

}  // namespace tlfreq
