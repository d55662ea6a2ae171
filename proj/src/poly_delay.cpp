#include "tlfreq/poly_delay.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "tlfreq/error.hpp"
#include "tlfreq/generator.hpp"
#include "tlfreq/kernels.hpp"

namespace tlfreq {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void append_monomials(std::size_t num_vars, int total, std::vector<int>& current, std::size_t var,
                      std::vector<std::vector<int>>& out) {
  if (var + 1 == num_vars) {
    current[var] = total;
    out.push_back(current);
    return;
  }
  for (int r = total; r >= 0; --r) {
    current[var] = r;
    append_monomials(num_vars, total - r, current, var + 1, out);
  }
}

double window_extremum(std::span<const double> u, std::size_t i, const Lags& lags, TemporalOp op) {
  double v = u[i - lags.max];
  for (std::size_t k = i - lags.max; k <= i - lags.min; ++k) {
    v = op == TemporalOp::Once ? std::max(v, u[k]) : std::min(v, u[k]);
  }
  return v;
}

}  // namespace

const char* temporal_op_name(TemporalOp op) { return op == TemporalOp::Once ? "once" : "hist"; }

std::vector<std::vector<int>> monomial_exponents(std::size_t num_vars, int degree) {
  std::vector<std::vector<int>> out;
  if (num_vars == 0) return out;
  std::vector<int> current(num_vars, 0);
  for (int total = 1; total <= degree; ++total) append_monomials(num_vars, total, current, 0, out);
  return out;
}

std::vector<double> fit_delays(const Interval& interval, const FitConfig& cfg) {
  std::vector<double> delays = cfg.delays;
  if (delays.empty()) {
    const int d = std::max(1, cfg.num_delays);
    for (int j = 0; j < d; ++j) {
      delays.push_back(d == 1 ? interval.lo
                              : interval.lo + (interval.hi - interval.lo) * j / static_cast<double>(d - 1));
    }
  }
  for (double t : delays) {
    if (t < interval.lo - 1e-12 || t > interval.hi + 1e-12) {
      throw Error("DelayOutsideWindow", "fit delay lies outside the operator interval");
    }
  }
  std::sort(delays.begin(), delays.end());
  delays.erase(std::unique(delays.begin(), delays.end(),
                           [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
               delays.end());
  return delays;
}

double PolyDelayOperator::evaluate(std::span<const double> delayed) const {
  double acc = 0.0;
  for (std::size_t m = 0; m < exponents.size(); ++m) {
    double v = coefficients[m];
    for (std::size_t j = 0; j < delayed.size(); ++j) {
      for (int e = 0; e < exponents[m][j]; ++e) v *= delayed[j];
    }
    acc += v;
  }
  return acc;
}

std::size_t PolyDelayOperator::max_lag(double dt) const {
  std::size_t m = 0;
  for (double t : delays) m = std::max(m, delay_lag(t, dt));
  return m;
}

Signal PolyDelayOperator::apply(const Signal& u) const {
  const std::size_t lag = max_lag(u.dt());
  if (lag >= u.size()) {
    throw Error("SignalTooShortForFormula", "signal shorter than the operator's delays");
  }
  std::vector<std::size_t> lags;
  for (double t : delays) lags.push_back(delay_lag(t, u.dt()));
  std::vector<double> out(u.size() - lag);
  const long n = static_cast<long>(out.size());
#pragma omp parallel
  {
    std::vector<double> delayed(lags.size());
#pragma omp for schedule(static)
    for (long k = 0; k < n; ++k) {
      const std::size_t i = static_cast<std::size_t>(k) + lag;
      for (std::size_t j = 0; j < lags.size(); ++j) delayed[j] = u[i - lags[j]];
      out[static_cast<std::size_t>(k)] = evaluate(delayed);
    }
  }
  return Signal(u.time(lag), u.dt(), std::move(out));
}

LeastSquaresResult solve_least_squares(std::span<const double> a, std::size_t rows, std::size_t cols,
                                       std::span<const double> b, double ridge,
                                       bool require_full_rank) {
  if (rows < cols && ridge <= 0.0 && require_full_rank) {
    throw Error("UnderdeterminedSystem", std::to_string(rows) + " equations for " +
                                             std::to_string(cols) + " unknowns");
  }
  Eigen::Map<const RowMatrix> am(a.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  Eigen::Map<const Eigen::VectorXd> bm(b.data(), static_cast<Eigen::Index>(rows));
  Eigen::VectorXd scale = am.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < scale.size(); ++j) {
    if (scale[j] == 0.0) scale[j] = 1.0;
  }
  const Eigen::MatrixXd scaled = am * scale.cwiseInverse().asDiagonal();

  LeastSquaresResult out;
  const Eigen::VectorXd sv = Eigen::BDCSVD<Eigen::MatrixXd>(scaled).singularValues();
  out.condition = sv.size() == 0 ? 0.0
                  : sv[sv.size() - 1] > 0.0 ? sv[0] / sv[sv.size() - 1]
                                            : std::numeric_limits<double>::infinity();

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(scaled);
  out.rank = static_cast<std::size_t>(cod.rank());
  Eigen::VectorXd x;
  if (ridge > 0.0) {
    Eigen::MatrixXd aug(scaled.rows() + scaled.cols(), scaled.cols());
    aug << scaled, std::sqrt(ridge) * Eigen::MatrixXd::Identity(scaled.cols(), scaled.cols());
    Eigen::VectorXd baug = Eigen::VectorXd::Zero(aug.rows());
    baug.head(scaled.rows()) = bm;
    x = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(aug).solve(baug);
  } else {
    if (require_full_rank && out.rank < cols) {
      throw Error("RankDeficient", "design matrix has rank " + std::to_string(out.rank) + " of " +
                                       std::to_string(cols) + " (scaled condition " +
                                       std::to_string(out.condition) + "); set a ridge");
    }
    x = cod.solve(bm);
  }
  x = x.cwiseQuotient(scale);
  out.solution.assign(x.data(), x.data() + x.size());
  return out;
}

PolyDelayOperator fit_poly_delay(TemporalOp op, const Interval& interval, const FitConfig& cfg) {
  check_interval(interval);
  PolyDelayOperator p;
  p.op = op;
  p.interval = interval;
  p.delays = fit_delays(interval, cfg);
  p.degree = cfg.degree;
  p.exponents = monomial_exponents(p.delays.size(), cfg.degree);

  const Lags window = to_lags(interval, cfg.dt);
  std::vector<std::size_t> lags;
  for (double t : p.delays) lags.push_back(delay_lag(t, cfg.dt));
  const std::size_t need = std::max(window.max, *std::max_element(lags.begin(), lags.end()));

  const auto per_signal = static_cast<std::size_t>(cfg.times_per_signal);
  const std::size_t rows = static_cast<std::size_t>(cfg.num_signals) * per_signal;
  const std::size_t cols = p.exponents.size();
  if (rows <= cols) {
    throw Error("UnderdeterminedSystem", std::to_string(rows) + " training samples for " +
                                             std::to_string(cols) + " unknowns");
  }

  std::vector<double> delayed(rows * lags.size());
  std::vector<double> target(rows);
  std::mt19937_64 seeds(cfg.seed);
  for (int l = 0; l < cfg.num_signals; ++l) {
    const Signal u = sum_of_sinusoids(seeds(), cfg.num_terms, cfg.freq_range, cfg.amp_bound,
                                      TimeDomain{0.0, cfg.duration}, cfg.dt);
    if (need + 1 >= u.size()) {
      throw Error("SignalTooShortForFormula", "training signals are shorter than the operator window");
    }
    const std::size_t span = u.size() - 1 - need;
    for (std::size_t k = 0; k < per_signal; ++k) {
      const std::size_t i =
          need + (per_signal == 1 ? span
                                  : static_cast<std::size_t>(std::llround(
                                        static_cast<double>(k * span) / static_cast<double>(per_signal - 1))));
      const std::size_t row = static_cast<std::size_t>(l) * per_signal + k;
      for (std::size_t j = 0; j < lags.size(); ++j) delayed[row * lags.size() + j] = u[i - lags[j]];
      target[row] = window_extremum(u.samples(), i, window, op);
    }
  }

  kernels::MonomialBasis basis;
  basis.num_vars = lags.size();
  for (const auto& e : p.exponents) basis.exponents.insert(basis.exponents.end(), e.begin(), e.end());
  std::vector<double> design(rows * cols);
  kernels::parallel::monomial_rows(basis, delayed, rows, design);

  const auto ls = solve_least_squares(design, rows, cols, target, cfg.ridge, true);
  p.coefficients = ls.solution;

  double sq = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    const double e = p.evaluate(std::span<const double>(delayed).subspan(r * lags.size(), lags.size())) - target[r];
    sq += e * e;
  }
  p.report = FitReport{rows, cols, ls.rank, ls.condition, std::sqrt(sq / static_cast<double>(rows)), cfg.ridge};
  return p;
}

Gfrf poly_delay_to_gfrf(const PolyDelayOperator& op) {
  Gfrf g;
  for (std::size_t m = 0; m < op.exponents.size(); ++m) {
    Term t;
    t.coeff = op.coefficients[m];
    for (std::size_t j = 0; j < op.delays.size(); ++j) {
      for (int e = 0; e < op.exponents[m][j]; ++e) {
        t.delays.push_back(op.delays[j]);
        t.factors.push_back(kUnity);
      }
    }
    g.add_term(std::move(t));
  }
  return g;
}

nlohmann::json fit_report_to_json(const FitReport& r) {
  return {{"rows", r.rows},           {"unknowns", r.unknowns}, {"rank", r.rank},
          {"condition", r.condition}, {"train_rms", r.train_rms}, {"ridge", r.ridge}};
}

nlohmann::json poly_delay_to_json(const PolyDelayOperator& op) {
  nlohmann::json terms = nlohmann::json::array();
  for (std::size_t m = 0; m < op.exponents.size(); ++m) {
    terms.push_back({{"exponents", op.exponents[m]}, {"coeff", op.coefficients[m]}});
  }
  return {{"op", temporal_op_name(op.op)},
          {"interval", {op.interval.lo, op.interval.hi}},
          {"delays", op.delays},
          {"degree", op.degree},
          {"terms", terms},
          {"report", fit_report_to_json(op.report)}};
}

}  // namespace tlfreq
