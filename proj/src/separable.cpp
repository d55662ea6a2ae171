#include "tlfreq/separable.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tlfreq/error.hpp"
#include "tlfreq/generator.hpp"

namespace tlfreq {

double MemorylessPoly::operator()(double s) const {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * s + coeffs[k];
  return acc;
}

Gfrf memoryless_poly_gfrf(const MemorylessPoly& poly) {
  Gfrf g;
  if (!poly.coeffs.empty()) g.set_h0(poly.coeffs[0]);
  for (std::size_t n = 1; n < poly.coeffs.size(); ++n) {
    if (poly.coeffs[n] == 0.0) continue;
    g.add_term(Term{poly.coeffs[n], std::vector<double>(n, 0.0), std::vector<int>(n, kUnity)});
  }
  return g;
}

SeparableFit fit_separable_on_pairs(Extremum mode, int degree, std::span<const SamplePair> pairs,
                                    double ridge) {
  if (degree < 1) throw Error("BadFitConfig", "separable fit degree must be at least 1");
  const auto d = static_cast<std::size_t>(degree);
  const std::size_t rows = pairs.size();
  const std::size_t cols = 2 * d;
  if (rows <= cols) {
    throw Error("UnderdeterminedSystem", std::to_string(rows) + " training samples for " +
                                             std::to_string(cols) + " unknowns");
  }
  std::vector<double> design(rows * cols);
  std::vector<double> target(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    double pu = 1.0;
    double pv = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
      pu *= pairs[r].u;
      pv *= pairs[r].v;
      design[r * cols + k] = pu;
      design[r * cols + d + k] = pv;
    }
    target[r] = mode == Extremum::Max ? std::max(pairs[r].u, pairs[r].v) : std::min(pairs[r].u, pairs[r].v);
  }
  const auto ls = solve_least_squares(design, rows, cols, target, ridge, false);

  SeparableFit fit;
  fit.mode = mode;
  fit.r.coeffs.assign(d + 1, 0.0);
  fit.q.coeffs.assign(d + 1, 0.0);
  for (std::size_t k = 0; k < d; ++k) {
    fit.r.coeffs[k + 1] = ls.solution[k];
    fit.q.coeffs[k + 1] = ls.solution[d + k];
  }
  double sq = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    const double e = fit.r(pairs[r].u) + fit.q(pairs[r].v) - target[r];
    sq += e * e;
  }
  fit.report = FitReport{rows, cols, ls.rank, ls.condition, std::sqrt(sq / static_cast<double>(rows)), ridge};
  return fit;
}

std::vector<SamplePair> separable_training_pairs(const FitConfig& cfg) {
  std::vector<SamplePair> pairs;
  std::mt19937_64 seeds(cfg.seed ^ 0x5eedULL);
  const auto per_signal = static_cast<std::size_t>(cfg.times_per_signal);
  for (int l = 0; l < cfg.num_signals; ++l) {
    const TimeDomain dom{0.0, cfg.duration};
    const Signal u = sum_of_sinusoids(seeds(), cfg.num_terms, cfg.freq_range, cfg.amp_bound, dom, cfg.dt);
    const Signal v = sum_of_sinusoids(seeds(), cfg.num_terms, cfg.freq_range, cfg.amp_bound, dom, cfg.dt);
    const std::size_t last = u.size() - 1;
    for (std::size_t k = 0; k < per_signal; ++k) {
      const std::size_t i =
          per_signal == 1 ? last
                          : static_cast<std::size_t>(std::llround(static_cast<double>(k * last) /
                                                                  static_cast<double>(per_signal - 1)));
      // both orders, so max and min fits come out swap symmetric
      pairs.push_back({u[i], v[i]});
      pairs.push_back({v[i], u[i]});
    }
  }
  return pairs;
}

SeparableFit fit_separable_minmax(Extremum mode, int degree, const FitConfig& cfg) {
  const auto pairs = separable_training_pairs(cfg);
  return fit_separable_on_pairs(mode, degree, pairs, 0.0);
}

nlohmann::json separable_to_json(const SeparableFit& fit) {
  return {{"mode", fit.mode == Extremum::Max ? "max" : "min"},
          {"r", fit.r.coeffs},
          {"q", fit.q.coeffs},
          {"report", fit_report_to_json(fit.report)}};
}

}  // namespace tlfreq
