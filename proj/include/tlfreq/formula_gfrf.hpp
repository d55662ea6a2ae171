#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "tlfreq/fit_config.hpp"
#include "tlfreq/formula.hpp"
#include "tlfreq/gfrf.hpp"
#include "tlfreq/kernel_table.hpp"
#include "tlfreq/pipeline.hpp"
#include "tlfreq/poly_delay.hpp"
#include "tlfreq/separable.hpp"

namespace tlfreq {

struct CompositionReport {
  std::map<std::size_t, std::size_t> term_counts_per_order;
  double dropped_mass = 0.0;
  std::vector<std::pair<std::string, double>> fit_residuals;  // label -> training RMS
};

nlohmann::json composition_report_to_json(const CompositionReport& report);

struct FormulaGfrf {
  Gfrf gfrf;
  OperatorPipeline pipeline;
  CompositionReport report;
};

/// Builds formula GFRFs and caches operator fits per (operator, interval).
class GfrfBuilder {
 public:
  GfrfBuilder(const KernelTable& kernels, FitConfig cfg, double prune_threshold = 0.0);

  /// Throws TrueNotApproximable, SinceNotGfrfSupported, UnknownAtom.
  FormulaGfrf build(const Formula& formula);

  std::shared_ptr<const PolyDelayOperator> temporal_fit(TemporalOp op, const Interval& interval);
  const SeparableFit& separable_fit(Extremum mode);

  const FitConfig& config() const noexcept { return cfg_; }
  const KernelTable& kernels() const noexcept { return kernels_; }

 private:
  struct Built {
    Gfrf gfrf;
    OperatorPipeline pipeline;
  };
  Built build_node(const Formula& formula, CompositionReport& report);
  Gfrf finish(const Gfrf& gfrf, CompositionReport& report) const;

  const KernelTable& kernels_;
  FitConfig cfg_;
  double prune_threshold_;
  std::map<std::tuple<int, double, double>, std::shared_ptr<const PolyDelayOperator>> fits_;
  std::map<int, SeparableFit> separable_;
};

FormulaGfrf formula_to_gfrf(const Formula& formula, const KernelTable& kernels, const FitConfig& cfg);

struct SampledSince {
  double eta = 0.0;
  Formula formula;   // once[a+eta, a+eta] rhs  and  hist[0, a+eta-dt] lhs
  FormulaGfrf result;
};

/// Operator-space sampling of lhs since_[a,b] rhs: for eta_j = j (b - a) / num_samples,
/// j = 0..num_samples-1, the punctual-since formula's Gfrf. The envelope
/// max_j of the pipelines approximates the since robustness. Throws
/// SinceSamplingDisabled unless enabled.
std::vector<SampledSince> since_sampled_gfrf(const Formula& lhs, const Formula& rhs,
                                             const Interval& interval, std::size_t num_samples,
                                             const KernelTable& kernels, const FitConfig& cfg,
                                             bool enabled);

/// Pointwise max of the sampled pipelines on their common domain.
Signal sampled_since_envelope(const std::vector<SampledSince>& samples, const Signal& x);

}  // namespace tlfreq
