#include "tlfreq/formula_gfrf.hpp"

#include <algorithm>
#include <cmath>

#include "tlfreq/compose.hpp"
#include "tlfreq/error.hpp"
#include "tlfreq/io.hpp"

namespace tlfreq {

namespace {

std::string interval_label(const char* op, const Interval& i) {
  return std::string(op) + "[" + format_double(i.lo) + "," + format_double(i.hi) + "]";
}

}  // namespace

nlohmann::json composition_report_to_json(const CompositionReport& report) {
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [n, c] : report.term_counts_per_order) counts[std::to_string(n)] = c;
  nlohmann::json fits = nlohmann::json::object();
  for (const auto& [label, rms] : report.fit_residuals) fits[label] = rms;
  return {{"term_counts_per_order", counts}, {"dropped_mass", report.dropped_mass}, {"fit_residuals", fits}};
}

GfrfBuilder::GfrfBuilder(const KernelTable& kernels, FitConfig cfg, double prune_threshold)
    : kernels_(kernels), cfg_(std::move(cfg)), prune_threshold_(prune_threshold) {}

std::shared_ptr<const PolyDelayOperator> GfrfBuilder::temporal_fit(TemporalOp op, const Interval& interval) {
  const auto key = std::make_tuple(static_cast<int>(op), interval.lo, interval.hi);
  auto it = fits_.find(key);
  if (it == fits_.end()) {
    it = fits_.emplace(key, std::make_shared<const PolyDelayOperator>(fit_poly_delay(op, interval, cfg_))).first;
  }
  return it->second;
}

const SeparableFit& GfrfBuilder::separable_fit(Extremum mode) {
  const int key = static_cast<int>(mode);
  auto it = separable_.find(key);
  if (it == separable_.end()) it = separable_.emplace(key, fit_separable_minmax(mode, cfg_.degree, cfg_)).first;
  return it->second;
}

Gfrf GfrfBuilder::finish(const Gfrf& gfrf, CompositionReport& report) const {
  if (prune_threshold_ <= 0.0) return gfrf;
  PruneResult r = prune_gfrf(gfrf, prune_threshold_);
  report.dropped_mass += r.dropped_mass;
  return std::move(r.gfrf);
}

GfrfBuilder::Built GfrfBuilder::build_node(const Formula& f, CompositionReport& report) {
  const std::size_t top = cfg_.max_order;
  switch (f.op()) {
    case Op::True:
      throw Error("TrueNotApproximable", "explicit true has no Volterra approximation");
    case Op::Since:
      throw Error("SinceNotGfrfSupported",
                  "since has no frequency-response approximation; use the sampled construction");
    case Op::Atom: {
      const Kernel& k = kernels_.at(f.atom_name());
      return {atom_gfrf(f.atom_name(), k), OperatorPipeline::atom(f.atom_name(), k)};
    }
    case Op::Not: {
      Built inner = build_node(f.lhs(), report);
      return {finish(compose_gfrf(negation_gfrf(), inner.gfrf, top), report),
              OperatorPipeline::negate(std::move(inner.pipeline))};
    }
    case Op::Once:
    case Op::Hist: {
      const TemporalOp op = f.op() == Op::Once ? TemporalOp::Once : TemporalOp::Hist;
      auto fit = temporal_fit(op, f.interval());
      const std::string label = interval_label(temporal_op_name(op), f.interval());
      if (std::none_of(report.fit_residuals.begin(), report.fit_residuals.end(),
                       [&](const auto& e) { return e.first == label; })) {
        report.fit_residuals.emplace_back(label, fit->report.train_rms);
      }
      Built inner = build_node(f.lhs(), report);
      return {finish(compose_gfrf(poly_delay_to_gfrf(*fit), inner.gfrf, top), report),
              OperatorPipeline::poly_delay(fit, std::move(inner.pipeline))};
    }
    case Op::Or:
    case Op::And: {
      const Extremum mode = f.op() == Op::Or ? Extremum::Max : Extremum::Min;
      const SeparableFit sep = separable_fit(mode);
      const std::string label = mode == Extremum::Max ? "max" : "min";
      if (std::none_of(report.fit_residuals.begin(), report.fit_residuals.end(),
                       [&](const auto& e) { return e.first == label; })) {
        report.fit_residuals.emplace_back(label, sep.report.train_rms);
      }
      Built a = build_node(f.lhs(), report);
      Built b = build_node(f.rhs(), report);
      Gfrf g = sum_gfrf(compose_gfrf(memoryless_poly_gfrf(sep.r), a.gfrf, top),
                        compose_gfrf(memoryless_poly_gfrf(sep.q), b.gfrf, top));
      // merge terms shared by both operands
      g = prune_gfrf(g, 0.0).gfrf;
      return {finish(g, report),
              OperatorPipeline::sum(OperatorPipeline::memoryless(sep.r, std::move(a.pipeline)),
                                    OperatorPipeline::memoryless(sep.q, std::move(b.pipeline)))};
    }
  }
  throw Error("UnknownOperator", "unhandled formula node");
}

FormulaGfrf GfrfBuilder::build(const Formula& formula) {
  for (const auto& name : atom_names(formula)) kernels_.at(name);
  CompositionReport report;
  Built b = build_node(formula, report);
  for (const auto& [n, terms] : b.gfrf.orders()) report.term_counts_per_order[n] = terms.size();
  return FormulaGfrf{std::move(b.gfrf), std::move(b.pipeline), std::move(report)};
}

FormulaGfrf formula_to_gfrf(const Formula& formula, const KernelTable& kernels, const FitConfig& cfg) {
  return GfrfBuilder(kernels, cfg).build(formula);
}

std::vector<SampledSince> since_sampled_gfrf(const Formula& lhs, const Formula& rhs,
                                             const Interval& interval, std::size_t num_samples,
                                             const KernelTable& kernels, const FitConfig& cfg,
                                             bool enabled) {
  if (!enabled) {
    throw Error("SinceSamplingDisabled", "sampled since approximation is opt-in");
  }
  if (num_samples < 1) throw Error("BadSampleCount", "need at least one eta sample");
  check_interval(interval);
  const double dt = kernels.dt();
  GfrfBuilder builder(kernels, cfg);
  std::vector<SampledSince> out;
  for (std::size_t j = 0; j < num_samples; ++j) {
    const double eta = (interval.hi - interval.lo) * static_cast<double>(j) / static_cast<double>(num_samples);
    const double lag = std::round((interval.lo + eta) / dt);
    const double tau = lag * dt;
    Formula f = rhs;
    if (lag >= 1.0) {
      f = Formula::conjunction(Formula::once(Interval{tau, tau}, rhs),
                               Formula::hist(Interval{0.0, tau - dt}, lhs));
    }
    out.push_back(SampledSince{eta, f, builder.build(f)});
  }
  return out;
}

Signal sampled_since_envelope(const std::vector<SampledSince>& samples, const Signal& x) {
  if (samples.empty()) throw Error("BadSampleCount", "no sampled formulas");
  std::vector<Signal> outs;
  double begin = x.t0();
  double end = x.end();
  for (const auto& s : samples) {
    outs.push_back(apply_pipeline(s.result.pipeline, x));
    begin = std::max(begin, outs.back().t0());
    end = std::min(end, outs.back().end());
  }
  const auto first = static_cast<std::size_t>(std::llround((begin - x.t0()) / x.dt()));
  const auto last = static_cast<std::size_t>(std::llround((end - x.t0()) / x.dt()));
  if (last < first) throw Error("SignalTooShortForFormula", "sampled pipelines share no domain");
  std::vector<double> env(last - first + 1, -std::numeric_limits<double>::infinity());
  for (const auto& y : outs) {
    const auto off = static_cast<std::size_t>(std::llround((x.time(first) - y.t0()) / x.dt()));
    for (std::size_t k = 0; k < env.size(); ++k) env[k] = std::max(env[k], y[off + k]);
  }
  return Signal(x.time(first), x.dt(), std::move(env));
}

}  // namespace tlfreq
