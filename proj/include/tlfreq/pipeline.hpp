#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tlfreq/domain.hpp"
#include "tlfreq/kernel.hpp"
#include "tlfreq/poly_delay.hpp"
#include "tlfreq/separable.hpp"
#include "tlfreq/signal.hpp"

namespace tlfreq {

/// Time-domain twin of a composed Gfrf: the same operators applied to
/// samples, used to check fits and frequency-domain results.
class OperatorPipeline {
 public:
  enum class Kind { Atom, PolyDelay, Memoryless, Sum, Negate };

  static OperatorPipeline atom(std::string name, Kernel kernel);
  static OperatorPipeline poly_delay(std::shared_ptr<const PolyDelayOperator> op, OperatorPipeline child);
  static OperatorPipeline memoryless(MemorylessPoly poly, OperatorPipeline child);
  static OperatorPipeline sum(OperatorPipeline lhs, OperatorPipeline rhs);
  static OperatorPipeline negate(OperatorPipeline child);

  Kind kind() const noexcept;
  const std::vector<OperatorPipeline>& children() const noexcept;
  const std::string& atom_name() const noexcept;
  const Kernel& kernel() const;
  const PolyDelayOperator& poly_delay_op() const;
  const MemorylessPoly& poly() const;

  /// Samples of history needed before the first output (delay lags plus
  /// kernel reach), and samples needed after the last output.
  std::size_t left_reach(double dt) const;
  std::size_t right_reach(double dt) const;

 private:
  struct Node;
  explicit OperatorPipeline(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

ValidDomain pipeline_domain(const OperatorPipeline& pipeline, const Grid& grid);

/// Output on pipeline_domain; throws SignalTooShortForFormula when empty.
Signal apply_pipeline(const OperatorPipeline& pipeline, const Signal& x);

}  // namespace tlfreq
