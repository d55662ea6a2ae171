#include "tlfreq/domain.hpp"

#include <algorithm>

#include "tlfreq/error.hpp"

namespace tlfreq {

std::size_t temporal_depth(const Formula& f, double dt) {
  switch (f.op()) {
    case Op::True:
    case Op::Atom: return 0;
    case Op::Not: return temporal_depth(f.lhs(), dt);
    case Op::Or:
    case Op::And: return std::max(temporal_depth(f.lhs(), dt), temporal_depth(f.rhs(), dt));
    case Op::Once:
    case Op::Hist: return to_lags(f.interval(), dt).max + temporal_depth(f.lhs(), dt);
    case Op::Since:
      return to_lags(f.interval(), dt).max +
             std::max(temporal_depth(f.lhs(), dt), temporal_depth(f.rhs(), dt));
  }
  return 0;
}

ValidDomain valid_domain(const Formula& formula, const KernelTable& kernels, const Grid& grid) {
  std::size_t left = 0;
  std::size_t right = 0;
  for (const auto& name : atom_names(formula)) {
    const Kernel& k = kernels.at(name);
    left = std::max(left, k.left_reach());
    right = std::max(right, k.right_reach());
  }
  const std::size_t depth = temporal_depth(formula, grid.dt);
  const std::size_t first = depth + left;
  if (grid.size < 2 || first + right + 1 >= grid.size) {
    throw Error("SignalTooShortForFormula",
                "signal of " + std::to_string(grid.size) + " samples is too short for " + to_string(formula) +
                    ": temporal depth " + std::to_string(depth) + " samples (" +
                    std::to_string(static_cast<double>(depth) * grid.dt) + " s) plus kernel reach " +
                    std::to_string(left) + "+" + std::to_string(right) + " needs at least " +
                    std::to_string(first + right + 2) + " samples");
  }
  ValidDomain d;
  d.first = first;
  d.last = grid.size - 1 - right;
  d.begin = grid.time(d.first);
  d.end = grid.time(d.last);
  return d;
}

}  // namespace tlfreq
