#include "tlfreq/pipeline.hpp"

#include <algorithm>
#include <optional>

#include "tlfreq/error.hpp"
#include "tlfreq/kernels.hpp"

namespace tlfreq {

struct OperatorPipeline::Node {
  Kind kind = Kind::Atom;
  std::vector<OperatorPipeline> children;
  std::string name;
  std::optional<Kernel> kernel;
  std::shared_ptr<const PolyDelayOperator> op;
  MemorylessPoly poly;
};

OperatorPipeline OperatorPipeline::atom(std::string name, Kernel kernel) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->name = std::move(name);
  n->kernel = std::move(kernel);
  return OperatorPipeline(std::move(n));
}

OperatorPipeline OperatorPipeline::poly_delay(std::shared_ptr<const PolyDelayOperator> op,
                                              OperatorPipeline child) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::PolyDelay;
  n->op = std::move(op);
  n->children.push_back(std::move(child));
  return OperatorPipeline(std::move(n));
}

OperatorPipeline OperatorPipeline::memoryless(MemorylessPoly poly, OperatorPipeline child) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Memoryless;
  n->poly = std::move(poly);
  n->children.push_back(std::move(child));
  return OperatorPipeline(std::move(n));
}

OperatorPipeline OperatorPipeline::sum(OperatorPipeline lhs, OperatorPipeline rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->children.push_back(std::move(lhs));
  n->children.push_back(std::move(rhs));
  return OperatorPipeline(std::move(n));
}

OperatorPipeline OperatorPipeline::negate(OperatorPipeline child) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Negate;
  n->children.push_back(std::move(child));
  return OperatorPipeline(std::move(n));
}

OperatorPipeline::Kind OperatorPipeline::kind() const noexcept { return node_->kind; }
const std::vector<OperatorPipeline>& OperatorPipeline::children() const noexcept { return node_->children; }
const std::string& OperatorPipeline::atom_name() const noexcept { return node_->name; }

const Kernel& OperatorPipeline::kernel() const {
  if (!node_->kernel) throw Error("WrongPipelineKind", "pipeline node is not an atom");
  return *node_->kernel;
}

const PolyDelayOperator& OperatorPipeline::poly_delay_op() const {
  if (!node_->op) throw Error("WrongPipelineKind", "pipeline node is not a delay polynomial");
  return *node_->op;
}

const MemorylessPoly& OperatorPipeline::poly() const { return node_->poly; }

std::size_t OperatorPipeline::left_reach(double dt) const {
  switch (kind()) {
    case Kind::Atom: return kernel().left_reach();
    case Kind::PolyDelay: return poly_delay_op().max_lag(dt) + children()[0].left_reach(dt);
    case Kind::Memoryless:
    case Kind::Negate: return children()[0].left_reach(dt);
    case Kind::Sum: return std::max(children()[0].left_reach(dt), children()[1].left_reach(dt));
  }
  return 0;
}

std::size_t OperatorPipeline::right_reach(double dt) const {
  switch (kind()) {
    case Kind::Atom: return kernel().right_reach();
    case Kind::PolyDelay:
    case Kind::Memoryless:
    case Kind::Negate: return children()[0].right_reach(dt);
    case Kind::Sum: return std::max(children()[0].right_reach(dt), children()[1].right_reach(dt));
  }
  return 0;
}

namespace {

std::vector<double> eval(const OperatorPipeline& p, const Signal& x, std::size_t lo, std::size_t hi) {
  const std::size_t n = hi - lo + 1;
  using Kind = OperatorPipeline::Kind;
  switch (p.kind()) {
    case Kind::Atom: {
      std::vector<double> out(n);
      const Kernel& k = p.kernel();
      kernels::parallel::correlate(x.samples(), k.taps(), k.first_offset(), x.dt(), lo, out);
      return out;
    }
    case Kind::PolyDelay: {
      const PolyDelayOperator& op = p.poly_delay_op();
      const std::size_t lag = op.max_lag(x.dt());
      const auto u = eval(p.children()[0], x, lo - lag, hi);
      std::vector<std::size_t> lags;
      for (double t : op.delays) lags.push_back(delay_lag(t, x.dt()));
      std::vector<double> out(n);
      const long count = static_cast<long>(n);
#pragma omp parallel
      {
        std::vector<double> delayed(lags.size());
#pragma omp for schedule(static)
        for (long k = 0; k < count; ++k) {
          const std::size_t i = static_cast<std::size_t>(k) + lag;
          for (std::size_t j = 0; j < lags.size(); ++j) delayed[j] = u[i - lags[j]];
          out[static_cast<std::size_t>(k)] = op.evaluate(delayed);
        }
      }
      return out;
    }
    case Kind::Memoryless: {
      auto v = eval(p.children()[0], x, lo, hi);
      for (auto& e : v) e = p.poly()(e);
      return v;
    }
    case Kind::Sum: {
      auto a = eval(p.children()[0], x, lo, hi);
      const auto b = eval(p.children()[1], x, lo, hi);
      for (std::size_t k = 0; k < n; ++k) a[k] += b[k];
      return a;
    }
    case Kind::Negate: {
      auto v = eval(p.children()[0], x, lo, hi);
      for (auto& e : v) e = -e;
      return v;
    }
  }
  return {};
}

}  // namespace

ValidDomain pipeline_domain(const OperatorPipeline& pipeline, const Grid& grid) {
  const std::size_t left = pipeline.left_reach(grid.dt);
  const std::size_t right = pipeline.right_reach(grid.dt);
  if (grid.size < 2 || left + right + 1 >= grid.size) {
    throw Error("SignalTooShortForFormula", "signal of " + std::to_string(grid.size) +
                                                " samples is too short for the operator pipeline");
  }
  ValidDomain d;
  d.first = left;
  d.last = grid.size - 1 - right;
  d.begin = grid.time(d.first);
  d.end = grid.time(d.last);
  return d;
}

Signal apply_pipeline(const OperatorPipeline& pipeline, const Signal& x) {
  const ValidDomain dom = pipeline_domain(pipeline, Grid{x.t0(), x.dt(), x.size()});
  return Signal(dom.begin, x.dt(), eval(pipeline, x, dom.first, dom.last));
}

}  // namespace tlfreq
