#include "tlfreq/formula.hpp"

#include <algorithm>
#include <cmath>

#include "tlfreq/error.hpp"
#include "tlfreq/io.hpp"

namespace tlfreq {

struct Formula::Node {
  Op op = Op::True;
  std::string name;
  Interval interval;
  std::vector<Formula> args;
};

namespace {

const std::string kEmptyName;
const Interval kNoInterval;

}  // namespace

const char* op_name(Op op) {
  switch (op) {
    case Op::True: return "true";
    case Op::Atom: return "atom";
    case Op::Not: return "not";
    case Op::Or: return "or";
    case Op::And: return "and";
    case Op::Once: return "once";
    case Op::Hist: return "hist";
    case Op::Since: return "since";
  }
  return "?";
}

void check_interval(const Interval& interval) {
  if (!std::isfinite(interval.lo) || !std::isfinite(interval.hi)) {
    throw Error("NonFiniteBound", "interval bounds must be finite");
  }
  if (interval.lo < 0.0 || interval.hi < 0.0) {
    throw Error("NegativeBound", "interval [" + format_double(interval.lo) + "," +
                                     format_double(interval.hi) + "] has a negative bound");
  }
  if (interval.lo > interval.hi) {
    throw Error("EmptyInterval", "interval [" + format_double(interval.lo) + "," +
                                     format_double(interval.hi) + "] is empty");
  }
}

Formula Formula::truth() { return Formula(std::make_shared<const Node>(Node{Op::True, {}, {}, {}})); }

Formula Formula::atom(std::string name) {
  if (name.empty()) throw Error("EmptyAtomName", "atom name must be non-empty");
  return Formula(std::make_shared<const Node>(Node{Op::Atom, std::move(name), {}, {}}));
}

Formula Formula::negation(Formula arg) {
  return Formula(std::make_shared<const Node>(Node{Op::Not, {}, {}, {std::move(arg)}}));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Op::Or, {}, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Op::And, {}, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::once(Interval interval, Formula arg) {
  check_interval(interval);
  return Formula(std::make_shared<const Node>(Node{Op::Once, {}, interval, {std::move(arg)}}));
}

Formula Formula::hist(Interval interval, Formula arg) {
  check_interval(interval);
  return Formula(std::make_shared<const Node>(Node{Op::Hist, {}, interval, {std::move(arg)}}));
}

Formula Formula::since(Interval interval, Formula lhs, Formula rhs) {
  check_interval(interval);
  return Formula(
      std::make_shared<const Node>(Node{Op::Since, {}, interval, {std::move(lhs), std::move(rhs)}}));
}

Op Formula::op() const noexcept { return node_->op; }

const std::string& Formula::atom_name() const noexcept {
  return node_->op == Op::Atom ? node_->name : kEmptyName;
}

const Interval& Formula::interval() const noexcept {
  return is_temporal() ? node_->interval : kNoInterval;
}

std::size_t Formula::arity() const noexcept { return node_->args.size(); }

const Formula& Formula::lhs() const {
  if (node_->args.empty()) throw Error("NoOperand", std::string(op_name(op())) + " has no operand");
  return node_->args[0];
}

const Formula& Formula::rhs() const {
  if (node_->args.size() < 2) {
    throw Error("NoOperand", std::string(op_name(op())) + " has no second operand");
  }
  return node_->args[1];
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op() || a.arity() != b.arity()) return false;
  if (a.op() == Op::Atom && a.atom_name() != b.atom_name()) return false;
  if (a.is_temporal() && !(a.interval() == b.interval())) return false;
  for (std::size_t k = 0; k < a.arity(); ++k) {
    if (!(a.node_->args[k] == b.node_->args[k])) return false;
  }
  return true;
}

namespace {

std::string interval_text(const Interval& i) {
  return "[" + format_double(i.lo) + "," + format_double(i.hi) + "]";
}

void collect_atoms(const Formula& f, std::vector<std::string>& out) {
  if (f.op() == Op::Atom) {
    if (std::find(out.begin(), out.end(), f.atom_name()) == out.end()) out.push_back(f.atom_name());
    return;
  }
  if (f.arity() >= 1) collect_atoms(f.lhs(), out);
  if (f.arity() >= 2) collect_atoms(f.rhs(), out);
}

}  // namespace

std::string to_string(const Formula& f) {
  switch (f.op()) {
    case Op::True: return "true";
    case Op::Atom: return f.atom_name();
    case Op::Not: return "(not " + to_string(f.lhs()) + ")";
    case Op::Or: return "(" + to_string(f.lhs()) + " or " + to_string(f.rhs()) + ")";
    case Op::And: return "(" + to_string(f.lhs()) + " and " + to_string(f.rhs()) + ")";
    case Op::Once: return "(once" + interval_text(f.interval()) + " " + to_string(f.lhs()) + ")";
    case Op::Hist: return "(hist" + interval_text(f.interval()) + " " + to_string(f.lhs()) + ")";
    case Op::Since:
      return "(" + to_string(f.lhs()) + " since" + interval_text(f.interval()) + " " +
             to_string(f.rhs()) + ")";
  }
  return {};
}

std::vector<std::string> atom_names(const Formula& formula) {
  std::vector<std::string> out;
  collect_atoms(formula, out);
  return out;
}

}  // namespace tlfreq
