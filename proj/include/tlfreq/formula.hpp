#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tlfreq/window.hpp"

namespace tlfreq {

enum class Op { True, Atom, Not, Or, And, Once, Hist, Since };

const char* op_name(Op op);

/// Immutable BB-STL syntax tree. Nodes are shared, so copies are cheap.
///
/// Since(I, lhs, rhs) reads "lhs since_I rhs": rhs held at some t' in t - I
/// and lhs has held on (t', t] ever since.
class Formula {
 public:
  static Formula truth();
  static Formula atom(std::string name);
  static Formula negation(Formula arg);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula once(Interval interval, Formula arg);
  static Formula hist(Interval interval, Formula arg);
  static Formula since(Interval interval, Formula lhs, Formula rhs);

  Op op() const noexcept;
  const std::string& atom_name() const noexcept;
  const Interval& interval() const noexcept;
  std::size_t arity() const noexcept;
  /// Single operand of Not/Once/Hist, left operand of Or/And/Since.
  const Formula& lhs() const;
  const Formula& rhs() const;

  bool is_temporal() const noexcept { return op() == Op::Once || op() == Op::Hist || op() == Op::Since; }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Throws EmptyInterval / NegativeBound for malformed intervals.
void check_interval(const Interval& interval);

/// Fully parenthesised text that parses back to the same tree.
std::string to_string(const Formula& formula);

/// Distinct atom names in first-occurrence order.
std::vector<std::string> atom_names(const Formula& formula);

}  // namespace tlfreq
