#ifndef PPCOMP_SRC_CSP_HPP
#define PPCOMP_SRC_CSP_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ppcomp/structure.hpp"

namespace ppcomp::detail {

/// One conjunct of a compiled formula: `relation(scope...)`, or an equality
/// of scope[0] and scope[1] when relation is -1.
struct Constraint {
  std::vector<int> scope;
  int relation = -1;
};

/// A pp-formula compiled to a constraint network. Variables 0..num_free-1 are
/// the free variables in order; the rest are existentially quantified.
///
/// Search is chronological backtracking with forward checking: whenever a
/// constraint has a single unassigned variable left, that variable's domain
/// is filtered. Bound variables are picked smallest-domain first; free
/// variables are enumerated in order, so solutions come out in
/// lexicographic order.
class Csp {
 public:
  Csp(std::vector<std::size_t> domains, std::size_t num_free,
      std::vector<Relation> relations, std::vector<Constraint> constraints);

  std::size_t num_free() const noexcept { return num_free_; }
  std::size_t num_variables() const noexcept { return domains_.size(); }

  /// True iff some extension of the free values satisfies every constraint.
  bool exists(std::span<const ElemId> free_values) const;

  /// All satisfying free assignments in lexicographic order. Throws
  /// BudgetExceeded once more than node_budget search nodes were visited.
  std::vector<Tuple> solutions(std::uint64_t node_budget) const;

 private:
  friend class Search;

  std::vector<std::size_t> domains_;
  std::size_t num_free_;
  std::vector<Relation> relations_;
  std::vector<Constraint> constraints_;
  std::vector<std::vector<int>> distinct_scope_;
  std::vector<std::vector<int>> by_variable_;
};

}  // namespace ppcomp::detail

#endif  // PPCOMP_SRC_CSP_HPP
