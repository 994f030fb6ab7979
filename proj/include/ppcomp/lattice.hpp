#ifndef PPCOMP_LATTICE_HPP
#define PPCOMP_LATTICE_HPP

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ppcomp/budget.hpp"
#include "ppcomp/eval.hpp"
#include "ppcomp/partition.hpp"

namespace ppcomp {

class FinAlgebra;

/// Finite lattice with explicit meet and join tables. Lattices built from
/// equivalence relations also keep the relations (partitions()).
class FiniteLattice {
 public:
  FiniteLattice() = default;

  /// Throws ValidationError unless the tables are commutative, associative
  /// and absorptive.
  static FiniteLattice from_tables(std::vector<std::string> labels,
                                   std::vector<std::vector<std::size_t>> meet,
                                   std::vector<std::vector<std::size_t>> join);
  /// From a partial order (leq[a][b] iff a <= b). Throws ValidationError if
  /// some pair has no greatest lower or least upper bound.
  static FiniteLattice from_order(std::vector<std::string> labels,
                                  const std::vector<std::vector<bool>>& leq);
  /// Sublattice of Eq(A) on a family closed under meet and
  /// join_via_product. Throws ValidationError if it is not closed.
  static FiniteLattice from_partitions(std::vector<EquivRelation> elements);

  /// Chain 0 < 1 < ... < n-1.
  static FiniteLattice chain(std::size_t n);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(std::size_t a) const { return labels_.at(a); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a][b]; }
  std::size_t join(std::size_t a, std::size_t b) const { return join_[a][b]; }
  bool leq(std::size_t a, std::size_t b) const { return meet_[a][b] == a; }

  const std::vector<EquivRelation>& partitions() const noexcept {
    return partitions_;
  }
  /// Index of a partition element, for lattices built from partitions.
  std::optional<std::size_t> find(const EquivRelation& theta) const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<std::size_t>> meet_;
  std::vector<std::vector<std::size_t>> join_;
  std::vector<EquivRelation> partitions_;
};

/// Readable block notation, e.g. `{{0,1},{2}}` with the given element names.
std::string format_partition(const EquivRelation& theta,
                             const std::vector<std::string>& names);

/// Con(A): every partition of the universe compatible with the basic
/// operations, in restricted-growth-string order. Throws BudgetExceeded when
/// |A| exceeds budget.max_congruence_carrier.
FiniteLattice congruence_lattice(const FinAlgebra& algebra,
                                 const Budget& budget = Budget{});

/// First triple (x, y, z) in element order with x <= y and
/// x v (y ^ z) != y ^ (x v z); empty when the lattice is modular.
std::optional<std::array<std::size_t, 3>> check_modular_law(
    const FiniteLattice& lattice);

/// Closure of the generators under meet and join_via_product. Does not add
/// 0 or 1 unless they are generated. Element order: generators first, then
/// in order of discovery.
FiniteLattice sublattice_generated(std::span<const EquivRelation> generators);

/// Lattice term over variables with finitary meets and joins.
class LatticeTerm {
 public:
  enum class Kind { variable, meet, join };

  static LatticeTerm variable(std::string name);
  /// Throws ValidationError on an empty argument list.
  static LatticeTerm meet(std::vector<LatticeTerm> args);
  static LatticeTerm join(std::vector<LatticeTerm> args);

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<LatticeTerm>& args() const noexcept { return args_; }

  /// Height of the syntax tree; a variable has depth 0.
  std::size_t depth() const;
  /// Number of variable occurrences.
  std::size_t leaves() const;
  /// Distinct variables in order of first occurrence.
  std::vector<std::string> variables() const;

  bool operator==(const LatticeTerm&) const = default;

 private:
  Kind kind_ = Kind::variable;
  std::string name_;
  std::vector<LatticeTerm> args_;
};

/// Grammar `t := v | (t ^ t ...) | (t v t ...)`; one operator per
/// parenthesised group.
LatticeTerm parse_lattice_term(std::string_view text);
std::string print_lattice_term(const LatticeTerm& term);

/// Sorted union of the variables of both terms.
std::vector<std::string> shared_variables(const LatticeTerm& t,
                                          const LatticeTerm& t_prime);

/// Bottom-up evaluation; `values` is aligned with `variables`. Throws
/// ValidationError on a variable missing from the list.
std::size_t eval_lattice_term(const LatticeTerm& term,
                              const std::vector<std::string>& variables,
                              std::span<const std::size_t> values,
                              const FiniteLattice& lattice);
std::size_t eval_lattice_term(const LatticeTerm& term,
                              const std::map<std::string, std::size_t>& g,
                              const FiniteLattice& lattice);

/// Does t <= t' hold under every assignment, in every lattice? When
/// `restrict_to` has an entry for a lattice, assignments range over that
/// subset only. The no-witness names the lattice (witness->structure) and
/// the least failing assignment over shared_variables(t, t').
/// Throws BudgetExceeded for lattices over 12 elements with more than 4
/// variables, or when the sweep exceeds budget.max_enumeration.
Verdict decide_term_ineq(
    const LatticeTerm& t, const LatticeTerm& t_prime,
    std::span<const FiniteLattice> lattices,
    const std::vector<std::optional<std::vector<std::size_t>>>& restrict_to = {},
    const Budget& budget = Budget{});

}  // namespace ppcomp

#endif  // PPCOMP_LATTICE_HPP
