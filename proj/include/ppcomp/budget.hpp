#ifndef PPCOMP_BUDGET_HPP
#define PPCOMP_BUDGET_HPP

#include <cstddef>
#include <cstdint>
#include <string>

namespace ppcomp {

/// Guards for the brute-force procedures. Every decider in this library is
/// exponential in the worst case; these limits turn runaway enumerations
/// into BudgetExceeded instead of hangs.
struct Budget {
  /// Maximum number of variables (free + bound) in a formula handed to the
  /// evaluator.
  std::size_t max_variables = 16;
  /// Maximum number of candidate objects an enumeration may visit
  /// (operation tables, assignments of a sweep, partitions, ...).
  std::uint64_t max_enumeration = 50'000'000;
  /// Maximum number of propositional variables for the DNF truth-table sweep.
  std::size_t max_dnf_variables = 20;
  /// Maximum carrier size for congruence-lattice enumeration.
  std::size_t max_congruence_carrier = 8;

  /// Defaults, overridden by the PPCOMP_BUDGET environment variable when set.
  /// Accepted forms: a bare integer (max_enumeration) or a comma-separated
  /// list of key=value pairs with keys vars, enum, dnf, carrier.
  static Budget from_env();

  /// Applies a PPCOMP_BUDGET-style specification on top of *this.
  /// Throws ValidationError on malformed text.
  Budget with_overrides(const std::string& spec) const;
};

}  // namespace ppcomp

#endif  // PPCOMP_BUDGET_HPP
