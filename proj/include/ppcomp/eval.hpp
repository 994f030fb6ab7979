#ifndef PPCOMP_EVAL_HPP
#define PPCOMP_EVAL_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ppcomp/budget.hpp"
#include "ppcomp/formula.hpp"
#include "ppcomp/pentagon.hpp"
#include "ppcomp/structure.hpp"

namespace ppcomp {

namespace detail {
class Csp;
}

/// Values of a formula's free variables, aligned with free_vars.
using Assignment = std::vector<ElemId>;

/// Counterexample of a no-verdict. `structure` indexes the structure or
/// lattice it was found in when a decider ranges over several.
struct Witness {
  std::size_t structure = 0;
  Assignment values;

  bool operator==(const Witness&) const = default;
};

/// Answer of a decision procedure. A no carries its least counterexample.
struct Verdict {
  bool yes = true;
  std::optional<Witness> witness;

  explicit operator bool() const noexcept { return yes; }

  static Verdict holds() { return {}; }
  static Verdict fails(Witness w) { return {false, std::move(w)}; }
};

/// "x=0, y=1" for an assignment over the given universe.
std::string format_assignment(const std::vector<std::string>& variables,
                              std::span<const ElemId> values,
                              const std::vector<std::string>& universe);

/// A formula compiled against a structure, reusable across many queries.
/// Evaluation is exhaustive backtracking search over the bound variables
/// with forward checking, so the worst case is exponential in the number of
/// bound variables.
class Evaluator {
 public:
  /// Throws ValidationError if the formula does not fit the structure's
  /// signature and BudgetExceeded if it has more than budget.max_variables
  /// variables.
  Evaluator(const RelStructure& structure, const PPFormula& formula,
            const Budget& budget = Budget{});

  const PPFormula& formula() const noexcept { return formula_; }

  /// Throws ValidationError unless one in-range value per free variable is
  /// given.
  bool satisfies(std::span<const ElemId> free_values) const;
  /// All satisfying free assignments, lexicographic in (variable order,
  /// universe order).
  std::vector<Assignment> solutions() const;

 private:
  PPFormula formula_;
  std::uint64_t node_budget_;
  std::shared_ptr<const detail::Csp> csp_;
};

bool satisfies(const RelStructure& structure, std::span<const ElemId> f,
               const PPFormula& formula, const Budget& budget = Budget{});

std::vector<Assignment> solution_set(const RelStructure& structure,
                                     const PPFormula& formula,
                                     const Budget& budget = Budget{});

/// The solution set as a relation whose columns follow free_vars.
Relation solution_relation(const RelStructure& structure,
                           const PPFormula& formula,
                           const Budget& budget = Budget{});

/// Same solution sets? The witness is the least assignment in the symmetric
/// difference. Throws ValidationError if the free variables differ.
Verdict decide_ppeq(const RelStructure& structure, const PPFormula& phi,
                    const PPFormula& psi, const Budget& budget = Budget{});

/// Is every solution of phi a solution of psi? The witness is the least
/// assignment satisfying phi but not psi.
Verdict decide_ppcon(const RelStructure& structure, const PPFormula& phi,
                     const PPFormula& psi, const Budget& budget = Budget{});

/// Containment as equivalence: (phi, phi & psi).
std::pair<PPFormula, PPFormula> reduce_con_to_eq(const PPFormula& phi,
                                                 const PPFormula& psi);

/// Two-sorted counterpart of Evaluator: sort-1 variables range over B,
/// sort-2 variables over C.
class SortedEvaluator {
 public:
  SortedEvaluator(const Pentagon2Sorted& structure,
                  const SortedPPFormula& formula,
                  const Budget& budget = Budget{});

  const SortedPPFormula& formula() const noexcept { return formula_; }
  bool satisfies(std::span<const ElemId> free_values) const;
  std::vector<Assignment> solutions() const;

 private:
  SortedPPFormula formula_;
  std::uint64_t node_budget_;
  std::shared_ptr<const detail::Csp> csp_;
};

/// Throws ValidationError if a value lies outside its variable's sort.
bool satisfies_sorted(const Pentagon2Sorted& structure,
                      std::span<const ElemId> f,
                      const SortedPPFormula& formula,
                      const Budget& budget = Budget{});

/// phi |= psi over every listed structure? The witness records the index of
/// the first failing structure and the least failing assignment there.
/// Throws ValidationError if the sorted free variables differ.
Verdict decide_entailment_sorted(const SortedPPFormula& phi,
                                 const SortedPPFormula& psi,
                                 std::span<const Pentagon2Sorted> structures,
                                 const Budget& budget = Budget{});

}  // namespace ppcomp

#endif  // PPCOMP_EVAL_HPP
