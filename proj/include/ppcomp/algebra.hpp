#ifndef PPCOMP_ALGEBRA_HPP
#define PPCOMP_ALGEBRA_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ppcomp/budget.hpp"
#include "ppcomp/structure.hpp"

namespace ppcomp {

/// Total operation {0..d-1}^arity -> {0..d-1}. The table is dense and
/// indexed by argument tuples in lexicographic order, first argument most
/// significant.
class OperationTable {
 public:
  OperationTable() = default;
  /// Throws ValidationError unless values has d^arity entries in range.
  OperationTable(std::size_t arity, std::size_t domain,
                 std::vector<ElemId> values);

  static OperationTable projection(std::size_t arity, std::size_t domain,
                                   std::size_t index);
  static OperationTable constant(std::size_t arity, std::size_t domain,
                                 ElemId value);

  std::size_t arity() const noexcept { return arity_; }
  std::size_t domain() const noexcept { return domain_; }
  const std::vector<ElemId>& values() const noexcept { return values_; }

  ElemId operator()(std::span<const ElemId> args) const;
  ElemId operator()(std::initializer_list<ElemId> args) const {
    return (*this)(std::span<const ElemId>(args.begin(), args.size()));
  }

  auto operator<=>(const OperationTable&) const = default;

 private:
  std::size_t arity_ = 0;
  std::size_t domain_ = 0;
  std::vector<ElemId> values_;
};

struct NamedOperation {
  std::string symbol;
  OperationTable table;

  bool operator==(const NamedOperation&) const = default;
};

/// Finite algebra: non-empty universe of element names plus named basic
/// operations over it.
class FinAlgebra {
 public:
  FinAlgebra() = default;
  /// Throws ValidationError if the universe is empty or has duplicates.
  FinAlgebra(std::string name, std::vector<std::string> universe);

  /// Throws ValidationError on a duplicate symbol or a table over a
  /// different universe size.
  void add_operation(std::string symbol, OperationTable table);

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& universe() const noexcept {
    return universe_;
  }
  std::size_t size() const noexcept { return universe_.size(); }
  std::optional<ElemId> find_element(std::string_view name) const;
  const std::vector<NamedOperation>& operations() const noexcept {
    return operations_;
  }

  bool operator==(const FinAlgebra&) const = default;

 private:
  std::string name_;
  std::vector<std::string> universe_;
  std::vector<NamedOperation> operations_;
};

/// Text form: `algebra NAME { universe = {e,...} op SYM/ARITY =
/// { (e,...):e, ... } ... }`. Every table must be total.
FinAlgebra parse_algebra(std::string_view text);
std::string print_algebra(const FinAlgebra& algebra);

/// The algebra (A, ops) with A the structure's universe.
FinAlgebra algebra_from_operations(const RelStructure& structure,
                                   const std::vector<OperationTable>& ops,
                                   std::string name = "Pol");

/// True iff for every choice of arity(f) tuples of R the coordinatewise
/// image is in R. Throws ValidationError on universe mismatch.
bool preserves(const OperationTable& f, const Relation& relation);

/// All arity-ary operations preserving every relation of the structure, in
/// lexicographic table order. Throws BudgetExceeded when |B|^(|B|^arity)
/// exceeds budget.max_enumeration.
std::vector<OperationTable> polymorphisms(const RelStructure& structure,
                                          std::size_t arity,
                                          const Budget& budget = Budget{});

/// Least relation containing the seed (plus every constant tuple when
/// include_diagonal) closed under coordinatewise application of every basic
/// operation: the subuniverse of A^n the seed generates.
Relation subpower_closure(const FinAlgebra& algebra, const Relation& seed,
                          bool include_diagonal);

/// Result of the bounded pp-definability semi-decision.
struct DefinabilityResult {
  /// A polymorphism of the structure not preserving the relation, proving it
  /// is not pp-definable. Empty means no witness up to the arity bound,
  /// which does not prove definability.
  std::optional<OperationTable> witness;

  bool not_definable() const noexcept { return witness.has_value(); }
};

/// Searches polymorphisms of arity 1, 2, ..., arity_bound in that order
/// and returns the first (least arity, then least table) that violates the
/// relation.
DefinabilityResult pp_definability_check(const RelStructure& structure,
                                         const Relation& relation,
                                         std::size_t arity_bound,
                                         const Budget& budget = Budget{});

/// Every basic operation satisfies f(a, ..., a) = a; this carries over to
/// all term operations.
bool is_idempotent(const FinAlgebra& algebra);

}  // namespace ppcomp

#endif  // PPCOMP_ALGEBRA_HPP
