#ifndef PPCOMP_UNARY_REDUCTION_HPP
#define PPCOMP_UNARY_REDUCTION_HPP

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ppcomp/algebra.hpp"
#include "ppcomp/budget.hpp"
#include "ppcomp/formula.hpp"
#include "ppcomp/structure.hpp"

namespace ppcomp {

/// Trace data for the unary-type reduction: an algebra A, a two-element
/// trace N = {trace[0], trace[1]} inside it, and a boolean structure C on
/// {0, 1} whose relations all contain both constant tuples. Element i of C's
/// universe stands for trace[i].
///
/// Derived: D_i = A(C_i) (subpower closure with the diagonal) for each
/// relation of C, E_n = A(N^n) for n = 1..k with k = |A|, and the target
/// structure on A with relations D1..Dl (C's order) and E1..Ek.
struct UnaryTypePackage {
  std::string name;
  FinAlgebra algebra;
  std::array<ElemId, 2> trace{0, 1};
  RelStructure boolean;
  std::vector<Relation> d;
  std::vector<Relation> e;
  RelStructure target;

  std::size_t k() const noexcept { return algebra.size(); }
  /// Target symbol replacing the i-th relation of C.
  static std::string d_symbol(std::size_t i) { return "D" + std::to_string(i + 1); }
  static std::string e_symbol(std::size_t n) { return "E" + std::to_string(n); }
};

/// Computes every derived relation and checks the package: trace elements
/// distinct, C two-element with constant tuples in every relation,
/// D_i restricted to N^r equals C_i, E_n restricted to N^n equals N^n.
/// Throws ValidationError listing every failed check, BudgetExceeded when
/// |A|^|A| exceeds budget.max_enumeration.
UnaryTypePackage build_package(std::string name, const FinAlgebra& algebra,
                               std::array<ElemId, 2> trace,
                               const RelStructure& boolean,
                               const Budget& budget = Budget{});

/// E_n(x1..xn) for n <= k, otherwise the conjunction of E_k over every
/// increasing k-subsequence of x1..xn, in lexicographic order.
PPFormula en_pp_definition(std::size_t n, std::size_t k);

/// phi over C -> phi' over the target: each C_i atom becomes D_i and the
/// E-conjunct over all variables (free, then bound) is appended.
/// Throws ValidationError if phi does not fit C's signature.
PPFormula lemma1_transform(const PPFormula& phi, const UnaryTypePackage& pkg);

struct Prop10Report {
  /// Boolean assignments checked for C, g |= phi  iff  A, g |= phi'.
  std::size_t boolean_checked = 0;
  /// Solutions of phi' over A compared with A(boolean solutions).
  std::size_t closure_size = 0;
  std::vector<std::string> counterexamples;

  bool ok() const noexcept { return counterexamples.empty(); }
};

/// Checks both equivalences by enumeration. Counterexamples are reported
/// verbatim. Throws BudgetExceeded when a sweep exceeds the budget.
Prop10Report verify_prop10(const UnaryTypePackage& pkg, const PPFormula& phi,
                           const Budget& budget = Budget{});

/// (lemma1_transform(phi), lemma1_transform(psi)); PPCON is preserved.
std::pair<PPFormula, PPFormula> theorem5_reduce(const PPFormula& phi,
                                                const PPFormula& psi,
                                                const UnaryTypePackage& pkg);

/// Reads `package NAME { algebra = "A.alg" trace = {a, b} boolean =
/// "C.struct" }`; file paths are relative to the package file.
UnaryTypePackage load_unary_package(const std::filesystem::path& path,
                                    const Budget& budget = Budget{});
UnaryTypePackage parse_unary_package(std::string_view text,
                                     const std::filesystem::path& base_dir,
                                     const Budget& budget = Budget{});

}  // namespace ppcomp

#endif  // PPCOMP_UNARY_REDUCTION_HPP
