#ifndef PPCOMP_FORMULA_HPP
#define PPCOMP_FORMULA_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ppcomp/structure.hpp"

namespace ppcomp {

/// `x = y` when symbol is empty, otherwise `symbol(args...)`.
struct Atom {
  std::string symbol;
  std::vector<std::string> args;

  static Atom equality(std::string lhs, std::string rhs);
  static Atom relation(std::string symbol, std::vector<std::string> args);

  bool is_equality() const noexcept { return symbol.empty(); }

  auto operator<=>(const Atom&) const = default;
};

/// Primitive positive formula `name(free) := exists bound . atom & ...`.
///
/// Variables are ordered free first, then bound, so a formula with m free
/// and n - m bound variables reads x_1..x_m, x_{m+1}..x_n. An empty atom list
/// is the formula `true`.
struct PPFormula {
  std::string name = "phi";
  std::vector<std::string> free_vars;
  std::vector<std::string> bound_vars;
  std::vector<Atom> atoms;

  /// Free variables followed by bound variables.
  std::vector<std::string> variables() const;
  std::size_t num_variables() const noexcept {
    return free_vars.size() + bound_vars.size();
  }
  /// Symbol count: one per atom plus one per argument, plus one per
  /// quantified variable.
  std::size_t size() const noexcept;

  bool operator==(const PPFormula&) const = default;
};

enum class Sort : std::uint8_t { first = 1, second = 2 };

/// Two-sorted pp-formula over the single ternary symbol R, whose atoms have
/// sort pattern (1, 2, 2); equalities relate variables of one sort.
/// `sorts` is aligned with formula.variables().
struct SortedPPFormula {
  PPFormula formula;
  std::vector<Sort> sorts;

  Sort sort_of(std::string_view variable) const;
  std::vector<Sort> free_sorts() const;

  bool operator==(const SortedPPFormula&) const = default;
};

/// The ternary symbol of two-sorted pentagon structures.
inline constexpr std::string_view kSortedSymbol = "R";

/// Reserved prefix of generated variable names. Free variables written by a
/// user may not start with it; bound variables may, since they are renamed
/// apart whenever formulas are combined.
inline constexpr std::string_view kReservedPrefix = "_";

/// Throws ValidationError unless the variable lists are duplicate-free and
/// disjoint and every atom argument is declared.
void check_variables(const PPFormula& formula);
/// check_variables plus: every symbol is in the signature with matching
/// arity, equalities have two arguments.
void validate(const PPFormula& formula, const Signature& signature);
/// Sort table aligned, equalities same-sorted, R-atoms of pattern (1, 2, 2).
void validate(const SortedPPFormula& formula);

/// Text form: `[formula] NAME(v,...) := [exists w,... .] ATOM & ATOM ...`
/// with atoms `SYM(v,...)`, `v = w` or `true`.
/// Throws ParseError or ValidationError (unknown symbol, arity mismatch,
/// variable both free and bound, reserved free variable name).
PPFormula parse_pp_formula(std::string_view text, const Signature& signature);
/// Parses without checking symbols against a signature.
PPFormula parse_pp_formula(std::string_view text);
std::string print_formula(const PPFormula& formula);

/// Same grammar with every declared variable annotated `v@1` or `v@2`.
SortedPPFormula parse_sorted_formula(std::string_view text);
std::string print_sorted_formula(const SortedPPFormula& formula);

/// phi & psi over the same free variables. The bound variables of psi are
/// renamed to fresh `_q<n>` names that clash with nothing in either input.
/// Throws ValidationError if the free-variable lists differ.
PPFormula conjoin(const PPFormula& phi, const PPFormula& psi);

/// Each variable v becomes v^1..v^k (named `v_1`..`v_k`); equalities become
/// k coordinatewise equalities and every atom argument is expanded in place.
/// Matches power_flatten on the structure side.
PPFormula power_flatten_formula(const PPFormula& formula, std::size_t k);

/// Returns a name with the given stem not present in `taken`.
std::string fresh_name(std::string_view stem,
                       const std::vector<std::string>& taken);

}  // namespace ppcomp

#endif  // PPCOMP_FORMULA_HPP
