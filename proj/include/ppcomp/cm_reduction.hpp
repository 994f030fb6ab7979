#ifndef PPCOMP_CM_REDUCTION_HPP
#define PPCOMP_CM_REDUCTION_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ppcomp/algebra.hpp"
#include "ppcomp/budget.hpp"
#include "ppcomp/eval.hpp"
#include "ppcomp/formula.hpp"
#include "ppcomp/lattice.hpp"
#include "ppcomp/partition.hpp"
#include "ppcomp/pentagon.hpp"

namespace ppcomp {

struct Literal {
  std::string variable;
  bool positive = true;

  bool operator==(const Literal&) const = default;
};

/// Disjunction of conjunctions of literals.
struct DNFFormula {
  std::vector<std::vector<Literal>> disjuncts;

  /// Distinct variables in order of first appearance.
  std::vector<std::string> variables() const;

  bool operator==(const DNFFormula&) const = default;
};

/// Grammar: disjuncts separated by `|`, each a literal or a parenthesised
/// `&`-conjunction of literals; a literal is `v` or `!v`. Throws ParseError,
/// or ValidationError when no variable occurs.
DNFFormula parse_dnf(std::string_view text);
std::string print_dnf(const DNFFormula& phi);

/// Truth-table sweep. The witness holds 0/1 values for variables() and is
/// the least falsifying assignment (first variable most significant).
/// Throws BudgetExceeded beyond budget.max_dnf_variables variables.
Verdict decide_dnf_tautology(const DNFFormula& phi,
                             const Budget& budget = Budget{});

/// m = max |C| over the decompositions. Throws ValidationError on an empty
/// list or an invalid pentagon.
std::size_t compute_m(std::span<const Pentagon> pentagons);

/// phi_t(x1..xn, y1, y2): `variables` lists the sort-1 free variables
/// (every variable of t must occur there; extra ones are allowed so that
/// two terms can share a free-variable list). y1, y2 are named to avoid
/// those names and fresh chain variables are `_z<n>`, all of sort 2.
/// A join of k arguments expands into an m-level chain with m*k - 1 fresh
/// variables.
SortedPPFormula term_to_sorted_formula(const LatticeTerm& t, std::size_t m,
                                       const std::vector<std::string>& variables);
/// Uses compute_m(pentagons) and the sorted variables of t.
SortedPPFormula term_to_sorted_formula(const LatticeTerm& t,
                                       std::span<const Pentagon> pentagons);

/// Size recurrence u(0, n) = L*n, u(d+1, n) = B*n*u(d, n) + E, saturating
/// at UINT64_MAX.
std::uint64_t size_bound_u(std::size_t d, std::size_t n, std::uint64_t l_const,
                           std::uint64_t b_const, std::uint64_t e_const);

/// Constants under which |phi_t| <= u(depth(t), leaves(t)) holds for the
/// translation above with chain length m: L = 4, B = 2 * max(1, m), E = 0.
struct SizeConstants {
  std::uint64_t l, b, e;
};
SizeConstants translation_size_constants(std::size_t m);

struct PropertyStarReport {
  std::size_t checked = 0;
  std::vector<std::string> counterexamples;

  bool ok() const noexcept { return counterexamples.empty(); }
};

/// For every assignment b of t's variables into B and every (c, c') in C^2:
/// P2, (b, c, c') |= phi_t  iff  (c, c') in t^{K_P}(alpha_{b_1}, ...).
/// m is taken from this pentagon alone.
PropertyStarReport verify_property_star(const LatticeTerm& t,
                                        const Pentagon& pentagon,
                                        const Budget& budget = Budget{});

/// (phi_t, phi_t') over the sorted union of both terms' variables.
std::pair<SortedPPFormula, SortedPPFormula> theorem15_reduce(
    const LatticeTerm& t, const LatticeTerm& t_prime,
    std::span<const Pentagon> pentagons);

/// D_k(x1..xk) for k <= N, otherwise the conjunction of D_N over every
/// increasing N-subsequence of x1..xk.
PPFormula delta_pp_definition(std::size_t k, std::size_t cutoff);

/// An algebra with three equivalence relations, a family of pentagons whose
/// carriers lie in it, and relations D_1..D_N. Target symbols: alpha, beta,
/// gamma, D1..DN.
struct AmalgamPackage {
  std::string name;
  FinAlgebra algebra;
  EquivRelation alpha, beta, gamma;
  std::vector<Pentagon> pentagons;
  /// carriers[l][p]: element of A that element p of pentagon l names.
  std::vector<std::vector<ElemId>> carriers;
  std::size_t cutoff = 0;
  std::vector<Relation> d_base;
  RelStructure target;

  static std::string d_symbol(std::size_t k) { return "D" + std::to_string(k); }
};

/// Assembles the package and its target structure. Pentagon elements are
/// matched to algebra elements by name. Throws ValidationError on
/// structural mismatches (unknown element, wrong relation count or arity);
/// the semantic conditions are left to validate_amalgam.
AmalgamPackage make_amalgam(std::string name, FinAlgebra algebra,
                            EquivRelation alpha, EquivRelation beta,
                            EquivRelation gamma, std::vector<Pentagon> pentagons,
                            std::vector<Relation> d_base);

struct AmalgamReport {
  std::vector<std::string> failures;
  bool ok() const noexcept { return failures.empty(); }
};

/// Every package condition, each failure listed: alpha, beta, gamma and the
/// D_k compatible with the operations; alpha < beta, gamma ^ beta = 0,
/// alpha v gamma = beta v gamma; every pentagon valid and induced by
/// restriction (i); D_k = tuples inside a common carrier for k <= N (ii);
/// at least one interesting pentagon.
AmalgamReport validate_amalgam(const AmalgamPackage& pkg,
                               const Budget& budget = Budget{});

/// Throws ValidationError with the itemized report unless validation passes.
void require_valid_amalgam(const AmalgamPackage& pkg,
                           const Budget& budget = Budget{});

/// Sorted phi over {R} -> phi' over the target. Every variable v becomes
/// v'; sort-1 equalities become beta, sort-2 equalities gamma; each
/// R(x, y, z) becomes beta(w1, x') & beta(w2, x') & gamma(w1, y') &
/// gamma(w2, z') & alpha(w1, w2) with fresh w's; then Delta over all primed
/// variables (free, bound) and all w's. The w's are quantified first.
PPFormula sorted_to_pp(const SortedPPFormula& phi, const AmalgamPackage& pkg);

std::pair<PPFormula, PPFormula> theorem11_reduce(const SortedPPFormula& phi,
                                                 const SortedPPFormula& psi,
                                                 const AmalgamPackage& pkg);

struct MatchingReport {
  /// Satisfying assignments of phi' over the target that were checked.
  std::size_t forward_checked = 0;
  /// (sorted solution, matching assignment) pairs checked.
  std::size_t backward_checked = 0;
  std::vector<std::string> counterexamples;

  bool ok() const noexcept { return counterexamples.empty(); }
};

/// Both directions of the matching claim by enumeration:
///  - every solution g of phi' lies in some pentagon carrier, and the sorted
///    assignment matching g there satisfies phi on that P2;
///  - for every P2 and solution f of phi there, every g matching f
///    satisfies phi'.
MatchingReport verify_matching_claim(const AmalgamPackage& pkg,
                                     const SortedPPFormula& phi,
                                     const Budget& budget = Budget{});

/// P2 of every pentagon of the package, in order.
std::vector<Pentagon2Sorted> two_sorted_structures(const AmalgamPackage& pkg);

/// Reads `amalgam NAME { algebra = "A.alg" alpha = {{..}} beta = {..}
/// gamma = {..} pentagons = {"P.pent", ...} relations = "D.struct" }`.
/// The relations file is a structure over A's universe holding D1..DN.
/// Paths are relative to the package file.
AmalgamPackage load_amalgam_package(const std::filesystem::path& path);
AmalgamPackage parse_amalgam_package(std::string_view text,
                                     const std::filesystem::path& base_dir);

}  // namespace ppcomp

#endif  // PPCOMP_CM_REDUCTION_HPP
