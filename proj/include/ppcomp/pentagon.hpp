#ifndef PPCOMP_PENTAGON_HPP
#define PPCOMP_PENTAGON_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ppcomp/partition.hpp"
#include "ppcomp/structure.hpp"

namespace ppcomp {

/// A set P with equivalence relations alpha, beta, gamma, meant to satisfy
///   1. alpha <= beta
///   2. beta ^ gamma = 0_P
///   3. beta o gamma = 1_P
///   4. alpha v gamma = 1_P
struct Pentagon {
  std::string name;
  std::vector<std::string> elements;
  EquivRelation alpha;
  EquivRelation beta;
  EquivRelation gamma;

  std::optional<ElemId> find_element(std::string_view name) const;
};

/// Text form: `pentagon NAME { set={...} alpha={{...},...} beta={...}
/// gamma={...} }`.
Pentagon parse_pentagon(std::string_view text);
std::string print_pentagon(const Pentagon& pentagon);

/// Number (1..4) of the first axiom that fails, or nullopt if all hold.
/// Axiom 4 is skipped when check_axiom4 is false. Carrier mismatches count
/// as a failure of axiom 1.
std::optional<int> validate_pentagon(const Pentagon& pentagon,
                                     bool check_axiom4 = true);

/// P = B x C with B the beta-classes and C the gamma-classes, each ordered by
/// least element.
struct PentagonDecomposition {
  std::vector<std::vector<int>> b_classes;
  std::vector<std::vector<int>> c_classes;
  /// coords[p] = (b, c) for every element p of P.
  std::vector<std::pair<int, int>> coords;
  /// element[b * |C| + c] = p, the inverse of coords.
  std::vector<int> element;
  /// alpha_b(b) = {(c, c') : ((b, c), (b, c')) in alpha}, an equivalence on C.
  std::vector<EquivRelation> alpha_b;
  /// Partition of B into blocks of equal alpha_b, ordered by least b.
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of_b;
  /// alphas[i] is the common alpha_b of block i; duplicate-free.
  std::vector<EquivRelation> alphas;

  std::size_t b_size() const noexcept { return b_classes.size(); }
  std::size_t c_size() const noexcept { return c_classes.size(); }
  int element_at(int b, int c) const {
    return element[static_cast<std::size_t>(b) * c_size() + c];
  }
};

/// Throws ValidationError if validate_pentagon fails (axiom 4 only checked
/// when check_axiom4).
PentagonDecomposition decompose_pentagon(const Pentagon& pentagon,
                                         bool check_axiom4 = true);

/// Least (j, k), 0-based block indices, with alphas[j] strictly below
/// alphas[k]; nullopt when no such pair exists.
std::optional<std::pair<std::size_t, std::size_t>> is_interesting(
    const PentagonDecomposition& decomposition);

/// Two-sorted structure with sorts B and C and the ternary relation
/// R = {(b, c, c') : (c, c') in alpha_b}.
struct Pentagon2Sorted {
  std::string name;
  std::vector<std::string> b_names;
  std::vector<std::string> c_names;
  /// dims (|B|, |C|, |C|).
  Relation r;

  /// Fibre {(c, c') : (b, c, c') in R} as a binary relation on C.
  BinaryRelation fibre(int b) const;
};

/// B-elements are named b1, b2, ... and C-elements c1, c2, ... .
Pentagon2Sorted pentagon_two_sorted(const PentagonDecomposition& decomposition,
                                    std::string name = "P2");

/// R contains every (b, c, c) and each fibre is an equivalence relation.
bool is_valid_two_sorted(const Pentagon2Sorted& structure);

}  // namespace ppcomp

#endif  // PPCOMP_PENTAGON_HPP
