#ifndef PPCOMP_PARTITION_HPP
#define PPCOMP_PARTITION_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ppcomp/structure.hpp"

namespace ppcomp {

class FinAlgebra;

/// Binary relation on {0, ..., n-1} as a boolean matrix, one 64-bit row per
/// element (n <= 64).
class BinaryRelation {
 public:
  BinaryRelation() = default;
  explicit BinaryRelation(std::size_t n);

  std::size_t carrier_size() const noexcept { return rows_.size(); }
  bool test(std::size_t a, std::size_t b) const {
    return (rows_[a] >> b) & 1;
  }
  void set(std::size_t a, std::size_t b) { rows_[a] |= std::uint64_t{1} << b; }
  std::uint64_t row(std::size_t a) const { return rows_[a]; }
  std::size_t count() const;

  bool is_equivalence() const;

  /// `{(a, b) : exists c. (a, c) in *this, (c, b) in other}`.
  BinaryRelation compose(const BinaryRelation& other) const;

  bool operator==(const BinaryRelation&) const = default;

 private:
  std::vector<std::uint64_t> rows_;
};

/// Equivalence relation on {0, ..., n-1}, stored as a canonical partition:
/// block ids are numbered in order of each block's least element.
class EquivRelation {
 public:
  EquivRelation() = default;

  /// 0_n, the identity relation.
  static EquivRelation identity(std::size_t n);
  /// 1_n, the full relation.
  static EquivRelation full(std::size_t n);
  /// From any block labelling (labels need not be canonical).
  static EquivRelation from_labels(std::span<const int> labels);
  /// From a list of disjoint non-empty blocks covering {0..n-1}. Throws
  /// ValidationError otherwise.
  static EquivRelation from_blocks(std::size_t n,
                                   const std::vector<std::vector<int>>& blocks);
  /// Least equivalence relation containing the pairs.
  static EquivRelation generated_by(
      std::size_t n, std::span<const std::pair<int, int>> pairs);
  /// Throws ValidationError unless the relation is an equivalence.
  static EquivRelation from_relation(const BinaryRelation& relation);

  std::size_t carrier_size() const noexcept { return block_of_.size(); }
  std::size_t num_blocks() const noexcept { return num_blocks_; }
  int block_of(std::size_t a) const { return block_of_[a]; }
  const std::vector<int>& labels() const noexcept { return block_of_; }
  bool related(std::size_t a, std::size_t b) const {
    return block_of_[a] == block_of_[b];
  }
  std::vector<std::vector<int>> blocks() const;

  /// Refinement order of Eq(A): every pair of *this is a pair of other.
  bool leq(const EquivRelation& other) const;

  BinaryRelation to_relation() const;

  auto operator<=>(const EquivRelation&) const = default;

 private:
  explicit EquivRelation(std::vector<int> canonical_labels);

  std::vector<int> block_of_;
  std::size_t num_blocks_ = 0;
};

/// Relational product theta o theta'. Throws ValidationError on carrier
/// mismatch.
BinaryRelation compose(const EquivRelation& theta, const EquivRelation& theta_prime);

/// Join in Eq(A) computed as the m-fold relational power of the k-fold
/// product theta_1 o ... o theta_k, where m = |A|. Throws ValidationError on
/// carrier mismatch or an empty family.
EquivRelation join_via_product(std::span<const EquivRelation> thetas);
EquivRelation join_via_product(const EquivRelation& a, const EquivRelation& b);

/// Intersection. Throws ValidationError on carrier mismatch or an empty
/// family.
EquivRelation meet(std::span<const EquivRelation> thetas);
EquivRelation meet(const EquivRelation& a, const EquivRelation& b);

/// Least congruence of the algebra containing the pairs: the fixpoint of
/// closing under translations by basic operations and under transitivity.
EquivRelation congruence_generated(const FinAlgebra& algebra,
                                   std::span<const std::pair<ElemId, ElemId>> pairs);

/// True iff every basic operation of the algebra is compatible with theta.
bool is_congruence(const FinAlgebra& algebra, const EquivRelation& theta);

/// All partitions of an n-set, in lexicographic order of their restricted
/// growth strings (so 1_n first and 0_n last).
std::vector<EquivRelation> all_partitions(std::size_t n);

}  // namespace ppcomp

#endif  // PPCOMP_PARTITION_HPP
