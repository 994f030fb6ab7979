#ifndef PPCOMP_STRUCTURE_HPP
#define PPCOMP_STRUCTURE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ppcomp {

/// Index of an element inside the universe of its structure or algebra.
using ElemId = std::int32_t;
using Tuple = std::vector<ElemId>;

/// A finite set of tuples. Coordinate i ranges over {0, ..., dims[i] - 1};
/// homogeneous relations over one universe have all dims equal, two-sorted
/// relations mix them. Tuples are kept sorted and unique, and a dense bitmap
/// index backs contains() whenever the product of dims is small enough.
class Relation {
 public:
  Relation() = default;
  /// Homogeneous relation of the given arity over a universe of `domain`
  /// elements. Throws ValidationError on out-of-range or wrong-length tuples.
  Relation(std::size_t arity, std::size_t domain, std::vector<Tuple> tuples);
  Relation(std::vector<std::size_t> dims, std::vector<Tuple> tuples);

  static Relation full(std::size_t arity, std::size_t domain);
  static Relation equality(std::size_t domain);

  std::size_t arity() const noexcept { return dims_.size(); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  /// Universe size of a homogeneous relation (dims()[0], or 0 when nullary).
  std::size_t domain() const noexcept { return dims_.empty() ? 0 : dims_[0]; }

  const std::vector<Tuple>& tuples() const noexcept { return tuples_; }
  std::size_t size() const noexcept { return tuples_.size(); }
  bool empty() const noexcept { return tuples_.empty(); }

  bool contains(std::span<const ElemId> tuple) const;

  bool operator==(const Relation& other) const {
    return dims_ == other.dims_ && tuples_ == other.tuples_;
  }

 private:
  std::vector<std::size_t> dims_;
  std::vector<Tuple> tuples_;
  std::vector<std::uint64_t> bits_;
  bool indexed_ = false;
};

struct NamedRelation {
  std::string symbol;
  Relation relation;

  bool operator==(const NamedRelation&) const = default;
};

/// Relation symbols with their arities, in declaration order.
using Signature = std::vector<std::pair<std::string, std::size_t>>;

/// Finite relational structure: a non-empty universe of opaque element
/// names and an ordered list of uniquely named relations over it.
class RelStructure {
 public:
  RelStructure() = default;
  /// Throws ValidationError if the universe is empty or has duplicates.
  RelStructure(std::string name, std::vector<std::string> universe);

  /// Throws ValidationError on a duplicate symbol or a relation over a
  /// different universe size.
  void add_relation(std::string symbol, Relation relation);

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& universe() const noexcept {
    return universe_;
  }
  std::size_t size() const noexcept { return universe_.size(); }
  const std::string& element_name(ElemId e) const { return universe_.at(e); }
  std::optional<ElemId> find_element(std::string_view name) const;

  const std::vector<NamedRelation>& relations() const noexcept {
    return relations_;
  }
  const NamedRelation* find_relation(std::string_view symbol) const;
  Signature signature() const;

  bool operator==(const RelStructure&) const = default;

 private:
  std::string name_;
  std::vector<std::string> universe_;
  std::vector<NamedRelation> relations_;
};

/// Text form: `structure NAME { universe = {e,...} relation SYM/ARITY =
/// {(e,...),...} ... }`. Whitespace-insensitive, `#` starts a comment.
/// Throws ParseError (syntax) or ValidationError (arity, unknown element).
RelStructure parse_structure(std::string_view text);
std::string print_structure(const RelStructure& structure);

/// B* : B plus one singleton unary relation per element. The new symbols
/// are `const_<element>`, suffixed with primes if that name is taken, so
/// expanding twice adds 2|B| relations.
RelStructure expand_with_constants(const RelStructure& structure);

/// Separator between components of an element of a power structure.
inline constexpr char kProductSeparator = '|';

/// Splits each element name "a1|...|ak" of a k-th power structure into its
/// components; every m-ary relation becomes km-ary over the component set.
/// The component universe is ordered by first appearance.
/// Throws ValidationError if some element is not a k-component name.
RelStructure power_flatten(const RelStructure& structure, std::size_t k);

}  // namespace ppcomp

#endif  // PPCOMP_STRUCTURE_HPP
