#include "ppcomp/partition.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "ppcomp/algebra.hpp"
#include "ppcomp/error.hpp"

namespace ppcomp {

namespace {

constexpr std::size_t kMaxCarrier = 64;

void check_carrier(std::size_t n) {
  if (n > kMaxCarrier)
    throw ValidationError("carrier of " + std::to_string(n) +
                          " elements exceeds the limit of 64");
}

void require_same_carrier(std::size_t a, std::size_t b) {
  if (a != b)
    throw ValidationError("carrier mismatch: " + std::to_string(a) + " vs " +
                          std::to_string(b));
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

}  // namespace

BinaryRelation::BinaryRelation(std::size_t n) : rows_(n, 0) {
  check_carrier(n);
}

std::size_t BinaryRelation::count() const {
  std::size_t c = 0;
  for (auto r : rows_) c += std::popcount(r);
  return c;
}

bool BinaryRelation::is_equivalence() const {
  const std::size_t n = rows_.size();
  for (std::size_t a = 0; a < n; ++a) {
    if (!test(a, a)) return false;
    for (std::size_t b = 0; b < n; ++b) {
      if (!test(a, b)) continue;
      if (!test(b, a)) return false;
      // transitivity: row(b) must be inside row(a)
      if ((rows_[b] & ~rows_[a]) != 0) return false;
    }
  }
  return true;
}

BinaryRelation BinaryRelation::compose(const BinaryRelation& other) const {
  require_same_carrier(carrier_size(), other.carrier_size());
  BinaryRelation out(carrier_size());
  for (std::size_t a = 0; a < rows_.size(); ++a) {
    std::uint64_t mids = rows_[a];
    std::uint64_t acc = 0;
    while (mids) {
      int c = std::countr_zero(mids);
      mids &= mids - 1;
      acc |= other.rows_[c];
    }
    out.rows_[a] = acc;
  }
  return out;
}

EquivRelation::EquivRelation(std::vector<int> canonical_labels)
    : block_of_(std::move(canonical_labels)) {
  num_blocks_ = block_of_.empty()
                    ? 0
                    : static_cast<std::size_t>(*std::max_element(
                          block_of_.begin(), block_of_.end())) +
                          1;
}

EquivRelation EquivRelation::identity(std::size_t n) {
  check_carrier(n);
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 0);
  return EquivRelation(std::move(labels));
}

EquivRelation EquivRelation::full(std::size_t n) {
  check_carrier(n);
  return EquivRelation(std::vector<int>(n, 0));
}

EquivRelation EquivRelation::from_labels(std::span<const int> labels) {
  check_carrier(labels.size());
  std::vector<int> canon(labels.size());
  std::vector<std::pair<int, int>> seen;  // (raw label, canonical id)
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = std::find_if(seen.begin(), seen.end(),
                           [&](const auto& p) { return p.first == labels[i]; });
    if (it == seen.end()) {
      seen.emplace_back(labels[i], static_cast<int>(seen.size()));
      canon[i] = seen.back().second;
    } else {
      canon[i] = it->second;
    }
  }
  return EquivRelation(std::move(canon));
}

EquivRelation EquivRelation::from_blocks(
    std::size_t n, const std::vector<std::vector<int>>& blocks) {
  check_carrier(n);
  std::vector<int> labels(n, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw ValidationError("empty block in partition");
    for (int e : blocks[b]) {
      if (e < 0 || static_cast<std::size_t>(e) >= n)
        throw ValidationError("block element " + std::to_string(e) +
                              " outside carrier");
      if (labels[e] != -1)
        throw ValidationError("element " + std::to_string(e) +
                              " appears in two blocks");
      labels[e] = static_cast<int>(b);
    }
  }
  for (std::size_t e = 0; e < n; ++e)
    if (labels[e] == -1)
      throw ValidationError("element " + std::to_string(e) +
                            " is not covered by any block");
  return from_labels(labels);
}

EquivRelation EquivRelation::generated_by(
    std::size_t n, std::span<const std::pair<int, int>> pairs) {
  check_carrier(n);
  UnionFind uf(n);
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n ||
        static_cast<std::size_t>(b) >= n)
      throw ValidationError("pair outside carrier");
    uf.unite(a, b);
  }
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = uf.find(static_cast<int>(i));
  return from_labels(labels);
}

EquivRelation EquivRelation::from_relation(const BinaryRelation& relation) {
  if (!relation.is_equivalence())
    throw ValidationError("relation is not an equivalence relation");
  const std::size_t n = relation.carrier_size();
  std::vector<int> labels(n);
  for (std::size_t a = 0; a < n; ++a)
    labels[a] = std::countr_zero(relation.row(a));
  return from_labels(labels);
}

std::vector<std::vector<int>> EquivRelation::blocks() const {
  std::vector<std::vector<int>> out(num_blocks_);
  for (std::size_t a = 0; a < block_of_.size(); ++a)
    out[block_of_[a]].push_back(static_cast<int>(a));
  return out;
}

bool EquivRelation::leq(const EquivRelation& other) const {
  require_same_carrier(carrier_size(), other.carrier_size());
  // each block of *this maps into a single block of other
  std::vector<int> image(num_blocks_, -1);
  for (std::size_t a = 0; a < block_of_.size(); ++a) {
    int& slot = image[block_of_[a]];
    if (slot == -1)
      slot = other.block_of_[a];
    else if (slot != other.block_of_[a])
      return false;
  }
  return true;
}

BinaryRelation EquivRelation::to_relation() const {
  const std::size_t n = carrier_size();
  BinaryRelation r(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (related(a, b)) r.set(a, b);
  return r;
}

BinaryRelation compose(const EquivRelation& theta,
                       const EquivRelation& theta_prime) {
  require_same_carrier(theta.carrier_size(), theta_prime.carrier_size());
  return theta.to_relation().compose(theta_prime.to_relation());
}

EquivRelation join_via_product(std::span<const EquivRelation> thetas) {
  if (thetas.empty()) throw ValidationError("join of an empty family");
  const std::size_t m = thetas.front().carrier_size();
  BinaryRelation product = thetas.front().to_relation();
  for (std::size_t i = 1; i < thetas.size(); ++i) {
    require_same_carrier(m, thetas[i].carrier_size());
    product = product.compose(thetas[i].to_relation());
  }
  // m-fold power; the powers stabilise once they reach the join, so stop at
  // the first fixpoint.
  BinaryRelation power = product;
  for (std::size_t i = 1; i < m; ++i) {
    BinaryRelation next = power.compose(product);
    if (next == power) break;
    power = std::move(next);
  }
  return EquivRelation::from_relation(power);
}

EquivRelation join_via_product(const EquivRelation& a, const EquivRelation& b) {
  const EquivRelation pair[] = {a, b};
  return join_via_product(pair);
}

EquivRelation meet(std::span<const EquivRelation> thetas) {
  if (thetas.empty()) throw ValidationError("meet of an empty family");
  const std::size_t n = thetas.front().carrier_size();
  // label each element by its tuple of block ids
  std::vector<std::vector<int>> keys(n);
  for (const auto& t : thetas) {
    require_same_carrier(n, t.carrier_size());
    for (std::size_t a = 0; a < n; ++a) keys[a].push_back(t.block_of(a));
  }
  std::vector<int> labels(n);
  for (std::size_t a = 0; a < n; ++a) {
    labels[a] = static_cast<int>(a);
    for (std::size_t b = 0; b < a; ++b)
      if (keys[b] == keys[a]) {
        labels[a] = labels[b];
        break;
      }
  }
  return EquivRelation::from_labels(labels);
}

EquivRelation meet(const EquivRelation& a, const EquivRelation& b) {
  const EquivRelation pair[] = {a, b};
  return meet(pair);
}

EquivRelation congruence_generated(
    const FinAlgebra& algebra,
    std::span<const std::pair<ElemId, ElemId>> pairs) {
  const std::size_t n = algebra.size();
  check_carrier(n);
  UnionFind uf(n);
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n ||
        static_cast<std::size_t>(b) >= n)
      throw ValidationError("pair outside the algebra's universe");
    uf.unite(a, b);
  }
  // Pairs (a, root(a)) generate the current relation; closing those under
  // every one-position translation f(c.., x, ..c) reaches the congruence.
  bool changed = true;
  std::vector<ElemId> args;
  while (changed) {
    changed = false;
    for (const auto& op : algebra.operations()) {
      const std::size_t k = op.table.arity();
      if (k == 0) continue;
      args.assign(k, 0);
      for (std::size_t a = 0; a < n; ++a) {
        const int ra = uf.find(static_cast<int>(a));
        if (ra == static_cast<int>(a)) continue;
        for (std::size_t pos = 0; pos < k; ++pos) {
          // iterate over all fillings of the other positions
          std::size_t total = 1;
          for (std::size_t i = 0; i + 1 < k; ++i) total *= n;
          for (std::size_t code = 0; code < total; ++code) {
            std::size_t c = code;
            for (std::size_t i = k; i-- > 0;) {
              if (i == pos) continue;
              args[i] = static_cast<ElemId>(c % n);
              c /= n;
            }
            args[pos] = static_cast<ElemId>(a);
            const ElemId x = op.table(args);
            args[pos] = static_cast<ElemId>(ra);
            const ElemId y = op.table(args);
            if (uf.unite(x, y)) changed = true;
          }
        }
      }
    }
  }
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = uf.find(static_cast<int>(i));
  return EquivRelation::from_labels(labels);
}

bool is_congruence(const FinAlgebra& algebra, const EquivRelation& theta) {
  require_same_carrier(algebra.size(), theta.carrier_size());
  const std::size_t n = algebra.size();
  std::vector<ElemId> args;
  for (const auto& op : algebra.operations()) {
    const std::size_t k = op.table.arity();
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= n;
    args.assign(k, 0);
    // Compatibility with all k-tuples of related pairs reduces to
    // one-position changes by transitivity.
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t c = code;
      for (std::size_t i = k; i-- > 0;) {
        args[i] = static_cast<ElemId>(c % n);
        c /= n;
      }
      const ElemId base = op.table(args);
      for (std::size_t pos = 0; pos < k; ++pos) {
        const ElemId orig = args[pos];
        for (std::size_t b = 0; b < n; ++b) {
          if (static_cast<ElemId>(b) == orig || !theta.related(orig, b))
            continue;
          args[pos] = static_cast<ElemId>(b);
          if (!theta.related(base, op.table(args))) return false;
        }
        args[pos] = orig;
      }
    }
  }
  return true;
}

std::vector<EquivRelation> all_partitions(std::size_t n) {
  check_carrier(n);
  std::vector<EquivRelation> out;
  if (n == 0) {
    out.push_back(EquivRelation::identity(0));
    return out;
  }
  // restricted growth strings a[0]=0, a[i] <= 1 + max(a[0..i-1])
  std::vector<int> a(n, 0), mx(n, 0);
  while (true) {
    out.push_back(EquivRelation::from_labels(a));
    std::size_t i = n - 1;
    while (i > 0 && a[i] == mx[i - 1] + 1) --i;
    if (i == 0) break;
    ++a[i];
    mx[i] = std::max(mx[i - 1], a[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      a[j] = 0;
      mx[j] = mx[j - 1];
    }
  }
  return out;
}

}  // namespace ppcomp
