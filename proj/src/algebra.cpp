#include "ppcomp/algebra.hpp"

#include <algorithm>
#include <set>

#include "lexer.hpp"
#include "ppcomp/error.hpp"

namespace ppcomp {

namespace {

// d^k, or nullopt past `cap`.
std::optional<std::uint64_t> bounded_pow(std::uint64_t d, std::uint64_t k,
                                         std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    if (d != 0 && r > cap / d) return std::nullopt;
    r *= d;
  }
  return r;
}

std::size_t table_size(std::size_t arity, std::size_t domain) {
  auto n = bounded_pow(domain, arity, std::uint64_t{1} << 32);
  if (!n) throw BudgetExceeded("operation table too large");
  return static_cast<std::size_t>(*n);
}

// Odometer over {0..base-1}^digits.size(); false once it wraps around.
bool advance(std::vector<ElemId>& digits, std::size_t base) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (static_cast<std::size_t>(++digits[i]) < base) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace

OperationTable::OperationTable(std::size_t arity, std::size_t domain,
                               std::vector<ElemId> values)
    : arity_(arity), domain_(domain), values_(std::move(values)) {
  if (domain_ == 0) throw ValidationError("operation over an empty universe");
  if (values_.size() != table_size(arity_, domain_))
    throw ValidationError("operation table has " +
                          std::to_string(values_.size()) + " entries, expected " +
                          std::to_string(table_size(arity_, domain_)));
  for (ElemId v : values_)
    if (v < 0 || static_cast<std::size_t>(v) >= domain_)
      throw ValidationError("operation value out of range");
}

OperationTable OperationTable::projection(std::size_t arity,
                                          std::size_t domain,
                                          std::size_t index) {
  if (index >= arity) throw ValidationError("projection index out of range");
  std::vector<ElemId> values(table_size(arity, domain));
  std::vector<ElemId> args(arity, 0);
  for (auto& v : values) {
    v = args[index];
    advance(args, domain);
  }
  return OperationTable(arity, domain, std::move(values));
}

OperationTable OperationTable::constant(std::size_t arity, std::size_t domain,
                                        ElemId value) {
  return OperationTable(arity, domain,
                        std::vector<ElemId>(table_size(arity, domain), value));
}

ElemId OperationTable::operator()(std::span<const ElemId> args) const {
  if (args.size() != arity_)
    throw ValidationError("operation of arity " + std::to_string(arity_) +
                          " applied to " + std::to_string(args.size()) +
                          " arguments");
  std::size_t code = 0;
  for (ElemId a : args) {
    if (a < 0 || static_cast<std::size_t>(a) >= domain_)
      throw ValidationError("operation argument out of range");
    code = code * domain_ + static_cast<std::size_t>(a);
  }
  return values_[code];
}

FinAlgebra::FinAlgebra(std::string name, std::vector<std::string> universe)
    : name_(std::move(name)), universe_(std::move(universe)) {
  if (universe_.empty())
    throw ValidationError("algebra '" + name_ + "' has an empty universe");
  std::set<std::string> seen;
  for (const auto& e : universe_)
    if (!seen.insert(e).second)
      throw ValidationError("duplicate element '" + e + "'");
}

void FinAlgebra::add_operation(std::string symbol, OperationTable table) {
  for (const auto& op : operations_)
    if (op.symbol == symbol)
      throw ValidationError("duplicate operation symbol '" + symbol + "'");
  if (table.domain() != universe_.size())
    throw ValidationError("operation '" + symbol +
                          "' is not over the algebra's universe");
  operations_.push_back({std::move(symbol), std::move(table)});
}

std::optional<ElemId> FinAlgebra::find_element(std::string_view name) const {
  auto it = std::find(universe_.begin(), universe_.end(), name);
  if (it == universe_.end()) return std::nullopt;
  return static_cast<ElemId>(it - universe_.begin());
}

FinAlgebra parse_algebra(std::string_view text) {
  using detail::Lexer;
  Lexer lex(text, detail::WordStyle::element);
  lex.expect_word("algebra");
  std::string name = lex.name("algebra name");
  lex.expect("{");
  lex.expect_word("universe");
  lex.expect("=");
  lex.expect("{");
  std::vector<std::string> universe;
  if (!lex.accept("}")) {
    do universe.push_back(lex.name("element name"));
    while (lex.accept(","));
    lex.expect("}");
  }
  FinAlgebra alg(name, universe);
  const std::size_t d = alg.size();

  auto element = [&]() {
    auto tok = lex.peek();
    std::string e = lex.name("element name");
    auto id = alg.find_element(e);
    if (!id)
      throw ValidationError(std::to_string(tok.line) + ":" +
                            std::to_string(tok.column) + ": unknown element '" +
                            e + "'");
    return *id;
  };

  while (lex.accept_word("op")) {
    auto where = lex.peek();
    std::string symbol = lex.name("operation symbol");
    lex.expect("/");
    std::size_t arity = lex.natural("arity");
    lex.expect("=");
    lex.expect("{");
    const std::size_t cells = table_size(arity, d);
    std::vector<ElemId> values(cells, -1);
    if (!lex.accept("}")) {
      do {
        auto at = lex.peek();
        lex.expect("(");
        std::vector<ElemId> args;
        if (!lex.accept(")")) {
          do args.push_back(element());
          while (lex.accept(","));
          lex.expect(")");
        }
        lex.expect(":");
        ElemId value = element();
        auto loc = std::to_string(at.line) + ":" + std::to_string(at.column);
        if (args.size() != arity)
          throw ValidationError(loc + ": entry with " +
                                std::to_string(args.size()) +
                                " arguments in operation " + symbol + "/" +
                                std::to_string(arity));
        std::size_t code = 0;
        for (ElemId a : args) code = code * d + static_cast<std::size_t>(a);
        if (values[code] != -1 && values[code] != value)
          throw ValidationError(loc + ": conflicting entries in operation " +
                                symbol);
        values[code] = value;
      } while (lex.accept(","));
      lex.expect("}");
    }
    if (std::count(values.begin(), values.end(), -1) != 0)
      throw ValidationError(std::to_string(where.line) + ":" +
                            std::to_string(where.column) + ": operation " +
                            symbol + " is not total");
    alg.add_operation(symbol, OperationTable(arity, d, std::move(values)));
  }
  lex.expect("}");
  lex.expect_end();
  return alg;
}

std::string print_algebra(const FinAlgebra& a) {
  using detail::quote_if_needed;
  using detail::WordStyle;
  auto elem = [&](ElemId e) {
    return quote_if_needed(a.universe()[e], WordStyle::element);
  };
  std::string out =
      "algebra " + quote_if_needed(a.name(), WordStyle::element) +
      " {\n  universe = {";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ", ";
    out += elem(static_cast<ElemId>(i));
  }
  out += "}\n";
  for (const auto& op : a.operations()) {
    const auto& t = op.table;
    out += "  op " + quote_if_needed(op.symbol, WordStyle::element) + "/" +
           std::to_string(t.arity()) + " = {";
    std::vector<ElemId> args(t.arity(), 0);
    for (std::size_t code = 0; code < t.values().size(); ++code) {
      if (code) out += ", ";
      out += "(";
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ",";
        out += elem(args[i]);
      }
      out += "):" + elem(t.values()[code]);
      advance(args, a.size());
    }
    out += "}\n";
  }
  out += "}\n";
  return out;
}

FinAlgebra algebra_from_operations(const RelStructure& structure,
                                   const std::vector<OperationTable>& ops,
                                   std::string name) {
  FinAlgebra alg(std::move(name), structure.universe());
  for (std::size_t i = 0; i < ops.size(); ++i)
    alg.add_operation("f" + std::to_string(i + 1), ops[i]);
  return alg;
}

bool preserves(const OperationTable& f, const Relation& relation) {
  for (std::size_t d : relation.dims())
    if (d != f.domain())
      throw ValidationError("operation and relation over different universes");
  const auto& tuples = relation.tuples();
  const std::size_t k = f.arity();
  const std::size_t n = relation.arity();
  if (k == 0) {
    // a nullary operation is a constant c; it preserves R iff (c,...,c) in R
    Tuple t(n, f.values()[0]);
    return relation.contains(t);
  }
  if (tuples.empty()) return true;
  std::vector<ElemId> pick(k, 0);  // indices into tuples
  std::vector<ElemId> args(k);
  Tuple image(n);
  do {
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t j = 0; j < k; ++j) args[j] = tuples[pick[j]][c];
      image[c] = f(args);
    }
    if (!relation.contains(image)) return false;
  } while (advance(pick, tuples.size()));
  return true;
}

std::vector<OperationTable> polymorphisms(const RelStructure& structure,
                                          std::size_t arity,
                                          const Budget& budget) {
  const std::size_t d = structure.size();
  const auto cells = bounded_pow(d, arity, budget.max_enumeration);
  const auto total =
      cells ? bounded_pow(d, *cells, budget.max_enumeration) : std::nullopt;
  if (!total || *total > budget.max_enumeration)
    throw BudgetExceeded("enumerating " + std::to_string(arity) +
                         "-ary operations on " + std::to_string(d) +
                         " elements exceeds the enumeration budget");
  std::vector<OperationTable> out;
  std::vector<ElemId> values(*cells, 0);
  do {
    OperationTable f(arity, d, values);
    bool ok = true;
    for (const auto& r : structure.relations())
      if (!preserves(f, r.relation)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(std::move(f));
  } while (advance(values, d));
  return out;
}

Relation subpower_closure(const FinAlgebra& algebra, const Relation& seed,
                          bool include_diagonal) {
  const std::size_t d = algebra.size();
  for (std::size_t dim : seed.dims())
    if (dim != d)
      throw ValidationError("seed relation is not over the algebra's universe");
  const std::size_t n = seed.arity();

  std::vector<Tuple> items;
  std::set<Tuple> members;
  auto add = [&](Tuple t) {
    if (members.insert(t).second) items.push_back(std::move(t));
  };
  for (const auto& t : seed.tuples()) add(t);
  if (include_diagonal)
    for (std::size_t a = 0; a < d; ++a) add(Tuple(n, static_cast<ElemId>(a)));

  // Semi-naive: when item i is processed, apply every operation to every
  // argument list drawn from items[0..i] that uses item i.
  std::vector<ElemId> pick, args;
  Tuple image(n);
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (const auto& op : algebra.operations()) {
      const std::size_t k = op.table.arity();
      if (k == 0) {
        add(Tuple(n, op.table.values()[0]));
        continue;
      }
      pick.assign(k, 0);
      args.resize(k);
      do {
        if (std::find(pick.begin(), pick.end(), static_cast<ElemId>(i)) ==
            pick.end())
          continue;
        for (std::size_t c = 0; c < n; ++c) {
          for (std::size_t j = 0; j < k; ++j) args[j] = items[pick[j]][c];
          image[c] = op.table(args);
        }
        add(image);
      } while (advance(pick, i + 1));
    }
  }
  return Relation(n, d, std::move(items));
}

DefinabilityResult pp_definability_check(const RelStructure& structure,
                                         const Relation& relation,
                                         std::size_t arity_bound,
                                         const Budget& budget) {
  for (std::size_t dim : relation.dims())
    if (dim != structure.size())
      throw ValidationError("relation is not over the structure's universe");
  for (std::size_t k = 1; k <= arity_bound; ++k)
    for (auto& f : polymorphisms(structure, k, budget))
      if (!preserves(f, relation)) return {std::move(f)};
  return {};
}

bool is_idempotent(const FinAlgebra& algebra) {
  for (const auto& op : algebra.operations()) {
    if (op.table.arity() == 0) {
      if (algebra.size() != 1) return false;
      continue;
    }
    for (std::size_t a = 0; a < algebra.size(); ++a) {
      std::vector<ElemId> args(op.table.arity(), static_cast<ElemId>(a));
      if (op.table(args) != static_cast<ElemId>(a)) return false;
    }
  }
  return true;
}

}  // namespace ppcomp
