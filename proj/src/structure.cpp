#include "ppcomp/structure.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "lexer.hpp"
#include "ppcomp/error.hpp"

namespace ppcomp {

namespace {

// Dense bitmaps are built up to this many cells (4 MiB of bits).
constexpr std::uint64_t kMaxIndexedCells = std::uint64_t{1} << 25;

}  // namespace

Relation::Relation(std::size_t arity, std::size_t domain,
                   std::vector<Tuple> tuples)
    : Relation(std::vector<std::size_t>(arity, domain), std::move(tuples)) {}

Relation::Relation(std::vector<std::size_t> dims, std::vector<Tuple> tuples)
    : dims_(std::move(dims)), tuples_(std::move(tuples)) {
  for (const auto& t : tuples_) {
    if (t.size() != dims_.size())
      throw ValidationError("tuple of length " + std::to_string(t.size()) +
                            " in relation of arity " +
                            std::to_string(dims_.size()));
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] < 0 || static_cast<std::size_t>(t[i]) >= dims_[i])
        throw ValidationError("tuple component out of range");
  }
  std::sort(tuples_.begin(), tuples_.end());
  tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());

  std::uint64_t cells = 1;
  for (std::size_t d : dims_) {
    cells *= std::max<std::size_t>(d, 1);
    if (cells > kMaxIndexedCells) return;
  }
  indexed_ = true;
  bits_.assign((cells + 63) / 64, 0);
  for (const auto& t : tuples_) {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < t.size(); ++i) code = code * dims_[i] + t[i];
    bits_[code >> 6] |= std::uint64_t{1} << (code & 63);
  }
}

Relation Relation::full(std::size_t arity, std::size_t domain) {
  std::vector<Tuple> tuples;
  Tuple t(arity, 0);
  if (domain == 0 && arity > 0) return Relation(arity, domain, {});
  for (;;) {
    tuples.push_back(t);
    std::size_t i = arity;
    while (i > 0 && static_cast<std::size_t>(++t[i - 1]) == domain) t[--i] = 0;
    if (i == 0) break;
  }
  return Relation(arity, domain, std::move(tuples));
}

Relation Relation::equality(std::size_t domain) {
  std::vector<Tuple> tuples;
  for (std::size_t a = 0; a < domain; ++a)
    tuples.push_back({static_cast<ElemId>(a), static_cast<ElemId>(a)});
  return Relation(2, domain, std::move(tuples));
}

bool Relation::contains(std::span<const ElemId> tuple) const {
  if (tuple.size() != dims_.size()) return false;
  if (indexed_) {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      if (tuple[i] < 0 || static_cast<std::size_t>(tuple[i]) >= dims_[i])
        return false;
      code = code * dims_[i] + tuple[i];
    }
    return (bits_[code >> 6] >> (code & 63)) & 1;
  }
  return std::binary_search(
      tuples_.begin(), tuples_.end(), tuple, [](const auto& a, const auto& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(),
                                            b.end());
      });
}

RelStructure::RelStructure(std::string name, std::vector<std::string> universe)
    : name_(std::move(name)), universe_(std::move(universe)) {
  if (universe_.empty())
    throw ValidationError("structure '" + name_ + "' has an empty universe");
  std::set<std::string> seen;
  for (const auto& e : universe_) {
    if (e.empty()) throw ValidationError("empty element name");
    if (!seen.insert(e).second)
      throw ValidationError("duplicate element '" + e + "'");
  }
}

void RelStructure::add_relation(std::string symbol, Relation relation) {
  if (symbol.empty()) throw ValidationError("empty relation symbol");
  if (find_relation(symbol))
    throw ValidationError("duplicate relation symbol '" + symbol + "'");
  for (std::size_t d : relation.dims())
    if (d != universe_.size())
      throw ValidationError("relation '" + symbol +
                            "' is not over the structure's universe");
  relations_.push_back({std::move(symbol), std::move(relation)});
}

std::optional<ElemId> RelStructure::find_element(std::string_view name) const {
  auto it = std::find(universe_.begin(), universe_.end(), name);
  if (it == universe_.end()) return std::nullopt;
  return static_cast<ElemId>(it - universe_.begin());
}

const NamedRelation* RelStructure::find_relation(std::string_view symbol) const {
  for (const auto& r : relations_)
    if (r.symbol == symbol) return &r;
  return nullptr;
}

Signature RelStructure::signature() const {
  Signature sig;
  for (const auto& r : relations_) sig.emplace_back(r.symbol, r.relation.arity());
  return sig;
}

RelStructure parse_structure(std::string_view text) {
  using detail::Lexer;
  Lexer lex(text, detail::WordStyle::element);
  lex.expect_word("structure");
  std::string name = lex.name("structure name");
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
  RelStructure s(name, universe);

  while (lex.accept_word("relation")) {
    auto where = lex.peek();
    std::string symbol = lex.name("relation symbol");
    lex.expect("/");
    std::size_t arity = lex.natural("arity");
    lex.expect("=");
    lex.expect("{");
    std::vector<Tuple> tuples;
    if (!lex.accept("}")) {
      do {
        auto at = lex.peek();
        lex.expect("(");
        Tuple t;
        if (!lex.accept(")")) {
          do {
            auto elem_tok = lex.peek();
            std::string e = lex.name("element name");
            auto id = s.find_element(e);
            if (!id)
              throw ValidationError(std::to_string(elem_tok.line) + ":" +
                                    std::to_string(elem_tok.column) +
                                    ": unknown element '" + e + "'");
            t.push_back(*id);
          } while (lex.accept(","));
          lex.expect(")");
        }
        if (t.size() != arity)
          throw ValidationError(std::to_string(at.line) + ":" +
                                std::to_string(at.column) + ": tuple of length " +
                                std::to_string(t.size()) + " in relation " +
                                symbol + "/" + std::to_string(arity));
        tuples.push_back(std::move(t));
      } while (lex.accept(","));
      lex.expect("}");
    }
    try {
      s.add_relation(symbol, Relation(arity, s.size(), std::move(tuples)));
    } catch (const ValidationError& e) {
      throw ValidationError(std::to_string(where.line) + ":" +
                            std::to_string(where.column) + ": " + e.what());
    }
  }
  lex.expect("}");
  lex.expect_end();
  return s;
}

std::string print_structure(const RelStructure& s) {
  using detail::quote_if_needed;
  using detail::WordStyle;
  auto elem = [&](ElemId e) {
    return quote_if_needed(s.element_name(e), WordStyle::element);
  };
  std::string out = "structure " + quote_if_needed(s.name(), WordStyle::element) +
                    " {\n  universe = {";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += elem(static_cast<ElemId>(i));
  }
  out += "}\n";
  for (const auto& r : s.relations()) {
    out += "  relation " + quote_if_needed(r.symbol, WordStyle::element) + "/" +
           std::to_string(r.relation.arity()) + " = {";
    bool first = true;
    for (const auto& t : r.relation.tuples()) {
      if (!first) out += ", ";
      first = false;
      out += "(";
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ",";
        out += elem(t[i]);
      }
      out += ")";
    }
    out += "}\n";
  }
  out += "}\n";
  return out;
}

RelStructure expand_with_constants(const RelStructure& s) {
  RelStructure out = s;
  std::vector<std::string> taken;
  for (const auto& r : s.relations()) taken.push_back(r.symbol);
  for (std::size_t e = 0; e < s.size(); ++e) {
    std::string symbol = "const_" + s.universe()[e];
    while (std::find(taken.begin(), taken.end(), symbol) != taken.end())
      symbol += "'";
    taken.push_back(symbol);
    out.add_relation(symbol,
                     Relation(1, s.size(), {Tuple{static_cast<ElemId>(e)}}));
  }
  return out;
}

RelStructure power_flatten(const RelStructure& s, std::size_t k) {
  if (k == 0) throw ValidationError("power exponent must be positive");
  std::vector<std::vector<std::string>> parts(s.size());
  std::vector<std::string> base;
  std::map<std::string, ElemId> base_index;
  for (std::size_t e = 0; e < s.size(); ++e) {
    const std::string& name = s.universe()[e];
    std::vector<std::string> comps;
    std::size_t start = 0;
    for (;;) {
      auto bar = name.find(kProductSeparator, start);
      comps.push_back(name.substr(start, bar - start));
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    if (comps.size() != k)
      throw ValidationError("element '" + name + "' is not a " +
                            std::to_string(k) + "-component product element");
    for (const auto& c : comps) {
      if (c.empty())
        throw ValidationError("element '" + name + "' has an empty component");
      if (base_index.emplace(c, static_cast<ElemId>(base.size())).second)
        base.push_back(c);
    }
    parts[e] = std::move(comps);
  }
  RelStructure out(s.name() + "_flat", base);
  for (const auto& r : s.relations()) {
    std::vector<Tuple> tuples;
    for (const auto& t : r.relation.tuples()) {
      Tuple flat;
      flat.reserve(t.size() * k);
      for (ElemId e : t)
        for (const auto& c : parts[e]) flat.push_back(base_index.at(c));
      tuples.push_back(std::move(flat));
    }
    out.add_relation(r.symbol,
                     Relation(r.relation.arity() * k, base.size(), std::move(tuples)));
  }
  return out;
}

}  // namespace ppcomp
