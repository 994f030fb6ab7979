#include "ppcomp/pentagon.hpp"

#include <algorithm>
#include <set>

#include "lexer.hpp"
#include "ppcomp/error.hpp"
#include "ppcomp/lattice.hpp"

namespace ppcomp {

std::optional<ElemId> Pentagon::find_element(std::string_view name) const {
  auto it = std::find(elements.begin(), elements.end(), name);
  if (it == elements.end()) return std::nullopt;
  return static_cast<ElemId>(it - elements.begin());
}

Pentagon parse_pentagon(std::string_view text) {
  using detail::Lexer;
  Lexer lex(text, detail::WordStyle::element);
  lex.expect_word("pentagon");
  Pentagon p;
  p.name = lex.name("pentagon name");
  lex.expect("{");
  lex.expect_word("set");
  lex.expect("=");
  lex.expect("{");
  if (!lex.accept("}")) {
    do p.elements.push_back(lex.name("element name"));
    while (lex.accept(","));
    lex.expect("}");
  }
  if (p.elements.empty()) throw ValidationError("pentagon with an empty set");
  std::set<std::string> seen(p.elements.begin(), p.elements.end());
  if (seen.size() != p.elements.size())
    throw ValidationError("duplicate element in pentagon set");

  auto partition = [&](std::string_view key) {
    lex.expect_word(key);
    lex.expect("=");
    auto where = lex.peek();
    lex.expect("{");
    std::vector<std::vector<int>> blocks;
    if (!lex.accept("}")) {
      do {
        lex.expect("{");
        std::vector<int> block;
        if (!lex.accept("}")) {
          do {
            auto tok = lex.peek();
            std::string e = lex.name("element name");
            auto id = p.find_element(e);
            if (!id)
              throw ValidationError(std::to_string(tok.line) + ":" +
                                    std::to_string(tok.column) +
                                    ": unknown element '" + e + "'");
            block.push_back(*id);
          } while (lex.accept(","));
          lex.expect("}");
        }
        blocks.push_back(std::move(block));
      } while (lex.accept(","));
      lex.expect("}");
    }
    try {
      return EquivRelation::from_blocks(p.elements.size(), blocks);
    } catch (const ValidationError& e) {
      throw ValidationError(std::to_string(where.line) + ":" +
                            std::to_string(where.column) + ": " +
                            std::string(key) + ": " + e.what());
    }
  };
  p.alpha = partition("alpha");
  p.beta = partition("beta");
  p.gamma = partition("gamma");
  lex.expect("}");
  lex.expect_end();
  return p;
}

std::string print_pentagon(const Pentagon& p) {
  std::vector<std::string> names;
  for (const auto& e : p.elements)
    names.push_back(detail::quote_if_needed(e, detail::WordStyle::element));
  std::string out = "pentagon " +
                    detail::quote_if_needed(p.name, detail::WordStyle::element) +
                    " {\n  set = {";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  out += "}\n";
  out += "  alpha = " + format_partition(p.alpha, names) + "\n";
  out += "  beta = " + format_partition(p.beta, names) + "\n";
  out += "  gamma = " + format_partition(p.gamma, names) + "\n";
  return out + "}\n";
}

std::optional<int> validate_pentagon(const Pentagon& p, bool check_axiom4) {
  const std::size_t n = p.elements.size();
  if (p.alpha.carrier_size() != n || p.beta.carrier_size() != n ||
      p.gamma.carrier_size() != n || !p.alpha.leq(p.beta))
    return 1;
  if (meet(p.beta, p.gamma) != EquivRelation::identity(n)) return 2;
  if (compose(p.beta, p.gamma).count() != n * n) return 3;
  if (check_axiom4 && join_via_product(p.alpha, p.gamma) != EquivRelation::full(n))
    return 4;
  return std::nullopt;
}

PentagonDecomposition decompose_pentagon(const Pentagon& p, bool check_axiom4) {
  if (auto failed = validate_pentagon(p, check_axiom4))
    throw ValidationError("pentagon '" + p.name + "' violates axiom " +
                          std::to_string(*failed));
  PentagonDecomposition d;
  d.b_classes = p.beta.blocks();
  d.c_classes = p.gamma.blocks();
  const std::size_t nc = d.c_size();
  d.element.assign(d.b_size() * nc, -1);
  for (std::size_t e = 0; e < p.elements.size(); ++e) {
    int b = p.beta.block_of(e), c = p.gamma.block_of(e);
    d.coords.emplace_back(b, c);
    d.element[static_cast<std::size_t>(b) * nc + c] = static_cast<int>(e);
  }
  for (std::size_t b = 0; b < d.b_size(); ++b) {
    std::vector<int> labels(nc);
    for (std::size_t c = 0; c < nc; ++c)
      labels[c] = p.alpha.block_of(d.element_at(static_cast<int>(b),
                                                static_cast<int>(c)));
    d.alpha_b.push_back(EquivRelation::from_labels(labels));
  }
  d.block_of_b.assign(d.b_size(), -1);
  for (std::size_t b = 0; b < d.b_size(); ++b) {
    auto it = std::find(d.alphas.begin(), d.alphas.end(), d.alpha_b[b]);
    if (it == d.alphas.end()) {
      d.block_of_b[b] = static_cast<int>(d.alphas.size());
      d.alphas.push_back(d.alpha_b[b]);
      d.blocks.emplace_back();
    } else {
      d.block_of_b[b] = static_cast<int>(it - d.alphas.begin());
    }
    d.blocks[d.block_of_b[b]].push_back(static_cast<int>(b));
  }
  return d;
}

std::optional<std::pair<std::size_t, std::size_t>> is_interesting(
    const PentagonDecomposition& d) {
  for (std::size_t j = 0; j < d.alphas.size(); ++j)
    for (std::size_t k = 0; k < d.alphas.size(); ++k)
      if (j != k && d.alphas[j].leq(d.alphas[k])) return std::pair{j, k};
  return std::nullopt;
}

BinaryRelation Pentagon2Sorted::fibre(int b) const {
  BinaryRelation out(c_names.size());
  for (const auto& t : r.tuples())
    if (t[0] == b) out.set(t[1], t[2]);
  return out;
}

Pentagon2Sorted pentagon_two_sorted(const PentagonDecomposition& d,
                                    std::string name) {
  Pentagon2Sorted s;
  s.name = std::move(name);
  for (std::size_t b = 0; b < d.b_size(); ++b)
    s.b_names.push_back("b" + std::to_string(b + 1));
  for (std::size_t c = 0; c < d.c_size(); ++c)
    s.c_names.push_back("c" + std::to_string(c + 1));
  std::vector<Tuple> tuples;
  for (std::size_t b = 0; b < d.b_size(); ++b)
    for (std::size_t c = 0; c < d.c_size(); ++c)
      for (std::size_t c2 = 0; c2 < d.c_size(); ++c2)
        if (d.alpha_b[b].related(c, c2))
          tuples.push_back({static_cast<ElemId>(b), static_cast<ElemId>(c),
                            static_cast<ElemId>(c2)});
  s.r = Relation({d.b_size(), d.c_size(), d.c_size()}, std::move(tuples));
  return s;
}

bool is_valid_two_sorted(const Pentagon2Sorted& s) {
  const auto& dims = s.r.dims();
  if (dims.size() != 3 || dims[0] != s.b_names.size() ||
      dims[1] != s.c_names.size() || dims[2] != s.c_names.size())
    return false;
  for (std::size_t b = 0; b < s.b_names.size(); ++b)
    if (!s.fibre(static_cast<int>(b)).is_equivalence()) return false;
  return true;
}

}  // namespace ppcomp
