#include "ppcomp/lattice.hpp"

#include <algorithm>
#include <set>

#include "lexer.hpp"
#include "ppcomp/algebra.hpp"
#include "ppcomp/error.hpp"

namespace ppcomp {

FiniteLattice FiniteLattice::from_tables(
    std::vector<std::string> labels,
    std::vector<std::vector<std::size_t>> meet,
    std::vector<std::vector<std::size_t>> join) {
  const std::size_t n = labels.size();
  if (n == 0) throw ValidationError("empty lattice");
  auto square = [&](const auto& t) {
    if (t.size() != n) return false;
    for (const auto& row : t) {
      if (row.size() != n) return false;
      for (auto v : row)
        if (v >= n) return false;
    }
    return true;
  };
  if (!square(meet) || !square(join))
    throw ValidationError("lattice tables must be " + std::to_string(n) + "x" +
                          std::to_string(n) + " over the element indices");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (meet[a][b] != meet[b][a] || join[a][b] != join[b][a])
        throw ValidationError("lattice operations are not commutative");
      if (meet[a][join[a][b]] != a || join[a][meet[a][b]] != a)
        throw ValidationError("lattice operations are not absorptive");
      for (std::size_t c = 0; c < n; ++c)
        if (meet[meet[a][b]][c] != meet[a][meet[b][c]] ||
            join[join[a][b]][c] != join[a][join[b][c]])
          throw ValidationError("lattice operations are not associative");
    }
  FiniteLattice l;
  l.labels_ = std::move(labels);
  l.meet_ = std::move(meet);
  l.join_ = std::move(join);
  return l;
}

FiniteLattice FiniteLattice::from_order(
    std::vector<std::string> labels, const std::vector<std::vector<bool>>& leq) {
  const std::size_t n = labels.size();
  if (leq.size() != n)
    throw ValidationError("order matrix does not match the element count");
  for (const auto& row : leq)
    if (row.size() != n)
      throw ValidationError("order matrix does not match the element count");
  for (std::size_t a = 0; a < n; ++a) {
    if (!leq[a][a]) throw ValidationError("order is not reflexive");
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && leq[a][b] && leq[b][a])
        throw ValidationError("order is not antisymmetric");
      for (std::size_t c = 0; c < n; ++c)
        if (leq[a][b] && leq[b][c] && !leq[a][c])
          throw ValidationError("order is not transitive");
    }
  }
  std::vector<std::vector<std::size_t>> meet(n, std::vector<std::size_t>(n));
  std::vector<std::vector<std::size_t>> join(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::optional<std::size_t> glb, lub;
      for (std::size_t c = 0; c < n; ++c) {
        if (leq[c][a] && leq[c][b] && (!glb || leq[*glb][c])) glb = c;
        if (leq[a][c] && leq[b][c] && (!lub || leq[c][*lub])) lub = c;
      }
      if (!glb || !lub)
        throw ValidationError("elements " + labels[a] + " and " + labels[b] +
                              " have no common bound");
      // the candidates must dominate every bound
      for (std::size_t c = 0; c < n; ++c) {
        if (leq[c][a] && leq[c][b] && !leq[c][*glb])
          throw ValidationError("elements " + labels[a] + " and " + labels[b] +
                                " have no greatest lower bound");
        if (leq[a][c] && leq[b][c] && !leq[*lub][c])
          throw ValidationError("elements " + labels[a] + " and " + labels[b] +
                                " have no least upper bound");
      }
      meet[a][b] = *glb;
      join[a][b] = *lub;
    }
  return from_tables(std::move(labels), std::move(meet), std::move(join));
}

FiniteLattice FiniteLattice::from_partitions(std::vector<EquivRelation> elements) {
  const std::size_t n = elements.size();
  if (n == 0) throw ValidationError("empty lattice");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < elements.front().carrier_size(); ++i)
    names.push_back(std::to_string(i));
  FiniteLattice l;
  l.partitions_ = std::move(elements);
  for (const auto& p : l.partitions_) l.labels_.push_back(format_partition(p, names));
  l.meet_.assign(n, std::vector<std::size_t>(n));
  l.join_.assign(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      auto m = l.find(ppcomp::meet(l.partitions_[a], l.partitions_[b]));
      auto j = l.find(join_via_product(l.partitions_[a], l.partitions_[b]));
      if (!m || !j)
        throw ValidationError("partition family is not closed under meet and join");
      l.meet_[a][b] = l.meet_[b][a] = *m;
      l.join_[a][b] = l.join_[b][a] = *j;
    }
  return l;
}

FiniteLattice FiniteLattice::chain(std::size_t n) {
  if (n == 0) throw ValidationError("empty lattice");
  FiniteLattice l;
  l.meet_.assign(n, std::vector<std::size_t>(n));
  l.join_.assign(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    l.labels_.push_back(std::to_string(a));
    for (std::size_t b = 0; b < n; ++b) {
      l.meet_[a][b] = std::min(a, b);
      l.join_[a][b] = std::max(a, b);
    }
  }
  return l;
}

std::optional<std::size_t> FiniteLattice::find(const EquivRelation& theta) const {
  auto it = std::find(partitions_.begin(), partitions_.end(), theta);
  if (it == partitions_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - partitions_.begin());
}

std::string format_partition(const EquivRelation& theta,
                             const std::vector<std::string>& names) {
  std::string out = "{";
  bool first_block = true;
  for (const auto& block : theta.blocks()) {
    if (!first_block) out += ",";
    first_block = false;
    out += "{";
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i) out += ",";
      out += names.at(block[i]);
    }
    out += "}";
  }
  return out + "}";
}

FiniteLattice congruence_lattice(const FinAlgebra& algebra,
                                 const Budget& budget) {
  if (algebra.size() > budget.max_congruence_carrier)
    throw BudgetExceeded("congruence lattice of a " +
                         std::to_string(algebra.size()) +
                         "-element algebra exceeds the carrier guard of " +
                         std::to_string(budget.max_congruence_carrier));
  std::vector<EquivRelation> cons;
  for (auto& p : all_partitions(algebra.size()))
    if (is_congruence(algebra, p)) cons.push_back(std::move(p));
  auto l = FiniteLattice::from_partitions(std::move(cons));
  return l;
}

std::optional<std::array<std::size_t, 3>> check_modular_law(
    const FiniteLattice& l) {
  const std::size_t n = l.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (!l.leq(x, y)) continue;
      for (std::size_t z = 0; z < n; ++z)
        if (l.join(x, l.meet(y, z)) != l.meet(y, l.join(x, z)))
          return std::array<std::size_t, 3>{x, y, z};
    }
  return std::nullopt;
}

FiniteLattice sublattice_generated(std::span<const EquivRelation> generators) {
  if (generators.empty()) throw ValidationError("no generators");
  std::vector<EquivRelation> items;
  std::set<EquivRelation> seen;
  auto add = [&](EquivRelation e) {
    if (seen.insert(e).second) items.push_back(std::move(e));
  };
  for (const auto& g : generators) {
    if (g.carrier_size() != generators.front().carrier_size())
      throw ValidationError("generators over different carriers");
    add(g);
  }
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      add(meet(items[i], items[j]));
      add(join_via_product(items[i], items[j]));
    }
  return FiniteLattice::from_partitions(std::move(items));
}

LatticeTerm LatticeTerm::variable(std::string name) {
  if (name.empty()) throw ValidationError("empty variable name");
  LatticeTerm t;
  t.kind_ = Kind::variable;
  t.name_ = std::move(name);
  return t;
}

LatticeTerm LatticeTerm::meet(std::vector<LatticeTerm> args) {
  if (args.empty()) throw ValidationError("meet of no arguments");
  LatticeTerm t;
  t.kind_ = Kind::meet;
  t.args_ = std::move(args);
  return t;
}

LatticeTerm LatticeTerm::join(std::vector<LatticeTerm> args) {
  if (args.empty()) throw ValidationError("join of no arguments");
  LatticeTerm t;
  t.kind_ = Kind::join;
  t.args_ = std::move(args);
  return t;
}

std::size_t LatticeTerm::depth() const {
  std::size_t d = 0;
  for (const auto& a : args_) d = std::max(d, a.depth() + 1);
  return d;
}

std::size_t LatticeTerm::leaves() const {
  if (kind_ == Kind::variable) return 1;
  std::size_t n = 0;
  for (const auto& a : args_) n += a.leaves();
  return n;
}

std::vector<std::string> LatticeTerm::variables() const {
  std::vector<std::string> out;
  auto walk = [&](auto&& self, const LatticeTerm& t) -> void {
    if (t.kind_ == Kind::variable) {
      if (std::find(out.begin(), out.end(), t.name_) == out.end())
        out.push_back(t.name_);
      return;
    }
    for (const auto& a : t.args_) self(self, a);
  };
  walk(walk, *this);
  return out;
}

namespace {

LatticeTerm parse_term(detail::Lexer& lex) {
  if (!lex.accept("(")) {
    if (lex.peek().kind != detail::TokenKind::word) lex.fail("expected a term");
    return LatticeTerm::variable(lex.next().text);
  }
  std::vector<LatticeTerm> args;
  args.push_back(parse_term(lex));
  std::optional<LatticeTerm::Kind> op;
  while (!lex.accept(")")) {
    LatticeTerm::Kind k;
    if (lex.accept("^"))
      k = LatticeTerm::Kind::meet;
    else if (lex.accept_word("v"))
      k = LatticeTerm::Kind::join;
    else
      lex.fail("expected '^', 'v' or ')'");
    if (op && *op != k)
      lex.fail("mixed '^' and 'v' in one group; add parentheses");
    op = k;
    args.push_back(parse_term(lex));
  }
  if (!op) return std::move(args.front());
  return *op == LatticeTerm::Kind::meet ? LatticeTerm::meet(std::move(args))
                                        : LatticeTerm::join(std::move(args));
}

}  // namespace

LatticeTerm parse_lattice_term(std::string_view text) {
  detail::Lexer lex(text, detail::WordStyle::identifier);
  LatticeTerm t = parse_term(lex);
  lex.expect_end();
  return t;
}

std::string print_lattice_term(const LatticeTerm& t) {
  if (t.kind() == LatticeTerm::Kind::variable) return t.name();
  const char* op = t.kind() == LatticeTerm::Kind::meet ? " ^ " : " v ";
  std::string out = "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += op;
    out += print_lattice_term(t.args()[i]);
  }
  return out + ")";
}

std::vector<std::string> shared_variables(const LatticeTerm& t,
                                          const LatticeTerm& t_prime) {
  std::set<std::string> all;
  for (auto& v : t.variables()) all.insert(v);
  for (auto& v : t_prime.variables()) all.insert(v);
  return {all.begin(), all.end()};
}

namespace {

// Term with variables resolved to positions in an assignment vector.
struct CompiledTerm {
  LatticeTerm::Kind kind;
  std::size_t var = 0;
  std::vector<CompiledTerm> args;
};

CompiledTerm compile_term(const LatticeTerm& t,
                          const std::vector<std::string>& variables) {
  CompiledTerm c{t.kind(), 0, {}};
  if (t.kind() == LatticeTerm::Kind::variable) {
    auto it = std::find(variables.begin(), variables.end(), t.name());
    if (it == variables.end())
      throw ValidationError("unbound variable '" + t.name() + "'");
    c.var = static_cast<std::size_t>(it - variables.begin());
    return c;
  }
  for (const auto& a : t.args()) c.args.push_back(compile_term(a, variables));
  return c;
}

std::size_t eval(const CompiledTerm& t, std::span<const std::size_t> values,
                 const FiniteLattice& l) {
  if (t.kind == LatticeTerm::Kind::variable) return values[t.var];
  std::size_t acc = eval(t.args.front(), values, l);
  for (std::size_t i = 1; i < t.args.size(); ++i) {
    std::size_t v = eval(t.args[i], values, l);
    acc = t.kind == LatticeTerm::Kind::meet ? l.meet(acc, v) : l.join(acc, v);
  }
  return acc;
}

}  // namespace

std::size_t eval_lattice_term(const LatticeTerm& term,
                              const std::vector<std::string>& variables,
                              std::span<const std::size_t> values,
                              const FiniteLattice& lattice) {
  if (values.size() != variables.size())
    throw ValidationError("assignment does not match the variable list");
  for (auto v : values)
    if (v >= lattice.size())
      throw ValidationError("assignment value outside the lattice");
  return eval(compile_term(term, variables), values, lattice);
}

std::size_t eval_lattice_term(const LatticeTerm& term,
                              const std::map<std::string, std::size_t>& g,
                              const FiniteLattice& lattice) {
  std::vector<std::string> vars;
  std::vector<std::size_t> values;
  for (const auto& [k, v] : g) {
    vars.push_back(k);
    values.push_back(v);
  }
  return eval_lattice_term(term, vars, values, lattice);
}

Verdict decide_term_ineq(
    const LatticeTerm& t, const LatticeTerm& t_prime,
    std::span<const FiniteLattice> lattices,
    const std::vector<std::optional<std::vector<std::size_t>>>& restrict_to,
    const Budget& budget) {
  const auto vars = shared_variables(t, t_prime);
  const auto ct = compile_term(t, vars);
  const auto ctp = compile_term(t_prime, vars);
  std::uint64_t visited = 0;
  for (std::size_t li = 0; li < lattices.size(); ++li) {
    const auto& l = lattices[li];
    if (l.size() > 12 && vars.size() > 4)
      throw BudgetExceeded("lattice of " + std::to_string(l.size()) +
                           " elements with " + std::to_string(vars.size()) +
                           " variables exceeds the term sweep guard");
    std::vector<std::size_t> domain;
    if (li < restrict_to.size() && restrict_to[li]) {
      domain = *restrict_to[li];
      std::sort(domain.begin(), domain.end());
      domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
      for (auto e : domain)
        if (e >= l.size())
          throw ValidationError("restriction element outside the lattice");
    } else {
      for (std::size_t e = 0; e < l.size(); ++e) domain.push_back(e);
    }
    if (domain.empty()) continue;
    std::vector<std::size_t> pos(vars.size(), 0), values(vars.size());
    for (;;) {
      if (++visited > budget.max_enumeration)
        throw BudgetExceeded("term sweep exceeds the enumeration budget");
      for (std::size_t i = 0; i < pos.size(); ++i) values[i] = domain[pos[i]];
      if (!l.leq(eval(ct, values, l), eval(ctp, values, l))) {
        Assignment w(values.begin(), values.end());
        return Verdict::fails({li, std::move(w)});
      }
      std::size_t i = pos.size();
      while (i > 0 && ++pos[i - 1] == domain.size()) pos[--i] = 0;
      if (i == 0) break;
    }
  }
  return Verdict::holds();
}

}  // namespace ppcomp
