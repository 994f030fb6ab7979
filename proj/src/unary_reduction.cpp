#include "ppcomp/unary_reduction.hpp"

#include <algorithm>

#include "lexer.hpp"
#include "ppcomp/error.hpp"
#include "ppcomp/eval.hpp"
#include "ppcomp/io.hpp"
#include "subsequences.hpp"

namespace ppcomp {

namespace {

// Boolean tuple over C -> tuple over A via the trace.
Tuple lift(const Tuple& t, const std::array<ElemId, 2>& trace) {
  Tuple out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = trace[t[i]];
  return out;
}

Relation lift(const Relation& r, const std::array<ElemId, 2>& trace,
              std::size_t domain) {
  std::vector<Tuple> tuples;
  for (const auto& t : r.tuples()) tuples.push_back(lift(t, trace));
  return Relation(r.arity(), domain, std::move(tuples));
}

// Tuples of r whose entries all lie in the trace.
std::vector<Tuple> trace_part(const Relation& r,
                              const std::array<ElemId, 2>& trace) {
  std::vector<Tuple> out;
  for (const auto& t : r.tuples())
    if (std::all_of(t.begin(), t.end(),
                    [&](ElemId e) { return e == trace[0] || e == trace[1]; }))
      out.push_back(t);
  return out;
}

// E-conjunct over the given variables: formula (1) shape beyond k.
std::vector<Atom> e_atoms(const std::vector<std::string>& vars, std::size_t k) {
  std::vector<Atom> out;
  if (vars.size() <= k) {
    out.push_back(Atom::relation(UnaryTypePackage::e_symbol(vars.size()), vars));
    return out;
  }
  for (const auto& sub : detail::increasing_subsequences(vars.size(), k)) {
    std::vector<std::string> args;
    for (auto i : sub) args.push_back(vars[i]);
    out.push_back(Atom::relation(UnaryTypePackage::e_symbol(k), std::move(args)));
  }
  return out;
}

std::string join_lines(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += "\n  - " + s;
  return out;
}

}  // namespace

UnaryTypePackage build_package(std::string name, const FinAlgebra& algebra,
                               std::array<ElemId, 2> trace,
                               const RelStructure& boolean,
                               const Budget& budget) {
  const std::size_t d = algebra.size();
  std::vector<std::string> failures;
  for (ElemId t : trace)
    if (t < 0 || static_cast<std::size_t>(t) >= d)
      throw ValidationError("trace element outside the algebra's universe");
  if (trace[0] == trace[1]) failures.push_back("trace elements coincide");
  if (boolean.size() != 2)
    failures.push_back("boolean structure '" + boolean.name() + "' has " +
                       std::to_string(boolean.size()) + " elements, expected 2");
  if (!failures.empty())
    throw ValidationError("invalid unary package '" + name + "':" +
                          join_lines(failures));

  std::uint64_t cells = 1;
  for (std::size_t i = 0; i < d; ++i) {
    cells *= d;
    if (cells > budget.max_enumeration)
      throw BudgetExceeded("E relations over " + std::to_string(d) +
                           " elements exceed the enumeration budget");
  }

  UnaryTypePackage pkg;
  pkg.name = std::move(name);
  pkg.algebra = algebra;
  pkg.trace = trace;
  pkg.boolean = boolean;
  pkg.target = RelStructure(pkg.name + "_target", algebra.universe());

  for (const auto& r : boolean.relations()) {
    const std::size_t n = r.relation.arity();
    for (ElemId c : {0, 1})
      if (!r.relation.contains(Tuple(n, c)))
        failures.push_back("relation " + r.symbol + " lacks the constant tuple (" +
                           boolean.element_name(c) + ",...)");
    Relation lifted = lift(r.relation, trace, d);
    Relation closure = subpower_closure(algebra, lifted, true);
    if (trace_part(closure, trace) != lifted.tuples())
      failures.push_back("closure of " + r.symbol +
                         " restricted to the trace differs from " + r.symbol);
    pkg.d.push_back(std::move(closure));
  }
  for (std::size_t n = 1; n <= d; ++n) {
    Relation seed = lift(Relation::full(n, 2), trace, d);
    Relation closure = subpower_closure(algebra, seed, true);
    if (trace_part(closure, trace) != seed.tuples())
      failures.push_back("E" + std::to_string(n) +
                         " restricted to the trace is not N^" +
                         std::to_string(n));
    pkg.e.push_back(std::move(closure));
  }
  if (!failures.empty())
    throw ValidationError("invalid unary package '" + pkg.name + "':" +
                          join_lines(failures));

  for (std::size_t i = 0; i < pkg.d.size(); ++i)
    pkg.target.add_relation(UnaryTypePackage::d_symbol(i), pkg.d[i]);
  for (std::size_t n = 1; n <= pkg.e.size(); ++n)
    pkg.target.add_relation(UnaryTypePackage::e_symbol(n), pkg.e[n - 1]);
  return pkg;
}

PPFormula en_pp_definition(std::size_t n, std::size_t k) {
  if (n == 0 || k == 0)
    throw ValidationError("E definition needs n >= 1 and k >= 1");
  PPFormula f;
  f.name = "E" + std::to_string(n);
  for (std::size_t i = 1; i <= n; ++i) f.free_vars.push_back("x" + std::to_string(i));
  f.atoms = e_atoms(f.free_vars, k);
  return f;
}

PPFormula lemma1_transform(const PPFormula& phi, const UnaryTypePackage& pkg) {
  validate(phi, pkg.boolean.signature());
  PPFormula out;
  out.name = phi.name + "'";
  out.free_vars = phi.free_vars;
  out.bound_vars = phi.bound_vars;
  const auto& rels = pkg.boolean.relations();
  for (const auto& a : phi.atoms) {
    if (a.is_equality()) {
      out.atoms.push_back(a);
      continue;
    }
    auto it = std::find_if(rels.begin(), rels.end(),
                           [&](const auto& r) { return r.symbol == a.symbol; });
    out.atoms.push_back(Atom::relation(
        UnaryTypePackage::d_symbol(static_cast<std::size_t>(it - rels.begin())),
        a.args));
  }
  const auto vars = phi.variables();
  if (!vars.empty())
    for (auto& atom : e_atoms(vars, pkg.k())) out.atoms.push_back(std::move(atom));
  return out;
}

Prop10Report verify_prop10(const UnaryTypePackage& pkg, const PPFormula& phi,
                           const Budget& budget) {
  Prop10Report report;
  const PPFormula phi_prime = lemma1_transform(phi, pkg);
  const Evaluator on_c(pkg.boolean, phi, budget);
  const Evaluator on_a(pkg.target, phi_prime, budget);
  const std::size_t m = phi.free_vars.size();
  if (m >= 63 || (std::uint64_t{1} << m) > budget.max_enumeration)
    throw BudgetExceeded("boolean sweep over " + std::to_string(m) +
                         " free variables exceeds the enumeration budget");

  auto show = [&](const Tuple& t, const std::vector<std::string>& names) {
    return "(" + format_assignment(phi.free_vars, t, names) + ")";
  };

  // (a) boolean assignments agree across C and the target
  std::vector<Tuple> boolean_solutions;
  Tuple g(m, 0);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << m); ++code) {
    for (std::size_t i = 0; i < m; ++i) g[i] = (code >> (m - 1 - i)) & 1;
    const bool in_c = on_c.satisfies(g);
    const Tuple lifted = lift(g, pkg.trace);
    const bool in_a = on_a.satisfies(lifted);
    if (in_c) boolean_solutions.push_back(lifted);
    if (in_c != in_a)
      report.counterexamples.push_back(
          "boolean assignment " + show(g, pkg.boolean.universe()) +
          (in_c ? " satisfies phi over C but not phi' over A"
                : " satisfies phi' over A but not phi over C"));
    ++report.boolean_checked;
  }

  // (b) solutions over A are the closure of the boolean solutions
  const Relation closure = subpower_closure(
      pkg.algebra, Relation(m, pkg.algebra.size(), boolean_solutions), true);
  const auto target_solutions = on_a.solutions();
  report.closure_size = closure.size();
  const auto& universe = pkg.algebra.universe();
  std::size_t i = 0, j = 0;
  const auto& cl = closure.tuples();
  while (i < target_solutions.size() || j < cl.size()) {
    if (j == cl.size() || (i < target_solutions.size() && target_solutions[i] < cl[j])) {
      report.counterexamples.push_back("assignment " +
                                       show(target_solutions[i], universe) +
                                       " satisfies phi' but is not in the closure");
      ++i;
    } else if (i == target_solutions.size() || cl[j] < target_solutions[i]) {
      report.counterexamples.push_back("closure tuple " + show(cl[j], universe) +
                                       " does not satisfy phi'");
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return report;
}

std::pair<PPFormula, PPFormula> theorem5_reduce(const PPFormula& phi,
                                                const PPFormula& psi,
                                                const UnaryTypePackage& pkg) {
  if (phi.free_vars != psi.free_vars)
    throw ValidationError("formulas '" + phi.name + "' and '" + psi.name +
                          "' have different free variables");
  return {lemma1_transform(phi, pkg), lemma1_transform(psi, pkg)};
}

UnaryTypePackage parse_unary_package(std::string_view text,
                                     const std::filesystem::path& base_dir,
                                     const Budget& budget) {
  detail::Lexer lex(text, detail::WordStyle::element);
  lex.expect_word("package");
  std::string name = lex.name("package name");
  lex.expect("{");
  lex.expect_word("algebra");
  lex.expect("=");
  std::string algebra_path = lex.name("algebra file");
  lex.expect_word("trace");
  lex.expect("=");
  lex.expect("{");
  std::string t0 = lex.name("trace element");
  lex.expect(",");
  std::string t1 = lex.name("trace element");
  lex.expect("}");
  lex.expect_word("boolean");
  lex.expect("=");
  std::string boolean_path = lex.name("boolean structure file");
  lex.expect("}");
  lex.expect_end();

  FinAlgebra algebra = parse_algebra(read_text_file(base_dir / algebra_path));
  RelStructure boolean = parse_structure(read_text_file(base_dir / boolean_path));
  std::array<ElemId, 2> trace{};
  const std::string names[2] = {t0, t1};
  for (int i = 0; i < 2; ++i) {
    auto id = algebra.find_element(names[i]);
    if (!id)
      throw ValidationError("trace element '" + names[i] +
                            "' is not in the algebra");
    trace[i] = *id;
  }
  return build_package(name, algebra, trace, boolean, budget);
}

UnaryTypePackage load_unary_package(const std::filesystem::path& path,
                                    const Budget& budget) {
  return parse_unary_package(read_text_file(path), path.parent_path(), budget);
}

}  // namespace ppcomp
