// Naive reference implementations used only by the tests. Nothing here
// calls the library's evaluators or closure code, so agreement with them is
// meaningful.
#ifndef PPCOMP_TESTS_ORACLE_HPP
#define PPCOMP_TESTS_ORACLE_HPP

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ppcomp/formula.hpp"
#include "ppcomp/lattice.hpp"
#include "ppcomp/partition.hpp"
#include "ppcomp/pentagon.hpp"
#include "ppcomp/structure.hpp"

namespace oracle {

using ppcomp::ElemId;
using ppcomp::PPFormula;
using ppcomp::RelStructure;
using ppcomp::Tuple;

using TupleSet = std::set<Tuple>;

inline std::map<std::string, TupleSet> tables(const RelStructure& b) {
  std::map<std::string, TupleSet> out;
  for (const auto& r : b.relations())
    out[r.symbol] = TupleSet(r.relation.tuples().begin(), r.relation.tuples().end());
  return out;
}

// Every atom true under a full assignment of formula.variables()?
inline bool atoms_hold(const PPFormula& f, const std::map<std::string, ElemId>& g,
                       const std::map<std::string, TupleSet>& rel) {
  for (const auto& a : f.atoms) {
    if (a.is_equality()) {
      if (g.at(a.args[0]) != g.at(a.args[1])) return false;
      continue;
    }
    Tuple t;
    for (const auto& v : a.args) t.push_back(g.at(v));
    if (!rel.at(a.symbol).count(t)) return false;
  }
  return true;
}

// Odometer over domain sizes; calls fn(values) for each point, lexicographic.
template <class Fn>
void odometer(const std::vector<std::size_t>& sizes, Fn&& fn) {
  for (auto s : sizes)
    if (s == 0) return;
  std::vector<ElemId> v(sizes.size(), 0);
  while (true) {
    fn(v);
    std::size_t i = v.size();
    while (i > 0) {
      --i;
      if (static_cast<std::size_t>(++v[i]) < sizes[i]) break;
      v[i] = 0;
      if (i == 0) return;
    }
    if (v.empty()) return;
  }
}

// Per-variable domain sizes for free then bound variables.
inline std::vector<Tuple> solutions_with(const PPFormula& f,
                                         const std::vector<std::size_t>& free_sizes,
                                         const std::vector<std::size_t>& bound_sizes,
                                         const std::map<std::string, TupleSet>& rel) {
  std::vector<Tuple> out;
  odometer(free_sizes, [&](const std::vector<ElemId>& fv) {
    std::map<std::string, ElemId> g;
    for (std::size_t i = 0; i < fv.size(); ++i) g[f.free_vars[i]] = fv[i];
    bool found = false;
    odometer(bound_sizes, [&](const std::vector<ElemId>& bv) {
      if (found) return;
      for (std::size_t i = 0; i < bv.size(); ++i) g[f.bound_vars[i]] = bv[i];
      found = atoms_hold(f, g, rel);
    });
    if (found) out.push_back(fv);
  });
  return out;
}

inline std::vector<Tuple> solutions(const RelStructure& b, const PPFormula& f) {
  return solutions_with(f, std::vector<std::size_t>(f.free_vars.size(), b.size()),
                        std::vector<std::size_t>(f.bound_vars.size(), b.size()),
                        tables(b));
}

inline bool holds(const RelStructure& b, const PPFormula& f, const Tuple& values) {
  auto sols = solutions(b, f);
  return std::find(sols.begin(), sols.end(), values) != sols.end();
}

inline bool ppeq(const RelStructure& b, const PPFormula& phi, const PPFormula& psi) {
  return solutions(b, phi) == solutions(b, psi);
}

inline bool ppcon(const RelStructure& b, const PPFormula& phi, const PPFormula& psi) {
  auto s = solutions(b, phi), t = solutions(b, psi);
  return std::includes(t.begin(), t.end(), s.begin(), s.end());
}

// Sorted formula over a two-sorted pentagon structure.
inline std::vector<Tuple> sorted_solutions(const ppcomp::Pentagon2Sorted& p2,
                                           const ppcomp::SortedPPFormula& f) {
  auto size_of = [&](ppcomp::Sort s) {
    return s == ppcomp::Sort::first ? p2.b_names.size() : p2.c_names.size();
  };
  std::vector<std::size_t> fs, bs;
  const auto& fm = f.formula;
  for (std::size_t i = 0; i < fm.free_vars.size(); ++i) fs.push_back(size_of(f.sorts[i]));
  for (std::size_t i = 0; i < fm.bound_vars.size(); ++i)
    bs.push_back(size_of(f.sorts[fm.free_vars.size() + i]));
  std::map<std::string, TupleSet> rel;
  rel["R"] = TupleSet(p2.r.tuples().begin(), p2.r.tuples().end());
  return solutions_with(fm, fs, bs, rel);
}

// Union of the pairs, closed transitively by Warshall.
inline ppcomp::EquivRelation join_by_closure(const std::vector<ppcomp::EquivRelation>& ts) {
  const std::size_t n = ts.front().carrier_size();
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (const auto& t : ts)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (t.block_of(a) == t.block_of(b)) m[a][b] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (m[a][k] && m[k][b]) m[a][b] = true;
  std::vector<int> labels(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t first = 0;
    while (!m[a][first]) ++first;
    labels[a] = static_cast<int>(first);
  }
  return ppcomp::EquivRelation::from_labels(labels);
}

// ---- random instances -----------------------------------------------------

inline RelStructure random_structure(std::mt19937& rng, std::size_t n,
                                     std::size_t relations, std::size_t max_arity) {
  std::vector<std::string> universe;
  for (std::size_t i = 0; i < n; ++i) universe.push_back(std::to_string(i));
  RelStructure b("B", universe);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<std::size_t> ar(1, max_arity);
  for (std::size_t r = 0; r < relations; ++r) {
    const std::size_t arity = ar(rng);
    std::vector<Tuple> tuples;
    odometer(std::vector<std::size_t>(arity, n), [&](const std::vector<ElemId>& t) {
      if (coin(rng)) tuples.push_back(t);
    });
    b.add_relation("R" + std::to_string(r), ppcomp::Relation(arity, n, tuples));
  }
  return b;
}

// Free x1..xf, bound y1..yb, 1..max_atoms atoms over the signature plus
// equality; every variable may or may not occur.
inline PPFormula random_formula(std::mt19937& rng, const ppcomp::Signature& sig,
                                std::size_t free, std::size_t bound,
                                std::size_t max_atoms, std::string name = "phi") {
  PPFormula f;
  f.name = std::move(name);
  for (std::size_t i = 1; i <= free; ++i) f.free_vars.push_back("x" + std::to_string(i));
  for (std::size_t i = 1; i <= bound; ++i) f.bound_vars.push_back("y" + std::to_string(i));
  const auto vars = f.variables();
  if (vars.empty()) return f;
  std::uniform_int_distribution<std::size_t> na(1, max_atoms), pick_var(0, vars.size() - 1),
      pick_sym(0, sig.size());
  const std::size_t atoms = na(rng);
  for (std::size_t k = 0; k < atoms; ++k) {
    const std::size_t s = pick_sym(rng);
    if (s == sig.size()) {
      f.atoms.push_back(ppcomp::Atom::equality(vars[pick_var(rng)], vars[pick_var(rng)]));
    } else {
      std::vector<std::string> args;
      for (std::size_t i = 0; i < sig[s].second; ++i) args.push_back(vars[pick_var(rng)]);
      f.atoms.push_back(ppcomp::Atom::relation(sig[s].first, args));
    }
  }
  return f;
}

inline ppcomp::EquivRelation random_partition(std::mt19937& rng, std::size_t n) {
  std::vector<int> labels(n);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
  for (auto& l : labels) l = pick(rng);
  return ppcomp::EquivRelation::from_labels(labels);
}

// Term of depth <= depth; compound nodes have 2 or 3 arguments.
inline ppcomp::LatticeTerm random_term(std::mt19937& rng, std::size_t depth,
                                       std::size_t variables) {
  std::uniform_int_distribution<std::size_t> var(1, variables);
  std::uniform_int_distribution<int> kind(0, 2), width(2, 3);
  if (depth == 0 || kind(rng) == 0)
    return ppcomp::LatticeTerm::variable("x" + std::to_string(var(rng)));
  std::vector<ppcomp::LatticeTerm> args;
  for (int i = width(rng); i > 0; --i) args.push_back(random_term(rng, depth - 1, variables));
  return kind(rng) == 1 ? ppcomp::LatticeTerm::meet(std::move(args))
                        : ppcomp::LatticeTerm::join(std::move(args));
}

}  // namespace oracle

#endif  // PPCOMP_TESTS_ORACLE_HPP
