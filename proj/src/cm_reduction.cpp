#include "ppcomp/cm_reduction.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <unordered_set>

#include "lexer.hpp"
#include "ppcomp/error.hpp"
#include "ppcomp/io.hpp"
#include "subsequences.hpp"

namespace ppcomp {

// ---------------------------------------------------------------- DNF

std::vector<std::string> DNFFormula::variables() const {
  std::vector<std::string> out;
  for (const auto& d : disjuncts)
    for (const auto& l : d)
      if (std::find(out.begin(), out.end(), l.variable) == out.end())
        out.push_back(l.variable);
  return out;
}

namespace {

Literal parse_literal(detail::Lexer& lex) {
  bool positive = !lex.accept("!");
  if (lex.peek().kind != detail::TokenKind::word) lex.fail("expected a variable");
  return {lex.next().text, positive};
}

}  // namespace

DNFFormula parse_dnf(std::string_view text) {
  detail::Lexer lex(text, detail::WordStyle::identifier);
  DNFFormula phi;
  do {
    std::vector<Literal> conj;
    if (lex.accept("(")) {
      do conj.push_back(parse_literal(lex));
      while (lex.accept("&"));
      lex.expect(")");
    } else {
      conj.push_back(parse_literal(lex));
    }
    phi.disjuncts.push_back(std::move(conj));
  } while (lex.accept("|"));
  lex.expect_end();
  return phi;
}

std::string print_dnf(const DNFFormula& phi) {
  std::string out;
  for (std::size_t i = 0; i < phi.disjuncts.size(); ++i) {
    if (i) out += " | ";
    out += "(";
    for (std::size_t j = 0; j < phi.disjuncts[i].size(); ++j) {
      if (j) out += " & ";
      const auto& l = phi.disjuncts[i][j];
      out += (l.positive ? "" : "!") + l.variable;
    }
    out += ")";
  }
  return out;
}

Verdict decide_dnf_tautology(const DNFFormula& phi, const Budget& budget) {
  const auto vars = phi.variables();
  if (phi.disjuncts.empty() || vars.empty())
    throw ValidationError("DNF formula without variables");
  if (vars.size() > budget.max_dnf_variables || vars.size() >= 63)
    throw BudgetExceeded("DNF formula has " + std::to_string(vars.size()) +
                         " variables, guard is " +
                         std::to_string(budget.max_dnf_variables));
  const std::size_t n = vars.size();
  // literal -> (bit position from the most significant variable, polarity)
  std::vector<std::vector<std::pair<std::size_t, bool>>> compiled;
  for (const auto& d : phi.disjuncts) {
    std::vector<std::pair<std::size_t, bool>> c;
    for (const auto& l : d) {
      auto idx = static_cast<std::size_t>(
          std::find(vars.begin(), vars.end(), l.variable) - vars.begin());
      c.emplace_back(n - 1 - idx, l.positive);
    }
    compiled.push_back(std::move(c));
  }
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    bool holds = false;
    for (const auto& c : compiled) {
      bool conj = true;
      for (auto [bit, pos] : c)
        if (bool((code >> bit) & 1) != pos) {
          conj = false;
          break;
        }
      if (conj) {
        holds = true;
        break;
      }
    }
    if (!holds) {
      Assignment w(n);
      for (std::size_t i = 0; i < n; ++i) w[i] = (code >> (n - 1 - i)) & 1;
      return Verdict::fails({0, std::move(w)});
    }
  }
  return Verdict::holds();
}

// ---------------------------------------------------------------- Thm 15

std::size_t compute_m(std::span<const Pentagon> pentagons) {
  if (pentagons.empty()) throw ValidationError("no pentagons given");
  std::size_t m = 0;
  for (const auto& p : pentagons) m = std::max(m, decompose_pentagon(p).c_size());
  return m;
}

namespace {

struct TermTranslator {
  std::size_t m;
  std::unordered_set<std::string> taken;
  PPFormula* out;
  std::size_t next_index = 0;

  std::string fresh() {
    std::string v;
    do v = "_z" + std::to_string(next_index++);
    while (taken.count(v));
    out->bound_vars.push_back(v);
    return v;
  }

  void build(const LatticeTerm& t, const std::string& y1, const std::string& y2) {
    switch (t.kind()) {
      case LatticeTerm::Kind::variable:
        out->atoms.push_back(
            Atom::relation(std::string(kSortedSymbol), {t.name(), y1, y2}));
        return;
      case LatticeTerm::Kind::meet:
        for (const auto& a : t.args()) build(a, y1, y2);
        return;
      case LatticeTerm::Kind::join: {
        // (t1 o ... o tk)^m as a chain y1 = z_{0,k}, ..., z_{m,k} = y2
        const std::size_t k = t.args().size();
        std::string prev = y1;
        for (std::size_t i = 1; i <= m; ++i)
          for (std::size_t j = 1; j <= k; ++j) {
            std::string next = (i == m && j == k) ? y2 : fresh();
            build(t.args()[j - 1], prev, next);
            prev = next;
          }
        return;
      }
    }
  }
};

}  // namespace

SortedPPFormula term_to_sorted_formula(const LatticeTerm& t, std::size_t m,
                                       const std::vector<std::string>& variables) {
  if (m == 0) throw ValidationError("m must be positive");
  for (const auto& v : t.variables())
    if (std::find(variables.begin(), variables.end(), v) == variables.end())
      throw ValidationError("term variable '" + v + "' missing from the list");
  SortedPPFormula sf;
  PPFormula& f = sf.formula;
  f.name = "phi_t";
  f.free_vars = variables;
  std::vector<std::string> taken = variables;
  auto pick = [&](const std::string& preferred) {
    std::string v = std::find(taken.begin(), taken.end(), preferred) == taken.end()
                        ? preferred
                        : fresh_name("y", taken);
    taken.push_back(v);
    return v;
  };
  const std::string y1 = pick("y1");
  const std::string y2 = pick("y2");
  f.free_vars.push_back(y1);
  f.free_vars.push_back(y2);
  TermTranslator tr{m, {taken.begin(), taken.end()}, &f};
  tr.build(t, y1, y2);
  sf.sorts.assign(variables.size(), Sort::first);
  sf.sorts.resize(f.num_variables(), Sort::second);
  return sf;
}

SortedPPFormula term_to_sorted_formula(const LatticeTerm& t,
                                       std::span<const Pentagon> pentagons) {
  return term_to_sorted_formula(t, compute_m(pentagons), shared_variables(t, t));
}

std::uint64_t size_bound_u(std::size_t d, std::size_t n, std::uint64_t l_const,
                           std::uint64_t b_const, std::uint64_t e_const) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  auto mul = [&](std::uint64_t a, std::uint64_t b) {
    return (a != 0 && b > kMax / a) ? kMax : a * b;
  };
  auto add = [&](std::uint64_t a, std::uint64_t b) {
    return a > kMax - b ? kMax : a + b;
  };
  std::uint64_t u = mul(l_const, n);
  for (std::size_t i = 0; i < d; ++i) u = add(mul(mul(b_const, n), u), e_const);
  return u;
}

// A variable costs 4 symbols. A join of k arguments costs
// m * sum|phi_i| + (m*k - 1) < 2m * sum|phi_i| <= 2m * n * u(d, n), a meet
// at most n * u(d, n); u is monotone in d, so E = 0 suffices.
SizeConstants translation_size_constants(std::size_t m) {
  return {4, 2 * std::max<std::uint64_t>(1, m), 0};
}

PropertyStarReport verify_property_star(const LatticeTerm& t,
                                        const Pentagon& pentagon,
                                        const Budget& budget) {
  const auto dec = decompose_pentagon(pentagon);
  const auto p2 = pentagon_two_sorted(dec);
  const auto kp = sublattice_generated(dec.alphas);
  const auto vars = shared_variables(t, t);
  const auto phi = term_to_sorted_formula(t, dec.c_size(), vars);
  const SortedEvaluator eval(p2, phi, budget);

  const std::size_t nb = dec.b_size(), nc = dec.c_size(), n = vars.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n + 2; ++i) {
    total *= i < n ? nb : nc;
    if (total > budget.max_enumeration)
      throw BudgetExceeded("property-star sweep exceeds the enumeration budget");
  }

  // alpha_b as an element of K_P
  std::vector<std::size_t> gen(nb);
  for (std::size_t b = 0; b < nb; ++b) gen[b] = *kp.find(dec.alpha_b[b]);

  // one enumeration instead of a search per point; solutions come out in
  // the same lexicographic order as the sweep below
  const std::vector<Assignment> sols = eval.solutions();
  auto next_sol = sols.begin();

  PropertyStarReport report;
  std::vector<ElemId> bs(n, 0);
  std::vector<std::size_t> values(n);
  std::vector<ElemId> point(n + 2);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) values[i] = gen[bs[i]];
    const auto& theta = kp.partitions()[eval_lattice_term(t, vars, values, kp)];
    std::copy(bs.begin(), bs.end(), point.begin());
    for (std::size_t c = 0; c < nc; ++c)
      for (std::size_t c2 = 0; c2 < nc; ++c2) {
        point[n] = static_cast<ElemId>(c);
        point[n + 1] = static_cast<ElemId>(c2);
        const bool lhs = next_sol != sols.end() && *next_sol == point;
        if (lhs) ++next_sol;
        const bool rhs = theta.related(c, c2);
        ++report.checked;
        if (lhs != rhs) {
          std::string where;
          for (std::size_t i = 0; i < n; ++i)
            where += vars[i] + "=" + p2.b_names[bs[i]] + ", ";
          report.counterexamples.push_back(
              where + "(c, c')=(" + p2.c_names[c] + ", " + p2.c_names[c2] +
              "): formula says " + (lhs ? "yes" : "no") + ", term says " +
              (rhs ? "yes" : "no"));
        }
      }
    std::size_t i = n;
    while (i > 0 && static_cast<std::size_t>(++bs[i - 1]) == nb) bs[--i] = 0;
    if (i == 0) break;
  }
  return report;
}

std::pair<SortedPPFormula, SortedPPFormula> theorem15_reduce(
    const LatticeTerm& t, const LatticeTerm& t_prime,
    std::span<const Pentagon> pentagons) {
  const std::size_t m = compute_m(pentagons);
  const auto vars = shared_variables(t, t_prime);
  auto a = term_to_sorted_formula(t, m, vars);
  auto b = term_to_sorted_formula(t_prime, m, vars);
  a.formula.name = "phi_t";
  b.formula.name = "phi_t_prime";
  return {std::move(a), std::move(b)};
}

namespace {

// Delta over the given variables: the intersection of D_N over every
// N-subsequence beyond the cutoff.
std::vector<Atom> delta_atoms(const std::vector<std::string>& vars,
                              std::size_t cutoff) {
  std::vector<Atom> out;
  if (vars.size() <= cutoff) {
    out.push_back(Atom::relation(AmalgamPackage::d_symbol(vars.size()), vars));
    return out;
  }
  for (const auto& sub : detail::increasing_subsequences(vars.size(), cutoff)) {
    std::vector<std::string> args;
    for (auto i : sub) args.push_back(vars[i]);
    out.push_back(Atom::relation(AmalgamPackage::d_symbol(cutoff), std::move(args)));
  }
  return out;
}

}  // namespace

PPFormula delta_pp_definition(std::size_t k, std::size_t cutoff) {
  if (k == 0 || cutoff == 0)
    throw ValidationError("Delta definition needs k >= 1 and N >= 1");
  PPFormula f;
  f.name = "Delta" + std::to_string(k);
  for (std::size_t i = 1; i <= k; ++i) f.free_vars.push_back("x" + std::to_string(i));
  f.atoms = delta_atoms(f.free_vars, cutoff);
  return f;
}

// ---------------------------------------------------------------- Thm 11

namespace {

Relation as_relation(const EquivRelation& e) {
  std::vector<Tuple> tuples;
  const std::size_t n = e.carrier_size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (e.related(a, b))
        tuples.push_back({static_cast<ElemId>(a), static_cast<ElemId>(b)});
  return Relation(2, n, std::move(tuples));
}

// theta restricted to the carrier, as an equivalence on the pentagon's
// own element indices.
EquivRelation restrict_to(const EquivRelation& theta,
                          const std::vector<ElemId>& carrier) {
  std::vector<int> labels;
  for (ElemId e : carrier) labels.push_back(theta.block_of(e));
  return EquivRelation::from_labels(labels);
}

}  // namespace

AmalgamPackage make_amalgam(std::string name, FinAlgebra algebra,
                            EquivRelation alpha, EquivRelation beta,
                            EquivRelation gamma, std::vector<Pentagon> pentagons,
                            std::vector<Relation> d_base) {
  const std::size_t n = algebra.size();
  if (alpha.carrier_size() != n || beta.carrier_size() != n ||
      gamma.carrier_size() != n)
    throw ValidationError("alpha, beta, gamma must be over the algebra's universe");
  if (pentagons.empty()) throw ValidationError("amalgam without pentagons");
  if (d_base.empty()) throw ValidationError("amalgam without D relations");
  AmalgamPackage pkg;
  pkg.name = std::move(name);
  pkg.cutoff = d_base.size();
  for (std::size_t k = 1; k <= d_base.size(); ++k) {
    const auto& r = d_base[k - 1];
    if (r.arity() != k || r.domain() != n)
      throw ValidationError("relation D" + std::to_string(k) + " must be " +
                            std::to_string(k) + "-ary over the algebra");
  }
  for (const auto& p : pentagons) {
    std::vector<ElemId> carrier;
    for (const auto& e : p.elements) {
      auto id = algebra.find_element(e);
      if (!id)
        throw ValidationError("pentagon '" + p.name + "' element '" + e +
                              "' is not in the algebra");
      carrier.push_back(*id);
    }
    pkg.carriers.push_back(std::move(carrier));
  }
  pkg.target = RelStructure(pkg.name + "_target", algebra.universe());
  pkg.target.add_relation("alpha", as_relation(alpha));
  pkg.target.add_relation("beta", as_relation(beta));
  pkg.target.add_relation("gamma", as_relation(gamma));
  for (std::size_t k = 1; k <= d_base.size(); ++k)
    pkg.target.add_relation(AmalgamPackage::d_symbol(k), d_base[k - 1]);
  pkg.algebra = std::move(algebra);
  pkg.alpha = std::move(alpha);
  pkg.beta = std::move(beta);
  pkg.gamma = std::move(gamma);
  pkg.pentagons = std::move(pentagons);
  pkg.d_base = std::move(d_base);
  return pkg;
}

AmalgamReport validate_amalgam(const AmalgamPackage& pkg, const Budget& budget) {
  AmalgamReport report;
  auto& f = report.failures;
  const std::size_t n = pkg.algebra.size();
  const std::pair<const char*, const EquivRelation*> named[] = {
      {"alpha", &pkg.alpha}, {"beta", &pkg.beta}, {"gamma", &pkg.gamma}};
  for (auto [label, theta] : named)
    if (!is_congruence(pkg.algebra, *theta))
      f.push_back(std::string(label) + " is not compatible with the operations");
  if (!pkg.alpha.leq(pkg.beta) || pkg.alpha == pkg.beta)
    f.push_back("alpha < beta fails");
  if (meet(pkg.gamma, pkg.beta) != EquivRelation::identity(n))
    f.push_back("gamma ^ beta = 0_A fails");
  if (join_via_product(pkg.alpha, pkg.gamma) != join_via_product(pkg.beta, pkg.gamma))
    f.push_back("alpha v gamma = beta v gamma fails");

  bool interesting = false;
  for (std::size_t l = 0; l < pkg.pentagons.size(); ++l) {
    const auto& p = pkg.pentagons[l];
    const auto& carrier = pkg.carriers[l];
    const std::string who = "pentagon '" + p.name + "'";
    if (auto axiom = validate_pentagon(p)) {
      f.push_back(who + " violates axiom " + std::to_string(*axiom));
      continue;
    }
    if (restrict_to(pkg.alpha, carrier) != p.alpha)
      f.push_back(who + ": alpha^P differs from alpha restricted to P (i)");
    if (restrict_to(pkg.beta, carrier) != p.beta)
      f.push_back(who + ": beta^P differs from beta restricted to P (i)");
    if (restrict_to(pkg.gamma, carrier) != p.gamma)
      f.push_back(who + ": gamma^P differs from gamma restricted to P (i)");
    if (is_interesting(decompose_pentagon(p))) interesting = true;
  }
  if (!interesting) f.push_back("no pentagon is interesting");

  // (ii) and compatibility of each D_k
  std::vector<std::uint64_t> member_mask(n, 0);
  for (std::size_t l = 0; l < pkg.carriers.size(); ++l)
    for (ElemId e : pkg.carriers[l]) member_mask[e] |= std::uint64_t{1} << l;
  std::uint64_t visited = 0;
  for (std::size_t k = 1; k <= pkg.cutoff; ++k) {
    const Relation& d = pkg.d_base[k - 1];
    Tuple t(k, 0);
    bool mismatch = false;
    do {
      if (++visited > budget.max_enumeration)
        throw BudgetExceeded("D relation check exceeds the enumeration budget");
      std::uint64_t common = pkg.carriers.size() >= 64
                                 ? ~std::uint64_t{0}
                                 : (std::uint64_t{1} << pkg.carriers.size()) - 1;
      for (ElemId e : t) common &= member_mask[e];
      if ((common != 0) != d.contains(t)) {
        mismatch = true;
        break;
      }
      std::size_t i = k;
      while (i > 0 && static_cast<std::size_t>(++t[i - 1]) == n) t[--i] = 0;
      if (i == 0) break;
    } while (true);
    if (mismatch)
      f.push_back("D" + std::to_string(k) +
                  " is not the set of tuples inside a common pentagon (ii)");
    for (const auto& op : pkg.algebra.operations())
      if (!preserves(op.table, d))
        f.push_back("D" + std::to_string(k) + " is not compatible with " +
                    op.symbol);
  }
  return report;
}

void require_valid_amalgam(const AmalgamPackage& pkg, const Budget& budget) {
  auto report = validate_amalgam(pkg, budget);
  if (report.ok()) return;
  std::string msg = "invalid amalgam package '" + pkg.name + "':";
  for (const auto& s : report.failures) msg += "\n  - " + s;
  throw ValidationError(msg);
}

PPFormula sorted_to_pp(const SortedPPFormula& phi, const AmalgamPackage& pkg) {
  validate(phi);
  const PPFormula& f = phi.formula;
  auto prime = [](const std::string& v) { return v + "'"; };
  PPFormula out;
  out.name = f.name + "'";
  for (const auto& v : f.free_vars) out.free_vars.push_back(prime(v));
  std::vector<std::string> primed_bound;
  for (const auto& v : f.bound_vars) primed_bound.push_back(prime(v));

  std::vector<std::string> taken = out.free_vars;
  taken.insert(taken.end(), primed_bound.begin(), primed_bound.end());
  std::vector<std::string> ws;
  auto fresh_w = [&]() {
    std::string w = fresh_name("_w", taken);
    taken.push_back(w);
    ws.push_back(w);
    return w;
  };
  for (const auto& a : f.atoms) {
    if (a.is_equality()) {
      const char* rel = phi.sort_of(a.args[0]) == Sort::first ? "beta" : "gamma";
      out.atoms.push_back(Atom::relation(rel, {prime(a.args[0]), prime(a.args[1])}));
      continue;
    }
    const std::string x = prime(a.args[0]), y = prime(a.args[1]),
                      z = prime(a.args[2]);
    const std::string w1 = fresh_w(), w2 = fresh_w();
    out.atoms.push_back(Atom::relation("beta", {w1, x}));
    out.atoms.push_back(Atom::relation("beta", {w2, x}));
    out.atoms.push_back(Atom::relation("gamma", {w1, y}));
    out.atoms.push_back(Atom::relation("gamma", {w2, z}));
    out.atoms.push_back(Atom::relation("alpha", {w1, w2}));
  }
  out.bound_vars = ws;
  out.bound_vars.insert(out.bound_vars.end(), primed_bound.begin(),
                        primed_bound.end());

  std::vector<std::string> all = out.free_vars;
  all.insert(all.end(), primed_bound.begin(), primed_bound.end());
  all.insert(all.end(), ws.begin(), ws.end());
  if (!all.empty())
    for (auto& atom : delta_atoms(all, pkg.cutoff)) out.atoms.push_back(std::move(atom));
  validate(out, pkg.target.signature());
  return out;
}

std::pair<PPFormula, PPFormula> theorem11_reduce(const SortedPPFormula& phi,
                                                 const SortedPPFormula& psi,
                                                 const AmalgamPackage& pkg) {
  if (phi.formula.free_vars != psi.formula.free_vars ||
      phi.free_sorts() != psi.free_sorts())
    throw ValidationError("formulas '" + phi.formula.name + "' and '" +
                          psi.formula.name + "' have different sorted free variables");
  return {sorted_to_pp(phi, pkg), sorted_to_pp(psi, pkg)};
}

std::vector<Pentagon2Sorted> two_sorted_structures(const AmalgamPackage& pkg) {
  std::vector<Pentagon2Sorted> out;
  for (const auto& p : pkg.pentagons)
    out.push_back(pentagon_two_sorted(decompose_pentagon(p), "P2_" + p.name));
  return out;
}

MatchingReport verify_matching_claim(const AmalgamPackage& pkg,
                                     const SortedPPFormula& phi,
                                     const Budget& budget) {
  require_valid_amalgam(pkg, budget);
  const PPFormula phi_prime = sorted_to_pp(phi, pkg);
  const auto free_sorts = phi.free_sorts();
  const auto& vars = phi.formula.free_vars;
  const std::size_t m = vars.size();

  std::vector<PentagonDecomposition> decs;
  std::vector<Pentagon2Sorted> p2s;
  std::vector<SortedEvaluator> evals;
  // local index of each A-element in pentagon l, or -1
  std::vector<std::vector<int>> local(pkg.pentagons.size(),
                                      std::vector<int>(pkg.algebra.size(), -1));
  for (std::size_t l = 0; l < pkg.pentagons.size(); ++l) {
    decs.push_back(decompose_pentagon(pkg.pentagons[l]));
    p2s.push_back(pentagon_two_sorted(decs.back(), "P2_" + pkg.pentagons[l].name));
    evals.emplace_back(p2s.back(), phi, budget);
    for (std::size_t p = 0; p < pkg.carriers[l].size(); ++p)
      local[l][pkg.carriers[l][p]] = static_cast<int>(p);
  }
  const Evaluator target_eval(pkg.target, phi_prime, budget);
  MatchingReport report;
  const auto& universe = pkg.algebra.universe();

  // g -> matching f on pentagon l, when g lies in its carrier
  auto match = [&](std::size_t l, const Assignment& g) -> std::optional<Assignment> {
    Assignment f(m);
    for (std::size_t i = 0; i < m; ++i) {
      int p = local[l][g[i]];
      if (p < 0) return std::nullopt;
      f[i] = free_sorts[i] == Sort::first ? decs[l].coords[p].first
                                          : decs[l].coords[p].second;
    }
    return f;
  };

  for (const auto& g : target_eval.solutions()) {
    ++report.forward_checked;
    bool inside = false, matched = false;
    for (std::size_t l = 0; l < pkg.pentagons.size() && !matched; ++l) {
      auto f = match(l, g);
      if (!f) continue;
      inside = true;
      if (evals[l].satisfies(*f)) matched = true;
    }
    const std::string shown = format_assignment(phi_prime.free_vars, g, universe);
    if (!inside)
      report.counterexamples.push_back("solution (" + shown +
                                       ") of phi' lies in no pentagon carrier");
    else if (!matched)
      report.counterexamples.push_back(
          "solution (" + shown + ") of phi' has no matching solution of phi");
  }

  std::uint64_t visited = 0;
  for (std::size_t l = 0; l < pkg.pentagons.size(); ++l) {
    const auto& dec = decs[l];
    for (const auto& f : evals[l].solutions()) {
      // candidates for g(v): carrier elements whose class is f(v)
      std::vector<std::vector<ElemId>> options(m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t p = 0; p < dec.coords.size(); ++p) {
          int cls = free_sorts[i] == Sort::first ? dec.coords[p].first
                                                 : dec.coords[p].second;
          if (cls == f[i]) options[i].push_back(pkg.carriers[l][p]);
        }
      std::vector<std::size_t> pos(m, 0);
      Assignment g(m);
      for (;;) {
        if (++visited > budget.max_enumeration)
          throw BudgetExceeded("matching sweep exceeds the enumeration budget");
        for (std::size_t i = 0; i < m; ++i) g[i] = options[i][pos[i]];
        ++report.backward_checked;
        if (!target_eval.satisfies(g)) {
          const auto& names = free_sorts;
          std::string shown_f;
          for (std::size_t i = 0; i < m; ++i) {
            if (i) shown_f += ", ";
            shown_f += vars[i] + "=" +
                       (names[i] == Sort::first ? p2s[l].b_names[f[i]]
                                                : p2s[l].c_names[f[i]]);
          }
          report.counterexamples.push_back(
              "solution (" + shown_f + ") of phi on " + p2s[l].name +
              " matches (" + format_assignment(phi_prime.free_vars, g, universe) +
              ") which does not satisfy phi'");
        }
        std::size_t i = m;
        while (i > 0 && ++pos[i - 1] == options[i - 1].size()) pos[--i] = 0;
        if (i == 0) break;
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------- files

AmalgamPackage parse_amalgam_package(std::string_view text,
                                     const std::filesystem::path& base_dir) {
  detail::Lexer lex(text, detail::WordStyle::element);
  lex.expect_word("amalgam");
  std::string name = lex.name("package name");
  lex.expect("{");
  lex.expect_word("algebra");
  lex.expect("=");
  FinAlgebra algebra = parse_algebra(read_text_file(base_dir / lex.name("algebra file")));

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
            auto id = algebra.find_element(e);
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
      return EquivRelation::from_blocks(algebra.size(), blocks);
    } catch (const ValidationError& e) {
      throw ValidationError(std::to_string(where.line) + ":" +
                            std::to_string(where.column) + ": " +
                            std::string(key) + ": " + e.what());
    }
  };
  EquivRelation alpha = partition("alpha");
  EquivRelation beta = partition("beta");
  EquivRelation gamma = partition("gamma");

  lex.expect_word("pentagons");
  lex.expect("=");
  lex.expect("{");
  std::vector<Pentagon> pentagons;
  if (!lex.accept("}")) {
    do pentagons.push_back(
        parse_pentagon(read_text_file(base_dir / lex.name("pentagon file"))));
    while (lex.accept(","));
    lex.expect("}");
  }
  lex.expect_word("relations");
  lex.expect("=");
  RelStructure rels =
      parse_structure(read_text_file(base_dir / lex.name("relations file")));
  lex.expect("}");
  lex.expect_end();

  if (rels.universe() != algebra.universe())
    throw ValidationError("relations file '" + rels.name() +
                          "' is not over the algebra's universe");
  std::vector<Relation> d_base;
  for (std::size_t k = 1;; ++k) {
    const auto* r = rels.find_relation(AmalgamPackage::d_symbol(k));
    if (!r) break;
    d_base.push_back(r->relation);
  }
  if (d_base.size() != rels.relations().size())
    throw ValidationError("relations file must hold exactly D1..DN");
  return make_amalgam(name, std::move(algebra), std::move(alpha), std::move(beta),
                      std::move(gamma), std::move(pentagons), std::move(d_base));
}

AmalgamPackage load_amalgam_package(const std::filesystem::path& path) {
  return parse_amalgam_package(read_text_file(path), path.parent_path());
}

}  // namespace ppcomp
