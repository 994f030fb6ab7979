#include "ppcomp/eval.hpp"

#include <algorithm>
#include <map>

#include "csp.hpp"
#include "ppcomp/error.hpp"

namespace ppcomp {

namespace {

void check_variable_budget(const PPFormula& f, const Budget& budget) {
  if (f.num_variables() > budget.max_variables)
    throw BudgetExceeded("formula '" + f.name + "' has " +
                         std::to_string(f.num_variables()) +
                         " variables, guard is " +
                         std::to_string(budget.max_variables));
}

// Shared compilation: variable indices follow formula.variables(); each
// distinct relation symbol is copied once.
template <class Lookup>
std::shared_ptr<const detail::Csp> compile(const PPFormula& f,
                                           std::vector<std::size_t> domains,
                                           Lookup lookup) {
  std::map<std::string, int, std::less<>> index;
  int next = 0;
  for (const auto& v : f.free_vars) index.emplace(v, next++);
  for (const auto& v : f.bound_vars) index.emplace(v, next++);

  std::vector<Relation> relations;
  std::map<std::string, int, std::less<>> rel_index;
  std::vector<detail::Constraint> constraints;
  constraints.reserve(f.atoms.size());
  for (const auto& a : f.atoms) {
    detail::Constraint c;
    c.scope.reserve(a.args.size());
    for (const auto& v : a.args) c.scope.push_back(index.at(v));
    if (!a.is_equality()) {
      auto [it, inserted] =
          rel_index.emplace(a.symbol, static_cast<int>(relations.size()));
      if (inserted) relations.push_back(lookup(a.symbol));
      c.relation = it->second;
    }
    constraints.push_back(std::move(c));
  }
  return std::make_shared<const detail::Csp>(std::move(domains),
                                             f.free_vars.size(),
                                             std::move(relations),
                                             std::move(constraints));
}

std::vector<Assignment> to_assignments(std::vector<Tuple> tuples) {
  return tuples;
}

}  // namespace

std::string format_assignment(const std::vector<std::string>& variables,
                              std::span<const ElemId> values,
                              const std::vector<std::string>& universe) {
  std::string out;
  for (std::size_t i = 0; i < variables.size() && i < values.size(); ++i) {
    if (i) out += ", ";
    out += variables[i] + "=" + universe.at(values[i]);
  }
  return out;
}

Evaluator::Evaluator(const RelStructure& structure, const PPFormula& formula,
                     const Budget& budget)
    : formula_(formula), node_budget_(budget.max_enumeration) {
  validate(formula_, structure.signature());
  check_variable_budget(formula_, budget);
  csp_ = compile(formula_,
                 std::vector<std::size_t>(formula_.num_variables(),
                                          structure.size()),
                 [&](const std::string& symbol) {
                   return structure.find_relation(symbol)->relation;
                 });
}

bool Evaluator::satisfies(std::span<const ElemId> free_values) const {
  return csp_->exists(free_values);
}

std::vector<Assignment> Evaluator::solutions() const {
  return to_assignments(csp_->solutions(node_budget_));
}

bool satisfies(const RelStructure& structure, std::span<const ElemId> f,
               const PPFormula& formula, const Budget& budget) {
  return Evaluator(structure, formula, budget).satisfies(f);
}

std::vector<Assignment> solution_set(const RelStructure& structure,
                                     const PPFormula& formula,
                                     const Budget& budget) {
  return Evaluator(structure, formula, budget).solutions();
}

Relation solution_relation(const RelStructure& structure,
                           const PPFormula& formula, const Budget& budget) {
  return Relation(formula.free_vars.size(), structure.size(),
                  solution_set(structure, formula, budget));
}

namespace {

void require_same_free(const PPFormula& phi, const PPFormula& psi) {
  if (phi.free_vars != psi.free_vars)
    throw ValidationError("formulas '" + phi.name + "' and '" + psi.name +
                          "' have different free variables");
}

// Least element of a \ b (or of the symmetric difference when symmetric),
// both sorted.
std::optional<Assignment> least_difference(const std::vector<Assignment>& a,
                                           const std::vector<Assignment>& b,
                                           bool symmetric) {
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) return a[i];
    if (i == a.size() || b[j] < a[i]) {
      if (symmetric) return b[j];
      ++j;
      continue;
    }
    ++i;
    ++j;
  }
  return std::nullopt;
}

}  // namespace

Verdict decide_ppeq(const RelStructure& structure, const PPFormula& phi,
                    const PPFormula& psi, const Budget& budget) {
  require_same_free(phi, psi);
  auto a = solution_set(structure, phi, budget);
  auto b = solution_set(structure, psi, budget);
  if (auto w = least_difference(a, b, true)) return Verdict::fails({0, *w});
  return Verdict::holds();
}

Verdict decide_ppcon(const RelStructure& structure, const PPFormula& phi,
                     const PPFormula& psi, const Budget& budget) {
  require_same_free(phi, psi);
  auto a = solution_set(structure, phi, budget);
  auto b = solution_set(structure, psi, budget);
  if (auto w = least_difference(a, b, false)) return Verdict::fails({0, *w});
  return Verdict::holds();
}

std::pair<PPFormula, PPFormula> reduce_con_to_eq(const PPFormula& phi,
                                                 const PPFormula& psi) {
  return {phi, conjoin(phi, psi)};
}

SortedEvaluator::SortedEvaluator(const Pentagon2Sorted& structure,
                                 const SortedPPFormula& formula,
                                 const Budget& budget)
    : formula_(formula), node_budget_(budget.max_enumeration) {
  validate(formula_);
  check_variable_budget(formula_.formula, budget);
  std::vector<std::size_t> domains;
  for (Sort s : formula_.sorts)
    domains.push_back(s == Sort::first ? structure.b_names.size()
                                       : structure.c_names.size());
  csp_ = compile(formula_.formula, std::move(domains),
                 [&](const std::string&) { return structure.r; });
}

bool SortedEvaluator::satisfies(std::span<const ElemId> free_values) const {
  return csp_->exists(free_values);
}

std::vector<Assignment> SortedEvaluator::solutions() const {
  return to_assignments(csp_->solutions(node_budget_));
}

bool satisfies_sorted(const Pentagon2Sorted& structure,
                      std::span<const ElemId> f,
                      const SortedPPFormula& formula, const Budget& budget) {
  return SortedEvaluator(structure, formula, budget).satisfies(f);
}

Verdict decide_entailment_sorted(const SortedPPFormula& phi,
                                 const SortedPPFormula& psi,
                                 std::span<const Pentagon2Sorted> structures,
                                 const Budget& budget) {
  require_same_free(phi.formula, psi.formula);
  if (phi.free_sorts() != psi.free_sorts())
    throw ValidationError("formulas '" + phi.formula.name + "' and '" +
                          psi.formula.name +
                          "' assign different sorts to free variables");
  for (std::size_t i = 0; i < structures.size(); ++i) {
    auto a = SortedEvaluator(structures[i], phi, budget).solutions();
    auto b = SortedEvaluator(structures[i], psi, budget).solutions();
    if (auto w = least_difference(a, b, false)) return Verdict::fails({i, *w});
  }
  return Verdict::holds();
}

}  // namespace ppcomp
