#include "csp.hpp"

#include <algorithm>
#include <bit>

#include "ppcomp/error.hpp"

namespace ppcomp::detail {

Csp::Csp(std::vector<std::size_t> domains, std::size_t num_free,
         std::vector<Relation> relations, std::vector<Constraint> constraints)
    : domains_(std::move(domains)),
      num_free_(num_free),
      relations_(std::move(relations)),
      constraints_(std::move(constraints)) {
  for (std::size_t d : domains_)
    if (d > 64)
      throw BudgetExceeded("evaluator supports domains of at most 64 elements");
  by_variable_.resize(domains_.size());
  distinct_scope_.resize(constraints_.size());
  for (std::size_t c = 0; c < constraints_.size(); ++c) {
    auto& vars = distinct_scope_[c];
    vars = constraints_[c].scope;
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    for (int v : vars) by_variable_[v].push_back(static_cast<int>(c));
  }
}

class Search {
 public:
  Search(const Csp& csp, std::uint64_t node_budget)
      : csp_(csp),
        value_(csp.num_variables(), -1),
        domain_(csp.num_variables()),
        open_(csp.constraints_.size()),
        budget_(node_budget) {
    for (std::size_t v = 0; v < domain_.size(); ++v) {
      std::size_t d = csp.domains_[v];
      domain_[v] = d == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << d) - 1;
    }
    for (std::size_t c = 0; c < open_.size(); ++c)
      open_[c] = static_cast<int>(csp.distinct_scope_[c].size());
  }

  // Checks constraints without variables and filters unary ones.
  bool initialize() {
    for (std::size_t c = 0; c < open_.size(); ++c) {
      if (open_[c] == 0 && !holds(static_cast<int>(c))) return false;
      if (open_[c] == 1 && !filter(static_cast<int>(c))) return false;
    }
    return true;
  }

  bool exists_extension() {
    tick();
    // smallest domain; ties go to the variable with most constraints that
    // already touch an assigned variable, which keeps chains contiguous
    int best = -1;
    int best_size = 65;
    int best_links = -1;
    for (std::size_t v = csp_.num_free_; v < value_.size(); ++v) {
      if (value_[v] >= 0) continue;
      const std::uint64_t d = domain_[v];
      if ((d & (d - 1)) == 0) {
        best = static_cast<int>(v);
        best_size = 1;
        break;  // forced, no choice to make
      }
      int size = std::popcount(d);
      if (size > best_size) continue;
      int links = 0;
      for (int c : csp_.by_variable_[v])
        links += open_[c] < static_cast<int>(csp_.distinct_scope_[c].size());
      if (size < best_size || links > best_links) {
        best = static_cast<int>(v);
        best_size = size;
        best_links = links;
      }
    }
    if (best < 0) return true;
    std::uint64_t mask = domain_[best];
    while (mask) {
      int x = std::countr_zero(mask);
      mask &= mask - 1;
      std::size_t mark = trail_.size();
      bool ok = assign(best, x) && exists_extension();
      unassign(best, mark);
      if (ok) return true;
    }
    return false;
  }

  void enumerate(std::size_t v, Tuple& prefix, std::vector<Tuple>& out) {
    if (v == csp_.num_free_) {
      if (exists_extension()) out.push_back(prefix);
      return;
    }
    tick();
    std::uint64_t mask = domain_[v];
    while (mask) {
      int x = std::countr_zero(mask);
      mask &= mask - 1;
      std::size_t mark = trail_.size();
      prefix.push_back(x);
      if (assign(static_cast<int>(v), x)) enumerate(v + 1, prefix, out);
      prefix.pop_back();
      unassign(static_cast<int>(v), mark);
    }
  }

  bool assign(int v, int x) {
    if (!((domain_[v] >> x) & 1)) {
      value_[v] = x;
      for (int c : csp_.by_variable_[v]) --open_[c];
      return false;
    }
    value_[v] = x;
    for (int c : csp_.by_variable_[v]) --open_[c];
    for (int c : csp_.by_variable_[v]) {
      if (open_[c] == 0) {
        if (!holds(c)) return false;
      } else if (open_[c] == 1) {
        if (!filter(c)) return false;
      }
    }
    return true;
  }

  void unassign(int v, std::size_t mark) {
    while (trail_.size() > mark) {
      domain_[trail_.back().first] = trail_.back().second;
      trail_.pop_back();
    }
    for (int c : csp_.by_variable_[v]) ++open_[c];
    value_[v] = -1;
  }

 private:
  void tick() {
    if (++nodes_ > budget_)
      throw BudgetExceeded("search exceeded " + std::to_string(budget_) +
                           " nodes");
  }

  bool holds(int c) {
    const Constraint& con = csp_.constraints_[c];
    if (con.relation < 0) return value_[con.scope[0]] == value_[con.scope[1]];
    scratch_.clear();
    for (int v : con.scope) scratch_.push_back(value_[v]);
    return csp_.relations_[con.relation].contains(scratch_);
  }

  // The single unassigned variable of c keeps only supported values.
  bool filter(int c) {
    int u = -1;
    for (int v : csp_.distinct_scope_[c])
      if (value_[v] < 0) u = v;
    std::uint64_t mask = domain_[u];
    std::uint64_t kept = 0;
    while (mask) {
      int x = std::countr_zero(mask);
      mask &= mask - 1;
      value_[u] = x;
      if (holds(c)) kept |= std::uint64_t{1} << x;
    }
    value_[u] = -1;
    if (kept != domain_[u]) {
      trail_.emplace_back(u, domain_[u]);
      domain_[u] = kept;
    }
    return kept != 0;
  }

  const Csp& csp_;
  std::vector<int> value_;
  std::vector<std::uint64_t> domain_;
  std::vector<int> open_;
  std::vector<std::pair<int, std::uint64_t>> trail_;
  std::vector<ElemId> scratch_;
  std::uint64_t nodes_ = 0;
  std::uint64_t budget_;
};

bool Csp::exists(std::span<const ElemId> free_values) const {
  if (free_values.size() != num_free_)
    throw ValidationError("assignment covers " +
                          std::to_string(free_values.size()) +
                          " variables, formula has " +
                          std::to_string(num_free_) + " free variables");
  Search s(*this, ~std::uint64_t{0});
  if (!s.initialize()) return false;
  for (std::size_t v = 0; v < num_free_; ++v) {
    ElemId x = free_values[v];
    if (x < 0 || static_cast<std::size_t>(x) >= domains_[v])
      throw ValidationError("assignment value out of range");
    if (!s.assign(static_cast<int>(v), x)) return false;
  }
  return s.exists_extension();
}

std::vector<Tuple> Csp::solutions(std::uint64_t node_budget) const {
  Search s(*this, node_budget);
  std::vector<Tuple> out;
  if (!s.initialize()) return out;
  Tuple prefix;
  s.enumerate(0, prefix, out);
  return out;
}

}  // namespace ppcomp::detail
