#include "ppcomp/formula.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "lexer.hpp"
#include "ppcomp/error.hpp"

namespace ppcomp {

Atom Atom::equality(std::string lhs, std::string rhs) {
  return Atom{"", {std::move(lhs), std::move(rhs)}};
}

Atom Atom::relation(std::string symbol, std::vector<std::string> args) {
  return Atom{std::move(symbol), std::move(args)};
}

std::vector<std::string> PPFormula::variables() const {
  std::vector<std::string> all = free_vars;
  all.insert(all.end(), bound_vars.begin(), bound_vars.end());
  return all;
}

std::size_t PPFormula::size() const noexcept {
  std::size_t n = bound_vars.size();
  for (const auto& a : atoms) n += 1 + a.args.size();
  return n;
}

Sort SortedPPFormula::sort_of(std::string_view variable) const {
  std::size_t i = 0;
  for (const auto& v : formula.free_vars) {
    if (v == variable) return sorts.at(i);
    ++i;
  }
  for (const auto& v : formula.bound_vars) {
    if (v == variable) return sorts.at(i);
    ++i;
  }
  throw ValidationError("undeclared variable '" + std::string(variable) + "'");
}

std::vector<Sort> SortedPPFormula::free_sorts() const {
  return {sorts.begin(),
          sorts.begin() + static_cast<std::ptrdiff_t>(formula.free_vars.size())};
}

void check_variables(const PPFormula& f) {
  std::set<std::string> free(f.free_vars.begin(), f.free_vars.end());
  if (free.size() != f.free_vars.size())
    throw ValidationError("duplicate free variable in '" + f.name + "'");
  std::set<std::string> bound;
  for (const auto& v : f.bound_vars) {
    if (free.count(v))
      throw ValidationError("variable '" + v + "' is both free and bound");
    if (!bound.insert(v).second)
      throw ValidationError("duplicate bound variable '" + v + "'");
  }
  for (const auto& a : f.atoms)
    for (const auto& v : a.args)
      if (!free.count(v) && !bound.count(v))
        throw ValidationError("undeclared variable '" + v + "' in '" + f.name +
                              "'");
}

void validate(const PPFormula& f, const Signature& signature) {
  check_variables(f);
  for (const auto& a : f.atoms) {
    if (a.is_equality()) {
      if (a.args.size() != 2)
        throw ValidationError("equality atom needs two arguments");
      continue;
    }
    auto it = std::find_if(signature.begin(), signature.end(),
                           [&](const auto& s) { return s.first == a.symbol; });
    if (it == signature.end())
      throw ValidationError("unknown relation symbol '" + a.symbol + "'");
    if (it->second != a.args.size())
      throw ValidationError("arity mismatch for '" + a.symbol + "': expected " +
                            std::to_string(it->second) + ", got " +
                            std::to_string(a.args.size()));
  }
}

void validate(const SortedPPFormula& sf) {
  validate(sf.formula, Signature{{std::string(kSortedSymbol), 3}});
  if (sf.sorts.size() != sf.formula.num_variables())
    throw ValidationError("sort table does not cover the variables");
  for (const auto& a : sf.formula.atoms) {
    if (a.is_equality()) {
      if (sf.sort_of(a.args[0]) != sf.sort_of(a.args[1]))
        throw ValidationError("equality between variables of different sorts: " +
                              a.args[0] + " = " + a.args[1]);
      continue;
    }
    if (sf.sort_of(a.args[0]) != Sort::first ||
        sf.sort_of(a.args[1]) != Sort::second ||
        sf.sort_of(a.args[2]) != Sort::second)
      throw ValidationError("R-atom must have sort pattern (1, 2, 2)");
  }
}

namespace {

using detail::Lexer;

struct RawFormula {
  PPFormula formula;
  std::vector<Sort> sorts;
};

std::string variable_name(Lexer& lex) {
  const auto& t = lex.peek();
  if (t.kind != detail::TokenKind::word) lex.fail("expected variable");
  return lex.next().text;
}

Sort parse_sort(Lexer& lex) {
  lex.expect("@");
  std::size_t s = lex.natural("sort 1 or 2");
  if (s != 1 && s != 2) lex.fail("sort must be 1 or 2");
  return s == 1 ? Sort::first : Sort::second;
}

RawFormula parse_raw(std::string_view text, bool sorted) {
  Lexer lex(text, detail::WordStyle::identifier);
  RawFormula raw;
  PPFormula& f = raw.formula;
  lex.accept_word("formula");
  f.name = variable_name(lex);
  lex.expect("(");
  std::vector<Sort> free_sorts, bound_sorts;
  if (!lex.accept(")")) {
    do {
      auto at = lex.peek();
      std::string v = variable_name(lex);
      if (v.starts_with(kReservedPrefix))
        throw ValidationError(std::to_string(at.line) + ":" +
                              std::to_string(at.column) + ": free variable '" +
                              v + "' uses the reserved prefix '_'");
      f.free_vars.push_back(v);
      if (sorted) free_sorts.push_back(parse_sort(lex));
    } while (lex.accept(","));
    lex.expect(")");
  }
  lex.expect(":=");
  if (lex.accept_word("exists")) {
    do {
      f.bound_vars.push_back(variable_name(lex));
      if (sorted) bound_sorts.push_back(parse_sort(lex));
    } while (lex.accept(","));
    lex.expect(".");
  }
  bool first = true;
  for (;;) {
    if (!first && !lex.accept("&")) break;
    first = false;
    auto at = lex.peek();
    std::string head = variable_name(lex);
    if (lex.accept("(")) {
      std::vector<std::string> args;
      if (!lex.accept(")")) {
        do args.push_back(variable_name(lex));
        while (lex.accept(","));
        lex.expect(")");
      }
      f.atoms.push_back(Atom::relation(head, std::move(args)));
    } else if (lex.accept("=")) {
      f.atoms.push_back(Atom::equality(head, variable_name(lex)));
    } else if (head == "true") {
      // empty conjunct
    } else {
      throw ParseError("expected '(' or '=' after '" + head + "'", at.line,
                       at.column);
    }
  }
  lex.expect_end();
  check_variables(f);
  if (sorted) {
    raw.sorts = free_sorts;
    raw.sorts.insert(raw.sorts.end(), bound_sorts.begin(), bound_sorts.end());
  }
  return raw;
}

std::string ident(const std::string& s) {
  return detail::quote_if_needed(s, detail::WordStyle::identifier);
}

std::string print_raw(const PPFormula& f, const std::vector<Sort>* sorts) {
  std::string out = "formula " + ident(f.name) + "(";
  std::size_t i = 0;
  auto var = [&](const std::string& v) {
    std::string s = ident(v);
    if (sorts) s += (*sorts)[i] == Sort::first ? "@1" : "@2";
    ++i;
    return s;
  };
  for (std::size_t j = 0; j < f.free_vars.size(); ++j) {
    if (j) out += ", ";
    out += var(f.free_vars[j]);
  }
  out += ") :=";
  if (!f.bound_vars.empty()) {
    out += " exists ";
    for (std::size_t j = 0; j < f.bound_vars.size(); ++j) {
      if (j) out += ", ";
      out += var(f.bound_vars[j]);
    }
    out += " .";
  }
  if (f.atoms.empty()) out += " true";
  for (std::size_t j = 0; j < f.atoms.size(); ++j) {
    const Atom& a = f.atoms[j];
    out += j ? " & " : " ";
    if (a.is_equality()) {
      out += ident(a.args[0]) + " = " + ident(a.args[1]);
    } else {
      out += ident(a.symbol) + "(";
      for (std::size_t k = 0; k < a.args.size(); ++k) {
        if (k) out += ",";
        out += ident(a.args[k]);
      }
      out += ")";
    }
  }
  out += "\n";
  return out;
}

}  // namespace

PPFormula parse_pp_formula(std::string_view text, const Signature& signature) {
  PPFormula f = parse_raw(text, false).formula;
  validate(f, signature);
  return f;
}

PPFormula parse_pp_formula(std::string_view text) {
  return parse_raw(text, false).formula;
}

std::string print_formula(const PPFormula& f) { return print_raw(f, nullptr); }

SortedPPFormula parse_sorted_formula(std::string_view text) {
  RawFormula raw = parse_raw(text, true);
  SortedPPFormula sf{std::move(raw.formula), std::move(raw.sorts)};
  validate(sf);
  return sf;
}

std::string print_sorted_formula(const SortedPPFormula& f) {
  return print_raw(f.formula, &f.sorts);
}

std::string fresh_name(std::string_view stem,
                       const std::vector<std::string>& taken) {
  for (std::size_t n = 0;; ++n) {
    std::string candidate = std::string(stem) + std::to_string(n);
    if (std::find(taken.begin(), taken.end(), candidate) == taken.end())
      return candidate;
  }
}

PPFormula conjoin(const PPFormula& phi, const PPFormula& psi) {
  if (phi.free_vars != psi.free_vars)
    throw ValidationError("conjoin: free variables of '" + phi.name +
                          "' and '" + psi.name + "' differ");
  PPFormula out = phi;
  std::vector<std::string> taken = phi.variables();
  for (const auto& v : psi.bound_vars) taken.push_back(v);
  std::map<std::string, std::string> renaming;
  for (const auto& v : psi.bound_vars) {
    std::string fresh = fresh_name(std::string(kReservedPrefix) + "q", taken);
    taken.push_back(fresh);
    renaming[v] = fresh;
    out.bound_vars.push_back(fresh);
  }
  for (Atom a : psi.atoms) {
    for (auto& v : a.args)
      if (auto it = renaming.find(v); it != renaming.end()) v = it->second;
    out.atoms.push_back(std::move(a));
  }
  return out;
}

PPFormula power_flatten_formula(const PPFormula& f, std::size_t k) {
  if (k == 0) throw ValidationError("power exponent must be positive");
  check_variables(f);
  auto split = [k](const std::string& v) {
    std::vector<std::string> parts;
    for (std::size_t i = 1; i <= k; ++i)
      parts.push_back(v + "_" + std::to_string(i));
    return parts;
  };
  PPFormula out;
  out.name = f.name;
  for (const auto& v : f.free_vars)
    for (auto& p : split(v)) out.free_vars.push_back(std::move(p));
  for (const auto& v : f.bound_vars)
    for (auto& p : split(v)) out.bound_vars.push_back(std::move(p));
  for (const auto& a : f.atoms) {
    if (a.is_equality()) {
      auto l = split(a.args[0]);
      auto r = split(a.args[1]);
      for (std::size_t i = 0; i < k; ++i)
        out.atoms.push_back(Atom::equality(l[i], r[i]));
    } else {
      std::vector<std::string> args;
      for (const auto& v : a.args)
        for (auto& p : split(v)) args.push_back(std::move(p));
      out.atoms.push_back(Atom::relation(a.symbol, std::move(args)));
    }
  }
  // v_i may coincide with a user variable literally named v_i.
  check_variables(out);
  return out;
}

}  // namespace ppcomp
