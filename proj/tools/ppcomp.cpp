// ppcomp: command-line front end for the deciders and reduction pipelines.
//
// Exit codes: 0 yes/pass, 1 no/fail, 2 usage, parse or validation error,
// 3 budget exceeded.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ppcomp/algebra.hpp"
#include "ppcomp/cm_reduction.hpp"
#include "ppcomp/error.hpp"
#include "ppcomp/eval.hpp"
#include "ppcomp/formula.hpp"
#include "ppcomp/io.hpp"
#include "ppcomp/lattice.hpp"
#include "ppcomp/pentagon.hpp"
#include "ppcomp/structure.hpp"
#include "ppcomp/unary_reduction.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace ppcomp;

namespace {

constexpr int kYes = 0, kNo = 1, kInputError = 2, kBudgetError = 3;
constexpr std::size_t kDepthWarning = 4;
constexpr std::size_t kListedTriples = 10;

struct Options {
  std::string format = "text";
  bool witness = false;
  std::string budget_spec;
  bool skip_axiom4 = false;
  Budget budget;
};

struct Report {
  std::string command;
  json inputs = json::object();
  std::string verdict;
  json witness = nullptr;
  json details = json::object();
  std::vector<std::string> lines;
  int exit_code = kYes;

  void say(std::string line) { lines.push_back(std::move(line)); }
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string chomp(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

// A path if it names an existing file, otherwise the literal text.
std::string file_or_text(const std::string& arg) {
  std::error_code ec;
  if (fs::is_regular_file(arg, ec)) return read_text_file(arg);
  return arg;
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

json assignment_json(const std::vector<std::string>& vars,
                     const std::vector<ElemId>& values,
                     const std::vector<std::vector<std::string>>& names) {
  json out = json::object();
  for (std::size_t i = 0; i < vars.size(); ++i) out[vars[i]] = names[i][values[i]];
  return out;
}

std::string assignment_text(const json& a) {
  std::vector<std::string> parts;
  for (const auto& [k, v] : a.items())
    parts.push_back(k + "=" + (v.is_string() ? v.get<std::string>() : v.dump()));
  return join(parts, ", ");
}

void write_output(const fs::path& dir, const std::string& file,
                  const std::string& text, Report& r) {
  fs::create_directories(dir);
  const fs::path p = dir / file;
  write_text_file(p, text);
  r.details["written"].push_back(p.string());
  r.say("wrote " + p.string());
}

std::vector<Pentagon2Sorted> two_sorted(const std::vector<Pentagon>& ps,
                                        bool check_axiom4) {
  std::vector<Pentagon2Sorted> out;
  for (const auto& p : ps)
    out.push_back(pentagon_two_sorted(decompose_pentagon(p, check_axiom4),
                                      "P2_" + p.name));
  return out;
}

// Witness of a sorted entailment as names in the failing structure.
json sorted_witness(const SortedPPFormula& phi, const Witness& w,
                    const std::vector<Pentagon2Sorted>& structures) {
  const auto& s = structures[w.structure];
  std::vector<std::vector<std::string>> names;
  for (Sort sort : phi.free_sorts())
    names.push_back(sort == Sort::first ? s.b_names : s.c_names);
  return json{{"structure", s.name},
              {"assignment", assignment_json(phi.formula.free_vars, w.values, names)}};
}

Verdict sorted_entailment(const SortedPPFormula& phi, const SortedPPFormula& psi,
                          const std::vector<Pentagon2Sorted>& structures,
                          const Options& o, Report& r) {
  Verdict v = decide_entailment_sorted(phi, psi, structures, o.budget);
  if (!v.yes) r.witness = sorted_witness(phi, *v.witness, structures);
  return v;
}

void warn_depth(const LatticeTerm& t) {
  if (t.depth() > kDepthWarning)
    std::cerr << "warning: term " << print_lattice_term(t) << " has depth "
              << t.depth() << " (> " << kDepthWarning
              << "); the sweep may be slow\n";
}

// ---- ppeq / ppcon --------------------------------------------------------

Report cmd_pp(bool equivalence, const std::string& structure_file,
              const std::string& phi_file, const std::string& psi_file,
              const Options& o) {
  Report r;
  r.command = equivalence ? "ppeq" : "ppcon";
  r.inputs = {{"structure", structure_file}, {"phi", phi_file}, {"psi", psi_file}};
  const RelStructure b = parse_structure(read_text_file(structure_file));
  const PPFormula phi = parse_pp_formula(read_text_file(phi_file), b.signature());
  const PPFormula psi = parse_pp_formula(read_text_file(psi_file), b.signature());
  const Verdict v = equivalence ? decide_ppeq(b, phi, psi, o.budget)
                                : decide_ppcon(b, phi, psi, o.budget);
  r.verdict = yes_no(v.yes);
  r.exit_code = v.yes ? kYes : kNo;
  r.say(r.verdict);
  if (!v.yes && o.witness) {
    const auto& values = v.witness->values;
    std::vector<std::vector<std::string>> names(values.size(), b.universe());
    json a = assignment_json(phi.free_vars, values, names);
    const bool in_phi = satisfies(b, values, phi, o.budget);
    r.witness = {{"assignment", a},
                 {"satisfies", in_phi ? phi.name : psi.name},
                 {"fails", in_phi ? psi.name : phi.name}};
    r.say("witness: " + assignment_text(a) + " (satisfies " +
          r.witness["satisfies"].get<std::string>() + ", not " +
          r.witness["fails"].get<std::string>() + ")");
  }
  return r;
}

// ---- entail --------------------------------------------------------------

Report cmd_entail(const std::string& phi_file, const std::string& psi_file,
                  const std::vector<std::string>& pentagon_files,
                  const std::string& amalgam_file, const Options& o) {
  Report r;
  r.command = "entail";
  r.inputs = {{"phi", phi_file}, {"psi", psi_file}};
  std::vector<Pentagon> pentagons;
  if (!amalgam_file.empty()) {
    r.inputs["amalgam"] = amalgam_file;
    pentagons = load_amalgam_package(amalgam_file).pentagons;
  }
  for (const auto& f : pentagon_files) {
    r.inputs["pentagons"].push_back(f);
    pentagons.push_back(parse_pentagon(read_text_file(f)));
  }
  if (pentagons.empty()) throw ValidationError("entail needs --pentagon or --amalgam");
  const SortedPPFormula phi = parse_sorted_formula(read_text_file(phi_file));
  const SortedPPFormula psi = parse_sorted_formula(read_text_file(psi_file));
  const auto structures = two_sorted(pentagons, !o.skip_axiom4);
  const Verdict v = sorted_entailment(phi, psi, structures, o, r);
  r.verdict = yes_no(v.yes);
  r.exit_code = v.yes ? kYes : kNo;
  r.say(r.verdict);
  if (!v.yes && o.witness)
    r.say("witness: " + assignment_text(r.witness["assignment"]) + " in " +
          r.witness["structure"].get<std::string>());
  if (!o.witness) r.witness = nullptr;
  return r;
}

// ---- analyze -------------------------------------------------------------

// First keyword of a file, skipping blanks and # comments.
std::string first_keyword(const std::string& text) {
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    } else if (text[i] == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else {
      break;
    }
  }
  std::size_t j = i;
  while (j < text.size() &&
         (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
    ++j;
  return text.substr(i, j - i);
}

// Triples (alpha, beta, gamma) of the lattice's partitions with alpha < beta
// that satisfy the four pentagon axioms.
struct TripleSearch {
  std::size_t count = 0;
  std::vector<std::array<std::size_t, 3>> listed;
  std::vector<bool> interesting;
};

TripleSearch pentagon_triples(const FiniteLattice& con, const Budget& budget) {
  TripleSearch out;
  const auto& ps = con.partitions();
  const std::size_t n = ps.empty() ? 0 : ps[0].carrier_size();
  const auto zero = EquivRelation::identity(n), one = EquivRelation::full(n);
  std::uint64_t visited = 0;
  for (std::size_t b = 0; b < ps.size(); ++b)
    for (std::size_t g = 0; g < ps.size(); ++g) {
      if (++visited > budget.max_enumeration)
        throw BudgetExceeded("pentagon triple search exceeds the enumeration budget");
      if (meet(ps[b], ps[g]) != zero || compose(ps[b], ps[g]).count() != n * n)
        continue;
      for (std::size_t a = 0; a < ps.size(); ++a) {
        if (a == b || !ps[a].leq(ps[b]) || join_via_product(ps[a], ps[g]) != one)
          continue;
        ++out.count;
        if (out.listed.size() < kListedTriples) {
          out.listed.push_back({a, b, g});
          Pentagon p{"", {}, ps[a], ps[b], ps[g]};
          p.elements.resize(n);
          out.interesting.push_back(
              is_interesting(decompose_pentagon(p)).has_value());
        }
      }
    }
  return out;
}

Report cmd_analyze(const std::string& file, const Options& o) {
  Report r;
  r.command = "analyze";
  r.inputs = {{"file", file}};
  const std::string text = read_text_file(file);
  const std::string kind = first_keyword(text);
  FinAlgebra algebra;
  if (kind == "structure") {
    const RelStructure b = parse_structure(text);
    std::vector<OperationTable> ops;
    std::size_t max_arity = 0;
    json counts = json::object();
    for (std::size_t k = 1; k <= 3; ++k) {
      try {
        auto pol = polymorphisms(b, k, o.budget);
        counts[std::to_string(k)] = pol.size();
        r.say("polymorphisms of arity " + std::to_string(k) + ": " +
              std::to_string(pol.size()));
        ops.insert(ops.end(), pol.begin(), pol.end());
        max_arity = k;
      } catch (const BudgetExceeded&) {
        if (k == 1) throw;
        counts[std::to_string(k)] = nullptr;
        r.say("polymorphisms of arity " + std::to_string(k) + ": over budget");
      }
    }
    r.details["polymorphisms"] = counts;
    r.details["clone_arity"] = max_arity;
    r.say("congruences taken with respect to polymorphisms of arity <= " +
          std::to_string(max_arity));
    algebra = algebra_from_operations(b, ops);
  } else if (kind == "algebra") {
    algebra = parse_algebra(text);
  } else {
    throw ValidationError("analyze expects a structure or algebra file, got '" +
                          kind + "'");
  }

  const auto& names = algebra.universe();
  const FiniteLattice con = congruence_lattice(algebra, o.budget);
  json cons = json::array();
  for (const auto& theta : con.partitions()) cons.push_back(format_partition(theta, names));
  r.details["congruences"] = cons;
  r.say("congruences: " + std::to_string(con.size()));
  for (const auto& c : cons) r.say("  " + c.get<std::string>());

  const auto failure = check_modular_law(con);
  r.verdict = failure ? "non-modular" : "modular";
  r.exit_code = failure ? kNo : kYes;
  r.say(r.verdict);
  if (failure) {
    const auto& [x, y, z] = *failure;
    r.witness = {{"x", cons[x]}, {"y", cons[y]}, {"z", cons[z]}};
    r.say("witness: x=" + cons[x].get<std::string>() + ", y=" +
          cons[y].get<std::string>() + ", z=" + cons[z].get<std::string>());
    r.say("  x v (y ^ z) = " + con.label(con.join(x, con.meet(y, z))) +
          ", y ^ (x v z) = " + con.label(con.meet(y, con.join(x, z))));
  }

  const TripleSearch triples = pentagon_triples(con, o.budget);
  json listed = json::array();
  r.say("pentagon triples: " + std::to_string(triples.count));
  for (std::size_t i = 0; i < triples.listed.size(); ++i) {
    const auto& [a, b, g] = triples.listed[i];
    listed.push_back({{"alpha", cons[a]},
                      {"beta", cons[b]},
                      {"gamma", cons[g]},
                      {"interesting", static_cast<bool>(triples.interesting[i])}});
    r.say("  alpha=" + cons[a].get<std::string>() + " beta=" +
          cons[b].get<std::string>() + " gamma=" + cons[g].get<std::string>() +
          (triples.interesting[i] ? " (interesting)" : ""));
  }
  if (triples.count > triples.listed.size())
    r.say("  ... " + std::to_string(triples.count - triples.listed.size()) + " more");
  r.details["pentagon_triples"] = {{"count", triples.count}, {"listed", listed}};
  return r;
}

// ---- reduce --------------------------------------------------------------

struct ReduceArgs {
  std::string package, first, second, out;
  std::vector<std::string> pentagons;
  bool verify = false;
};

std::string stem(const std::string& path) { return fs::path(path).stem().string(); }

void finish_verify(Report& r, bool verified, const std::vector<std::string>& problems) {
  if (!verified) {
    r.verdict = "done";
    return;
  }
  r.details["counterexamples"] = problems;
  r.verdict = problems.empty() ? "pass" : "fail";
  r.exit_code = problems.empty() ? kYes : kNo;
  r.say("verification: " + r.verdict);
  for (const auto& p : problems) r.say("  " + p);
}

Report cmd_reduce_lemma1(const ReduceArgs& a, const Options& o) {
  Report r;
  r.command = "reduce lemma1";
  r.inputs = {{"package", a.package}, {"phi", a.first}, {"psi", a.second}};
  const UnaryTypePackage pkg = load_unary_package(a.package, o.budget);
  const Signature sig = pkg.boolean.signature();
  const PPFormula phi = parse_pp_formula(read_text_file(a.first), sig);
  const PPFormula psi = parse_pp_formula(read_text_file(a.second), sig);
  const auto [phi2, psi2] = theorem5_reduce(phi, psi, pkg);
  r.say(chomp(print_formula(phi2)));
  r.say(chomp(print_formula(psi2)));
  if (!a.out.empty()) {
    write_output(a.out, stem(a.first) + ".lemma1.pp", print_formula(phi2), r);
    write_output(a.out, stem(a.second) + ".lemma1.pp", print_formula(psi2), r);
    write_output(a.out, pkg.target.name() + ".struct", print_structure(pkg.target), r);
  }
  const bool source = decide_ppcon(pkg.boolean, phi, psi, o.budget).yes;
  const bool target = decide_ppcon(pkg.target, phi2, psi2, o.budget).yes;
  r.details["ppcon_source"] = yes_no(source);
  r.details["ppcon_target"] = yes_no(target);
  r.say("containment over " + pkg.boolean.name() + ": " + yes_no(source));
  r.say("containment over " + pkg.target.name() + ": " + yes_no(target));

  std::vector<std::string> problems;
  if (a.verify) {
    if (source != target) problems.push_back("containment verdicts differ");
    for (const PPFormula* f : {&phi, &psi}) {
      const Prop10Report rep = verify_prop10(pkg, *f, o.budget);
      r.details["checked"][f->name] = {{"boolean", rep.boolean_checked},
                                       {"closure", rep.closure_size}};
      for (const auto& c : rep.counterexamples) problems.push_back(f->name + ": " + c);
    }
  }
  finish_verify(r, a.verify, problems);
  return r;
}

Report cmd_reduce_thm15(const ReduceArgs& a, const Options& o) {
  Report r;
  r.command = "reduce thm15";
  r.inputs = {{"pentagons", a.pentagons}, {"t", a.first}, {"t_prime", a.second}};
  if (a.pentagons.empty()) throw ValidationError("thm15 needs at least one --pentagon");
  std::vector<Pentagon> pentagons;
  for (const auto& f : a.pentagons) pentagons.push_back(parse_pentagon(read_text_file(f)));
  const LatticeTerm t = parse_lattice_term(file_or_text(a.first));
  const LatticeTerm t2 = parse_lattice_term(file_or_text(a.second));
  warn_depth(t);
  warn_depth(t2);
  const auto structures = two_sorted(pentagons, !o.skip_axiom4);
  const auto [phi, psi] = theorem15_reduce(t, t2, pentagons);
  r.say(chomp(print_sorted_formula(phi)));
  r.say(chomp(print_sorted_formula(psi)));
  if (!a.out.empty()) {
    write_output(a.out, phi.formula.name + ".sorted", print_sorted_formula(phi), r);
    write_output(a.out, psi.formula.name + ".sorted", print_sorted_formula(psi), r);
  }
  r.details["size"] = {phi.formula.size(), psi.formula.size()};
  const Verdict entails = sorted_entailment(phi, psi, structures, o, r);
  r.details["entailment"] = yes_no(entails.yes);
  r.say("entailment: " + yes_no(entails.yes));
  if (!entails.yes && o.witness)
    r.say("witness: " + assignment_text(r.witness["assignment"]) + " in " +
          r.witness["structure"].get<std::string>());
  if (!o.witness) r.witness = nullptr;

  std::vector<std::string> problems;
  if (a.verify) {
    for (std::size_t i = 0; i < pentagons.size(); ++i) {
      const auto d = decompose_pentagon(pentagons[i], !o.skip_axiom4);
      const FiniteLattice kp = sublattice_generated(d.alphas);
      std::vector<std::size_t> gens(d.alphas.size());
      for (std::size_t g = 0; g < gens.size(); ++g) gens[g] = g;
      const std::vector<FiniteLattice> lattices{kp};
      const bool ineq = decide_term_ineq(t, t2, lattices, {gens}, o.budget).yes;
      const std::vector<Pentagon2Sorted> one{structures[i]};
      const bool ent = decide_entailment_sorted(phi, psi, one, o.budget).yes;
      if (ineq != ent)
        problems.push_back(pentagons[i].name + ": term inequality " + yes_no(ineq) +
                           " but entailment " + yes_no(ent));
      for (const LatticeTerm* term : {&t, &t2}) {
        const auto rep = verify_property_star(*term, pentagons[i], o.budget);
        for (const auto& c : rep.counterexamples)
          problems.push_back(pentagons[i].name + ": " + c);
      }
    }
  }
  finish_verify(r, a.verify, problems);
  return r;
}

Report cmd_reduce_thm11(const ReduceArgs& a, const Options& o) {
  Report r;
  r.command = "reduce thm11";
  r.inputs = {{"amalgam", a.package}, {"phi", a.first}, {"psi", a.second}};
  const AmalgamPackage pkg = load_amalgam_package(a.package);
  require_valid_amalgam(pkg, o.budget);
  const SortedPPFormula phi = parse_sorted_formula(read_text_file(a.first));
  const SortedPPFormula psi = parse_sorted_formula(read_text_file(a.second));
  const auto [phi2, psi2] = theorem11_reduce(phi, psi, pkg);
  r.say(chomp(print_formula(phi2)));
  r.say(chomp(print_formula(psi2)));
  if (!a.out.empty()) {
    write_output(a.out, stem(a.first) + ".thm11.pp", print_formula(phi2), r);
    write_output(a.out, stem(a.second) + ".thm11.pp", print_formula(psi2), r);
    write_output(a.out, pkg.target.name() + ".struct", print_structure(pkg.target), r);
  }
  const auto structures = two_sorted_structures(pkg);
  const bool entails = sorted_entailment(phi, psi, structures, o, r).yes;
  if (!entails && o.witness)
    r.say("witness: " + assignment_text(r.witness["assignment"]) + " in " +
          r.witness["structure"].get<std::string>());
  if (!o.witness) r.witness = nullptr;
  const bool target = decide_ppcon(pkg.target, phi2, psi2, o.budget).yes;
  r.details["entailment"] = yes_no(entails);
  r.details["ppcon_target"] = yes_no(target);
  r.say("entailment over the pentagons: " + yes_no(entails));
  r.say("containment over " + pkg.target.name() + ": " + yes_no(target));

  std::vector<std::string> problems;
  if (a.verify) {
    if (entails != target) problems.push_back("entailment and containment verdicts differ");
    for (const SortedPPFormula* f : {&phi, &psi}) {
      const MatchingReport rep = verify_matching_claim(pkg, *f, o.budget);
      r.details["checked"][f->formula.name] = {{"forward", rep.forward_checked},
                                               {"backward", rep.backward_checked}};
      for (const auto& c : rep.counterexamples)
        problems.push_back(f->formula.name + ": " + c);
    }
  }
  finish_verify(r, a.verify, problems);
  return r;
}

// ---- dnf -----------------------------------------------------------------

Report cmd_dnf(const std::string& input, const Options& o) {
  Report r;
  r.command = "dnf";
  r.inputs = {{"formula", input}};
  const DNFFormula phi = parse_dnf(file_or_text(input));
  const Verdict v = decide_dnf_tautology(phi, o.budget);
  r.verdict = yes_no(v.yes);
  r.exit_code = v.yes ? kYes : kNo;
  r.say(r.verdict);
  if (!v.yes && o.witness) {
    const auto vars = phi.variables();
    json a = json::object();
    for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = v.witness->values[i];
    r.witness = {{"assignment", a}};
    r.say("witness: " + assignment_text(a));
  }
  return r;
}

// ---- latineq -------------------------------------------------------------

struct LatticeArgs {
  std::string t, t_prime;
  std::vector<std::size_t> chains;
  std::vector<std::string> pentagons, algebras;
  bool generators = false;
};

Report cmd_latineq(const LatticeArgs& a, const Options& o) {
  Report r;
  r.command = "latineq";
  r.inputs = {{"t", a.t}, {"t_prime", a.t_prime}};
  const LatticeTerm t = parse_lattice_term(file_or_text(a.t));
  const LatticeTerm t2 = parse_lattice_term(file_or_text(a.t_prime));
  warn_depth(t);
  warn_depth(t2);

  std::vector<FiniteLattice> lattices;
  std::vector<std::string> lattice_names;
  std::vector<std::optional<std::vector<std::size_t>>> restrict_to;
  // element names used to print partition elements, per lattice
  std::vector<std::vector<std::string>> element_names;
  for (std::size_t n : a.chains) {
    if (n == 0) throw ValidationError("chain length must be positive");
    r.inputs["chains"].push_back(n);
    lattices.push_back(FiniteLattice::chain(n));
    lattice_names.push_back("chain" + std::to_string(n));
    restrict_to.emplace_back();
    element_names.emplace_back();
  }
  for (const auto& f : a.pentagons) {
    r.inputs["pentagons"].push_back(f);
    const Pentagon p = parse_pentagon(read_text_file(f));
    const auto d = decompose_pentagon(p, !o.skip_axiom4);
    lattices.push_back(sublattice_generated(d.alphas));
    lattice_names.push_back("K_" + p.name);
    std::vector<std::string> cs;
    for (std::size_t c = 0; c < d.c_size(); ++c) cs.push_back("c" + std::to_string(c + 1));
    element_names.push_back(cs);
    if (a.generators) {
      std::vector<std::size_t> gens(d.alphas.size());
      for (std::size_t g = 0; g < gens.size(); ++g) gens[g] = g;
      restrict_to.emplace_back(gens);
    } else {
      restrict_to.emplace_back();
    }
  }
  for (const auto& f : a.algebras) {
    r.inputs["algebras"].push_back(f);
    const FinAlgebra alg = parse_algebra(read_text_file(f));
    lattices.push_back(congruence_lattice(alg, o.budget));
    lattice_names.push_back("Con_" + alg.name());
    element_names.push_back(alg.universe());
    restrict_to.emplace_back();
  }
  if (lattices.empty())
    throw ValidationError("latineq needs --chain, --pentagon or --algebra");
  r.inputs["generators_only"] = a.generators;

  const Verdict v = decide_term_ineq(t, t2, lattices, restrict_to, o.budget);
  r.verdict = yes_no(v.yes);
  r.exit_code = v.yes ? kYes : kNo;
  r.say(r.verdict);
  if (!v.yes && o.witness) {
    const std::size_t l = v.witness->structure;
    const auto vars = shared_variables(t, t2);
    json asg = json::object();
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const auto e = static_cast<std::size_t>(v.witness->values[i]);
      asg[vars[i]] = lattices[l].partitions().empty()
                         ? lattices[l].label(e)
                         : format_partition(lattices[l].partitions()[e], element_names[l]);
    }
    r.witness = {{"lattice", lattice_names[l]}, {"assignment", asg}};
    r.say("witness: " + assignment_text(asg) + " in " + lattice_names[l]);
  }
  return r;
}

// ---- validate ------------------------------------------------------------

Report cmd_validate(const std::string& file, const std::string& structure_file,
                    const Options& o) {
  Report r;
  r.command = "validate";
  r.inputs = {{"file", file}};
  const std::string text = read_text_file(file);
  const std::string kind = first_keyword(text);
  std::vector<std::string> problems;
  r.details["kind"] = kind;
  try {
    if (kind == "structure") {
      const RelStructure s = parse_structure(text);
      r.say("structure " + s.name() + ": " + std::to_string(s.size()) + " elements, " +
            std::to_string(s.relations().size()) + " relations");
    } else if (kind == "algebra") {
      const FinAlgebra alg = parse_algebra(text);
      r.say("algebra " + alg.name() + ": " + std::to_string(alg.size()) + " elements, " +
            std::to_string(alg.operations().size()) + " operations");
    } else if (kind == "pentagon") {
      const Pentagon p = parse_pentagon(text);
      if (auto axiom = validate_pentagon(p, !o.skip_axiom4)) {
        problems.push_back("violates axiom " + std::to_string(*axiom));
      } else {
        const auto d = decompose_pentagon(p, !o.skip_axiom4);
        const auto pair = is_interesting(d);
        r.details["b_size"] = d.b_size();
        r.details["c_size"] = d.c_size();
        r.details["interesting"] = pair.has_value();
        r.say("pentagon " + p.name + ": |B| = " + std::to_string(d.b_size()) +
              ", |C| = " + std::to_string(d.c_size()) +
              (pair ? ", interesting (blocks " + std::to_string(pair->first) + " < " +
                          std::to_string(pair->second) + ")"
                    : ", not interesting"));
      }
    } else if (kind == "package") {
      const UnaryTypePackage pkg = load_unary_package(file, o.budget);
      r.say("package " + pkg.name + ": k = " + std::to_string(pkg.k()) + ", " +
            std::to_string(pkg.d.size()) + " D relations");
    } else if (kind == "amalgam") {
      const AmalgamPackage pkg = load_amalgam_package(file);
      problems = validate_amalgam(pkg, o.budget).failures;
      if (problems.empty())
        r.say("amalgam " + pkg.name + ": " + std::to_string(pkg.pentagons.size()) +
              " pentagons, N = " + std::to_string(pkg.cutoff));
    } else if (text.find(":=") != std::string::npos) {
      if (text.find('@') != std::string::npos) {
        const SortedPPFormula f = parse_sorted_formula(text);
        r.details["kind"] = "sorted formula";
        r.say("sorted formula " + f.formula.name + ": size " +
              std::to_string(f.formula.size()));
      } else {
        r.details["kind"] = "formula";
        const PPFormula f =
            structure_file.empty()
                ? parse_pp_formula(text)
                : parse_pp_formula(
                      text, parse_structure(read_text_file(structure_file)).signature());
        r.say("formula " + f.name + ": size " + std::to_string(f.size()));
      }
    } else {
      throw ValidationError("unrecognised file kind '" + kind + "'");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const ValidationError& e) {
    problems.push_back(e.what());
  }
  r.details["problems"] = problems;
  r.verdict = problems.empty() ? "valid" : "invalid";
  r.exit_code = problems.empty() ? kYes : kNo;
  r.lines.insert(r.lines.begin(), r.verdict);
  for (const auto& p : problems) r.say("  - " + p);
  return r;
}

// ---- output --------------------------------------------------------------

void emit(const Report& r, const Options& o, double ms) {
  if (o.format == "json") {
    json out;
    out["schema"] = "ppcomp/1";
    out["command"] = r.command;
    out["inputs"] = r.inputs;
    out["verdict"] = r.verdict;
    out["witness"] = r.witness;
    out["details"] = r.details;
    out["exit_code"] = r.exit_code;
    out["timing_ms"] = std::round(ms * 1000.0) / 1000.0;
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& line : r.lines) std::cout << line << "\n";
  }
}

void emit_error(const std::string& command, const std::string& cls,
                const std::string& message, int code, const Options& o) {
  std::cerr << "error: " << message << "\n";
  if (o.format != "json") return;
  json out;
  out["schema"] = "ppcomp/1";
  out["command"] = command;
  out["verdict"] = "error";
  out["error"] = {{"class", cls}, {"message", message}};
  out["exit_code"] = code;
  std::cout << out.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision procedures and reductions for primitive positive formulas"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--witness", o.witness, "Print the least counterexample of a no");
  app.add_option("--budget", o.budget_spec,
                 "Guard overrides: N or vars=,enum=,dnf=,carrier=");
  app.add_flag("--skip-axiom4", o.skip_axiom4, "Do not check pentagon axiom 4");

  std::string structure, phi, psi, amalgam, file;
  std::vector<std::string> pentagons;

  auto* ppeq = app.add_subcommand("ppeq", "Do two formulas define the same relation?");
  auto* ppcon = app.add_subcommand("ppcon", "Is the first relation contained in the second?");
  for (auto* sub : {ppeq, ppcon}) {
    sub->add_option("structure", structure, "Structure file")->required()->check(CLI::ExistingFile);
    sub->add_option("phi", phi, "Formula file")->required()->check(CLI::ExistingFile);
    sub->add_option("psi", psi, "Formula file")->required()->check(CLI::ExistingFile);
  }

  auto* entail = app.add_subcommand("entail", "Two-sorted entailment over pentagon structures");
  entail->add_option("phi", phi, "Sorted formula file")->required()->check(CLI::ExistingFile);
  entail->add_option("psi", psi, "Sorted formula file")->required()->check(CLI::ExistingFile);
  entail->add_option("--pentagon", pentagons, "Pentagon file")->allow_extra_args(false)->check(CLI::ExistingFile);
  entail->add_option("--amalgam", amalgam, "Use the pentagons of an amalgam package")
      ->check(CLI::ExistingFile);

  auto* analyze = app.add_subcommand("analyze", "Polymorphisms and congruence lattice");
  analyze->add_option("file", file, "Structure or algebra file")->required()->check(CLI::ExistingFile);

  ReduceArgs ra;
  auto* reduce = app.add_subcommand("reduce", "Run a reduction pipeline");
  reduce->require_subcommand(1);
  reduce->fallthrough();
  auto* lemma1 = reduce->add_subcommand("lemma1", "Boolean structure -> unary-type target");
  lemma1->add_option("--package", ra.package, "Unary package file")->required()->check(CLI::ExistingFile);
  auto* thm15 = reduce->add_subcommand("thm15", "Lattice terms -> two-sorted formulas");
  thm15->add_option("--pentagon", ra.pentagons, "Pentagon file")->required()->allow_extra_args(false)->check(CLI::ExistingFile);
  auto* thm11 = reduce->add_subcommand("thm11", "Two-sorted formulas -> amalgam target");
  thm11->add_option("--amalgam", ra.package, "Amalgam package file")->required()->check(CLI::ExistingFile);
  for (auto* sub : {lemma1, thm15, thm11}) {
    sub->fallthrough();
    sub->add_option("first", ra.first, "First formula or term")->required();
    sub->add_option("second", ra.second, "Second formula or term")->required();
    sub->add_option("-o,--out", ra.out, "Directory for emitted files");
    sub->add_flag("--verify", ra.verify, "Check the reduction by brute force");
  }

  std::string dnf_input;
  auto* dnf = app.add_subcommand("dnf", "Is a DNF formula a tautology?");
  dnf->add_option("formula", dnf_input, "DNF file or text")->required();

  LatticeArgs la;
  auto* latineq = app.add_subcommand("latineq", "Does t <= t' hold in the given lattices?");
  latineq->add_option("t", la.t, "Term file or text")->required();
  latineq->add_option("t_prime", la.t_prime, "Term file or text")->required();
  latineq->add_option("--chain", la.chains, "Chain of the given length")->allow_extra_args(false);
  latineq->add_option("--pentagon", la.pentagons, "Lattice K_P of a pentagon file")
      ->allow_extra_args(false)
      ->check(CLI::ExistingFile);
  latineq->add_option("--algebra", la.algebras, "Congruence lattice of an algebra file")
      ->allow_extra_args(false)
      ->check(CLI::ExistingFile);
  latineq->add_flag("--generators", la.generators,
                    "Restrict K_P assignments to its generators");

  auto* validate_cmd = app.add_subcommand("validate", "Check an input file");
  validate_cmd->add_option("file", file, "Input file")->required()->check(CLI::ExistingFile);
  validate_cmd->add_option("--structure", structure, "Signature for a formula file")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  std::string command = app.get_subcommands().front()->get_name();
  if (command == "reduce") command += " " + reduce->get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  try {
    o.budget = Budget::from_env();
    if (!o.budget_spec.empty()) o.budget = o.budget.with_overrides(o.budget_spec);
    Report r;
    if (*ppeq || *ppcon) r = cmd_pp(bool(*ppeq), structure, phi, psi, o);
    else if (*entail) r = cmd_entail(phi, psi, pentagons, amalgam, o);
    else if (*analyze) r = cmd_analyze(file, o);
    else if (*lemma1) r = cmd_reduce_lemma1(ra, o);
    else if (*thm15) r = cmd_reduce_thm15(ra, o);
    else if (*thm11) r = cmd_reduce_thm11(ra, o);
    else if (*dnf) r = cmd_dnf(dnf_input, o);
    else if (*latineq) r = cmd_latineq(la, o);
    else r = cmd_validate(file, structure, o);
    const std::chrono::duration<double, std::milli> ms =
        std::chrono::steady_clock::now() - start;
    emit(r, o, ms.count());
    return r.exit_code;
  } catch (const BudgetExceeded& e) {
    emit_error(command, "budget", e.what(), kBudgetError, o);
    return kBudgetError;
  } catch (const ParseError& e) {
    emit_error(command, "parse", e.what(), kInputError, o);
    return kInputError;
  } catch (const ValidationError& e) {
    emit_error(command, "validation", e.what(), kInputError, o);
    return kInputError;
  } catch (const Error& e) {
    emit_error(command, "input", e.what(), kInputError, o);
    return kInputError;
  } catch (const fs::filesystem_error& e) {
    emit_error(command, "input", e.what(), kInputError, o);
    return kInputError;
  }
}
