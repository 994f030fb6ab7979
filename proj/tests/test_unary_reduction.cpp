#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "ppcomp/error.hpp"
#include "ppcomp/eval.hpp"
#include "ppcomp/reference.hpp"
#include "ppcomp/unary_reduction.hpp"

using namespace ppcomp;

namespace {

RelStructure boolean(const std::string& tuples) {
  return parse_structure("structure C { universe={0,1} relation C1/2={" + tuples + "} }");
}

}  // namespace

TEST_CASE("build_package on the 3-element pure set") {
  const UnaryTypePackage pkg =
      build_package("eq", reference::pure_set(3), {0, 1}, boolean("(0,0),(1,1)"));
  CHECK(pkg.k() == 3);
  REQUIRE(pkg.d.size() == 1);
  CHECK(pkg.d[0].tuples() == std::vector<Tuple>{{0, 0}, {1, 1}, {2, 2}});
  REQUIRE(pkg.e.size() == 3);
  CHECK(pkg.e[0] == Relation::full(1, 3));
  CHECK(pkg.e[1].tuples() == std::vector<Tuple>{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 2}});
  CHECK(pkg.target.relations().size() == 4);
  CHECK(pkg.target.find_relation("D1"));
  CHECK(pkg.target.find_relation("E3"));
}

TEST_CASE("build_package rejects bad packages") {
  // the swap 0 <-> 1 maps (0,1) in le to (1,0), which is not in le
  FinAlgebra swap("S", {"0", "1", "2"});
  swap.add_operation("s", OperationTable(1, 3, {1, 0, 2}));
  try {
    build_package("bad", swap, {0, 1}, reference::boolean_le());
    FAIL("expected a validation failure");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("le") != std::string::npos);
  }
  // mapping everything to 0 is harmless: every image is a constant tuple
  FinAlgebra zero("Z", {"0", "1", "2"});
  zero.add_operation("z", OperationTable(1, 3, {0, 0, 0}));
  CHECK_NOTHROW(build_package("zero", zero, {0, 1}, reference::boolean_le()));

  CHECK_THROWS_AS(build_package("x", reference::pure_set(3), {1, 1}, reference::boolean_le()),
                  ValidationError);
  CHECK_THROWS_AS(build_package("x", reference::pure_set(3), {0, 1}, boolean("(0,1)")),
                  ValidationError);
  CHECK_THROWS_AS(build_package("x", reference::pure_set(3), {0, 5}, reference::boolean_le()),
                  ValidationError);
  const RelStructure three = parse_structure("structure T { universe={0,1,2} }");
  CHECK_THROWS_AS(build_package("x", reference::pure_set(3), {0, 1}, three), ValidationError);
}

TEST_CASE("en_pp_definition") {
  const PPFormula e2 = en_pp_definition(2, 3);
  REQUIRE(e2.atoms.size() == 1);
  CHECK(e2.atoms[0] == Atom::relation("E2", {"x1", "x2"}));
  const PPFormula e4 = en_pp_definition(4, 3);
  REQUIRE(e4.atoms.size() == 4);
  CHECK(e4.atoms[0] == Atom::relation("E3", {"x1", "x2", "x3"}));
  CHECK(e4.atoms[3] == Atom::relation("E3", {"x2", "x3", "x4"}));
  CHECK(en_pp_definition(3, 3).atoms.size() == 1);
  CHECK_THROWS_AS(en_pp_definition(0, 3), ValidationError);
}

TEST_CASE("E4 equals the intersection of its E3 projections") {
  const UnaryTypePackage pkg = reference::pure_set_package();
  const Relation e4 = subpower_closure(pkg.algebra, Relation(4, 3, Relation::full(4, 2).tuples()), true);
  CHECK(solution_relation(pkg.target, en_pp_definition(4, 3)) == e4);
}

TEST_CASE("lemma1_transform") {
  const UnaryTypePackage pkg = reference::pure_set_package();
  const PPFormula phi = parse_pp_formula("phi(x1) := exists x2 . le(x1,x2)");
  const PPFormula t = lemma1_transform(phi, pkg);
  CHECK(t.name == "phi'");
  CHECK(t.free_vars == phi.free_vars);
  CHECK(t.bound_vars == phi.bound_vars);
  CHECK(t.atoms == std::vector<Atom>{Atom::relation("D1", {"x1", "x2"}),
                                     Atom::relation("E2", {"x1", "x2"})});

  const PPFormula four =
      parse_pp_formula("phi(a, b) := exists c, d . le(a,c) & le(c,d) & b = d");
  const PPFormula t4 = lemma1_transform(four, pkg);
  CHECK(t4.atoms.size() == 3 + 4);
  CHECK(t4.atoms[2] == Atom::equality("b", "d"));
  CHECK_THROWS_AS(lemma1_transform(parse_pp_formula("p(x) := R(x,x)"), pkg), ValidationError);
}

TEST_CASE("verify_prop10 examples") {
  const UnaryTypePackage pkg = reference::pure_set_package();
  const PPFormula loop = parse_pp_formula("phi(x1) := le(x1,x1)");
  CHECK(solution_set(pkg.boolean, loop) == std::vector<Assignment>{{0}, {1}});
  CHECK(solution_set(pkg.target, lemma1_transform(loop, pkg)) ==
        std::vector<Assignment>{{0}, {1}, {2}});
  const Prop10Report r = verify_prop10(pkg, loop);
  CHECK(r.ok());
  CHECK(r.boolean_checked == 2);
  CHECK(r.closure_size == 3);

  // no formula has an empty boolean solution set (constant tuples are in
  // every relation), so check the closure of the empty seed directly
  CHECK(subpower_closure(pkg.algebra, Relation(2, 3, {}), true).tuples() ==
        std::vector<Tuple>{{0, 0}, {1, 1}, {2, 2}});
}

TEST_CASE("verify_prop10 and theorem5_reduce on random formulas") {
  const UnaryTypePackage pkg = reference::pure_set_package();
  std::mt19937 rng(51);
  const auto sig = pkg.boolean.signature();
  for (int i = 0; i < 60; ++i) {
    const PPFormula phi = oracle::random_formula(rng, sig, 1 + i % 3, i % 3, 4);
    const PPFormula psi = oracle::random_formula(rng, sig, 1 + i % 3, (i / 3) % 3, 4, "psi");
    const Prop10Report r = verify_prop10(pkg, phi);
    CHECK_MESSAGE(r.ok(), print_formula(phi));
    const auto [a, b] = theorem5_reduce(phi, psi, pkg);
    CHECK(decide_ppcon(pkg.boolean, phi, psi).yes == decide_ppcon(pkg.target, a, b).yes);
    CHECK(a.atoms.size() <= phi.atoms.size() + 20);
  }
  const PPFormula phi = parse_pp_formula("phi(x) := exists y . le(x,y)");
  const auto [a, b] = theorem5_reduce(phi, phi, pkg);
  CHECK(decide_ppcon(pkg.target, a, b).yes);
  CHECK_THROWS_AS(theorem5_reduce(phi, parse_pp_formula("psi(z) := le(z,z)"), pkg),
                  ValidationError);
}

TEST_CASE("package file") {
  const UnaryTypePackage pkg =
      load_unary_package(std::string(PPCOMP_DATA_DIR) + "/pure_set.pkg");
  const UnaryTypePackage ref = reference::pure_set_package();
  CHECK(pkg.algebra == ref.algebra);
  CHECK(pkg.boolean == ref.boolean);
  CHECK(pkg.trace == ref.trace);
  CHECK(pkg.target.relations() == ref.target.relations());
  CHECK_THROWS_AS(parse_unary_package("package p { algebra = \"set3.alg\" trace = {0, 7} "
                                      "boolean = \"bool_le.struct\" }",
                                      PPCOMP_DATA_DIR),
                  ValidationError);
  CHECK_THROWS_AS(parse_unary_package("package p { algebra = \"missing.alg\" trace = {0, 1} "
                                      "boolean = \"bool_le.struct\" }",
                                      PPCOMP_DATA_DIR),
                  Error);
}
