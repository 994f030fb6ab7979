#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "ppcomp/budget.hpp"
#include "ppcomp/error.hpp"
#include "ppcomp/formula.hpp"
#include "ppcomp/structure.hpp"

using namespace ppcomp;

namespace {

const char* kEdge = "structure B { universe={0,1} relation R/2={(0,1)} }";

}  // namespace

TEST_CASE("parse_structure reads the edge structure") {
  const RelStructure b = parse_structure(kEdge);
  CHECK(b.name() == "B");
  CHECK(b.size() == 2);
  REQUIRE(b.relations().size() == 1);
  CHECK(b.relations()[0].relation.arity() == 2);
  CHECK(b.relations()[0].relation.size() == 1);
  CHECK(b.relations()[0].relation.contains(Tuple{0, 1}));
}

TEST_CASE("parse_structure errors") {
  CHECK_THROWS_AS(parse_structure("structure B { universe={0,1} relation R/2={(0,2)} }"),
                  ValidationError);
  CHECK_THROWS_AS(parse_structure("structure B { universe={0,1} relation R/2={(0)} }"),
                  ValidationError);
  CHECK_THROWS_AS(parse_structure("structure B { universe={} }"), ValidationError);
  CHECK_THROWS_AS(parse_structure("structure B { universe={0,0} }"), ValidationError);
  CHECK_THROWS_AS(parse_structure("structure B { universe={0,1} "), ParseError);
  try {
    parse_structure("structure B {\n  universe = {0, 1\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("comments and quoted names") {
  const RelStructure b = parse_structure(
      "# leading comment\nstructure \"my B\" { universe = {a, \"b c\"} # two\n"
      "relation S/1 = {(\"b c\")} }");
  CHECK(b.name() == "my B");
  CHECK(b.find_element("b c") == 1);
  CHECK(parse_structure(print_structure(b)) == b);
}

TEST_CASE("print_structure round-trips random structures") {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    const RelStructure b = oracle::random_structure(rng, 1 + i % 4, i % 3, 3);
    CHECK(parse_structure(print_structure(b)) == b);
  }
}

TEST_CASE("parse_pp_formula") {
  const Signature sig{{"R", 2}};
  const PPFormula f = parse_pp_formula("phi(x) := exists y . R(x,y)", sig);
  CHECK(f.free_vars == std::vector<std::string>{"x"});
  CHECK(f.bound_vars == std::vector<std::string>{"y"});
  CHECK(f.atoms.size() == 1);

  const PPFormula eq = parse_pp_formula("phi(x) := x = x", sig);
  REQUIRE(eq.atoms.size() == 1);
  CHECK(eq.atoms[0].is_equality());
  CHECK(eq.bound_vars.empty());

  CHECK_THROWS_AS(parse_pp_formula("phi(x) := exists x . R(x,x)", sig), ValidationError);
  CHECK_THROWS_AS(parse_pp_formula("phi(x) := S(x)", sig), ValidationError);
  CHECK_THROWS_AS(parse_pp_formula("phi(x) := R(x)", sig), ValidationError);
  CHECK_THROWS_AS(parse_pp_formula("phi(x) := R(x,z)", sig), ValidationError);
  CHECK_THROWS_AS(parse_pp_formula("phi(_x) := R(_x,_x)", sig), ValidationError);
  CHECK_THROWS_AS(parse_pp_formula("phi(x) := R(x,", sig), ParseError);
  // generated names are fine for bound variables
  CHECK_NOTHROW(parse_pp_formula("phi(x) := exists _q0 . R(x,_q0)", sig));
}

TEST_CASE("true formulas and sentences") {
  const PPFormula t = parse_pp_formula("phi(x) := true");
  CHECK(t.atoms.empty());
  const PPFormula s = parse_pp_formula("phi() := exists y . R(y,y)");
  CHECK(s.free_vars.empty());
  CHECK(parse_pp_formula(print_formula(s)) == s);
}

TEST_CASE("print_formula round-trips random formulas") {
  std::mt19937 rng(12);
  const Signature sig{{"R0", 1}, {"R1", 2}, {"R2", 3}};
  for (int i = 0; i < 100; ++i) {
    const PPFormula f = oracle::random_formula(rng, sig, i % 4, i % 3, 4);
    CHECK(parse_pp_formula(print_formula(f), sig) == f);
  }
}

TEST_CASE("size counts atoms, arguments and quantified variables") {
  const PPFormula f = parse_pp_formula("phi(x) := exists y . R(x,y) & x = y");
  CHECK(f.size() == 1 + 2 + 1 + 2 + 1);
}

TEST_CASE("sorted formulas") {
  const SortedPPFormula f =
      parse_sorted_formula("phi(x@1, y1@2) := exists y2@2 . R(x,y1,y2) & y1 = y2");
  CHECK(f.sort_of("x") == Sort::first);
  CHECK(f.sort_of("y2") == Sort::second);
  CHECK(f.free_sorts() == std::vector<Sort>{Sort::first, Sort::second});
  CHECK(parse_sorted_formula(print_sorted_formula(f)) == f);
  CHECK_THROWS_AS(parse_sorted_formula("phi(x@1, y@2) := R(y,x,x)"), ValidationError);
  CHECK_THROWS_AS(parse_sorted_formula("phi(x@1, y@2) := x = y"), ValidationError);
  CHECK_THROWS_AS(parse_sorted_formula("phi(x@3) := x = x"), Error);
  CHECK_THROWS_AS(parse_sorted_formula("phi(x) := x = x"), Error);
}

TEST_CASE("conjoin renames bound variables apart") {
  const PPFormula phi = parse_pp_formula("phi(x) := exists y . R(x,y)");
  const PPFormula psi = parse_pp_formula("psi(x) := exists y . S(x,y)");
  const PPFormula c = conjoin(phi, psi);
  CHECK(c.free_vars == phi.free_vars);
  REQUIRE(c.bound_vars.size() == 2);
  CHECK(c.bound_vars[0] != c.bound_vars[1]);
  CHECK(c.atoms.size() == 2);
  CHECK_NOTHROW(check_variables(c));
  CHECK_THROWS_AS(conjoin(phi, parse_pp_formula("psi(z) := S(z,z)")), ValidationError);
}

TEST_CASE("conjoin semantics against the oracle") {
  std::mt19937 rng(13);
  for (int i = 0; i < 100; ++i) {
    const RelStructure b = oracle::random_structure(rng, 2 + i % 2, 2, 2);
    const auto sig = b.signature();
    const PPFormula phi = oracle::random_formula(rng, sig, 2, i % 3, 3);
    const PPFormula psi = oracle::random_formula(rng, sig, 2, i % 3, 3, "psi");
    auto s = oracle::solutions(b, phi), t = oracle::solutions(b, psi);
    std::vector<Tuple> both;
    std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(both));
    CHECK(oracle::solutions(b, conjoin(phi, psi)) == both);
    if (i < 50) CHECK(oracle::solutions(b, conjoin(phi, phi)) == s);
  }
}

TEST_CASE("expand_with_constants") {
  const RelStructure b = parse_structure(kEdge);
  const RelStructure star = expand_with_constants(b);
  CHECK(star.relations().size() == 3);
  const RelStructure b3 = parse_structure(
      "structure T { universe={0,1,2} relation R/2={(0,1),(2,2)} }");
  const RelStructure t = expand_with_constants(b3);
  REQUIRE(t.relations().size() == 4);
  CHECK(t.relations()[0] == b3.relations()[0]);
  for (ElemId e = 0; e < 3; ++e) {
    const auto& r = t.relations()[1 + e].relation;
    CHECK(r.arity() == 1);
    CHECK(r.tuples() == std::vector<Tuple>{{e}});
  }
  const RelStructure twice = expand_with_constants(t);
  CHECK(twice.relations().size() == b3.relations().size() + 2 * b3.size());
}

TEST_CASE("power_flatten") {
  const RelStructure b = parse_structure(
      "structure P { universe={0|0,0|1,1|0,1|1} relation R/1={(0|1)} }");
  const RelStructure f = power_flatten(b, 2);
  CHECK(f.universe() == std::vector<std::string>{"0", "1"});
  REQUIRE(f.relations().size() == 1);
  CHECK(f.relations()[0].relation.arity() == 2);
  CHECK(f.relations()[0].relation.tuples() == std::vector<Tuple>{{0, 1}});

  const RelStructure plain = parse_structure(kEdge);
  CHECK(power_flatten(plain, 1).relations() == plain.relations());

  const RelStructure bin = parse_structure(
      "structure P { universe={0|0,0|1,1|0,1|1} relation S/2={(0|1,1|1),(1|0,0|0)} }");
  const RelStructure g = power_flatten(bin, 2);
  CHECK(g.relations()[0].relation.arity() == 4);
  CHECK(g.relations()[0].relation.size() == 2);
  CHECK_THROWS_AS(power_flatten(plain, 2), ValidationError);
}

TEST_CASE("power_flatten_formula") {
  const PPFormula r = power_flatten_formula(parse_pp_formula("phi(x,y) := R(x,y)"), 2);
  REQUIRE(r.atoms.size() == 1);
  CHECK(r.free_vars == std::vector<std::string>{"x_1", "x_2", "y_1", "y_2"});
  CHECK(r.atoms[0].args == std::vector<std::string>{"x_1", "x_2", "y_1", "y_2"});

  const PPFormula e = power_flatten_formula(parse_pp_formula("phi(x,y) := x = y"), 2);
  REQUIRE(e.atoms.size() == 2);
  CHECK(e.atoms[0] == Atom::equality("x_1", "y_1"));
  CHECK(e.atoms[1] == Atom::equality("x_2", "y_2"));
}

TEST_CASE("fresh_name") {
  CHECK(fresh_name("_q", {}) == "_q0");
  CHECK(fresh_name("_q", {"_q0", "_q1"}) == "_q2");
}

TEST_CASE("budget overrides") {
  const Budget d;
  CHECK(d.with_overrides("1000").max_enumeration == 1000);
  const Budget b = d.with_overrides("vars=30,dnf=5,carrier=6,enum=7");
  CHECK(b.max_variables == 30);
  CHECK(b.max_dnf_variables == 5);
  CHECK(b.max_congruence_carrier == 6);
  CHECK(b.max_enumeration == 7);
  CHECK_THROWS_AS(d.with_overrides("speed=3"), ValidationError);
  CHECK_THROWS_AS(d.with_overrides("vars=x"), ValidationError);
}
