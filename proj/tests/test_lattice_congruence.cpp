#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "ppcomp/algebra.hpp"
#include "ppcomp/error.hpp"
#include "ppcomp/lattice.hpp"
#include "ppcomp/pentagon.hpp"
#include "ppcomp/reference.hpp"

using namespace ppcomp;

namespace {

EquivRelation blocks(std::size_t n, std::vector<std::vector<int>> b) {
  return EquivRelation::from_blocks(n, b);
}

// P = B x C with the given alpha_b fibres; elements named "b|c".
Pentagon product_pentagon(const std::vector<EquivRelation>& fibres) {
  const std::size_t nb = fibres.size(), nc = fibres[0].carrier_size();
  Pentagon p;
  p.name = "prod";
  std::vector<int> beta, gamma, alpha;
  for (std::size_t b = 0; b < nb; ++b)
    for (std::size_t c = 0; c < nc; ++c) {
      p.elements.push_back(std::to_string(b) + "|" + std::to_string(c));
      beta.push_back(int(b));
      gamma.push_back(int(c));
      alpha.push_back(int(b * nc) + fibres[b].block_of(c));
    }
  p.alpha = EquivRelation::from_labels(alpha);
  p.beta = EquivRelation::from_labels(beta);
  p.gamma = EquivRelation::from_labels(gamma);
  return p;
}

// 0 < a < c < 1, 0 < b < 1 with labels in that index order: 0, a, b, c, 1.
FiniteLattice n5() {
  const std::vector<std::vector<bool>> leq{{1, 1, 1, 1, 1},
                                           {0, 1, 0, 1, 1},
                                           {0, 0, 1, 0, 1},
                                           {0, 0, 0, 1, 1},
                                           {0, 0, 0, 0, 1}};
  return FiniteLattice::from_order({"0", "a", "b", "c", "1"}, leq);
}

FiniteLattice m3() {
  std::vector<std::vector<bool>> leq(5, std::vector<bool>(5, false));
  for (int i = 0; i < 5; ++i) {
    leq[i][i] = true;
    leq[0][i] = true;
    leq[i][4] = true;
  }
  return FiniteLattice::from_order({"0", "a", "b", "c", "1"}, leq);
}

}  // namespace

TEST_CASE("equivalence relations") {
  const auto t = blocks(4, {{2, 3}, {0}, {1}});
  CHECK(t.labels() == std::vector<int>{0, 1, 2, 2});
  CHECK(t.num_blocks() == 3);
  CHECK(t.to_relation().is_equivalence());
  CHECK(EquivRelation::identity(4).leq(t));
  CHECK(t.leq(EquivRelation::full(4)));
  CHECK_FALSE(EquivRelation::full(4).leq(t));
  CHECK_THROWS_AS(blocks(3, {{0, 1}}), ValidationError);
  CHECK_THROWS_AS(blocks(3, {{0, 1}, {1, 2}}), ValidationError);
  const std::pair<int, int> pairs[] = {{0, 2}, {2, 3}};
  CHECK(EquivRelation::generated_by(4, pairs) == blocks(4, {{0, 2, 3}, {1}}));
  BinaryRelation half(2);
  half.set(0, 1);
  CHECK_THROWS_AS(EquivRelation::from_relation(half), ValidationError);
}

TEST_CASE("compose") {
  const auto t1 = blocks(3, {{0, 1}, {2}}), t2 = blocks(3, {{0}, {1, 2}});
  CHECK(compose(EquivRelation::identity(3), t1) == t1.to_relation());
  const BinaryRelation c = compose(t1, t2);
  CHECK(c.test(0, 2));
  CHECK_FALSE(c.test(2, 0));
  CHECK(compose(EquivRelation::full(3), EquivRelation::full(3)) ==
        EquivRelation::full(3).to_relation());
}

TEST_CASE("join_via_product") {
  const auto t1 = blocks(3, {{0, 1}, {2}}), t2 = blocks(3, {{0}, {1, 2}});
  CHECK(join_via_product(t1, t2) == EquivRelation::full(3));
  const std::vector<EquivRelation> single{t1};
  CHECK(join_via_product(single) == t1);
  std::mt19937 rng(41);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + i % 6, k = 1 + (i / 6) % 4;
    std::vector<EquivRelation> fam;
    for (std::size_t j = 0; j < k; ++j) fam.push_back(oracle::random_partition(rng, n));
    CHECK(join_via_product(fam) == oracle::join_by_closure(fam));
  }
  CHECK_THROWS_AS(join_via_product(t1, EquivRelation::full(2)), ValidationError);
}

TEST_CASE("meet") {
  const auto t1 = blocks(4, {{0, 1, 2}, {3}}), t2 = blocks(4, {{0, 1}, {2, 3}});
  CHECK(meet(t1, t2) == blocks(4, {{0, 1}, {2}, {3}}));
  CHECK(meet(t1, EquivRelation::full(4)) == t1);
}

TEST_CASE("all_partitions") {
  const std::size_t bell[] = {1, 1, 2, 5, 15, 52, 203};
  for (std::size_t n = 1; n <= 6; ++n) CHECK(all_partitions(n).size() == bell[n]);
  const auto p4 = all_partitions(4);
  CHECK(p4.front() == EquivRelation::full(4));
  CHECK(p4.back() == EquivRelation::identity(4));
}

TEST_CASE("congruence_generated") {
  const FinAlgebra bare = reference::pure_set(3);
  const std::pair<ElemId, ElemId> p01[] = {{0, 1}};
  CHECK(congruence_generated(bare, p01) == blocks(3, {{0, 1}, {2}}));
  CHECK(congruence_generated(bare, {}) == EquivRelation::identity(3));

  // successor mod 4: (0,2) generates {{0,2},{1,3}}
  FinAlgebra cyc("Z4", {"0", "1", "2", "3"});
  cyc.add_operation("s", OperationTable(1, 4, {1, 2, 3, 0}));
  const std::pair<ElemId, ElemId> p02[] = {{0, 2}};
  const auto theta = congruence_generated(cyc, p02);
  CHECK(theta == blocks(4, {{0, 2}, {1, 3}}));
  CHECK(is_congruence(cyc, theta));
  CHECK_FALSE(is_congruence(cyc, blocks(4, {{0, 1}, {2}, {3}})));

  std::mt19937 rng(42);
  for (int i = 0; i < 40; ++i) {
    FinAlgebra a("A", {"0", "1", "2", "3"});
    std::uniform_int_distribution<ElemId> v(0, 3);
    std::vector<ElemId> unary(4), binary(16);
    for (auto& x : unary) x = v(rng);
    for (auto& x : binary) x = v(rng);
    a.add_operation("f", OperationTable(1, 4, unary));
    a.add_operation("g", OperationTable(2, 4, binary));
    const std::pair<ElemId, ElemId> pr[] = {{v(rng), v(rng)}};
    const auto c = congruence_generated(a, pr);
    CHECK(c.related(pr[0].first, pr[0].second));
    // compatibility through preserves on the relation as a binary relation
    std::vector<Tuple> pairs;
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y)
        if (c.related(x, y)) pairs.push_back({x, y});
    const Relation rel(2, 4, pairs);
    for (const auto& op : a.operations()) CHECK(preserves(op.table, rel));
    // least: every congruence containing the pair contains c
    for (const auto& p : all_partitions(4))
      if (is_congruence(a, p) && p.related(pr[0].first, pr[0].second)) CHECK(c.leq(p));
  }
}

TEST_CASE("congruence_lattice") {
  const FiniteLattice con3 = congruence_lattice(reference::pure_set(3));
  CHECK(con3.size() == 5);
  CHECK(con3.find(EquivRelation::identity(3)));
  CHECK(con3.find(EquivRelation::full(3)));
  const auto& ps = con3.partitions();
  for (std::size_t a = 0; a < ps.size(); ++a)
    for (std::size_t b = 0; b < ps.size(); ++b) {
      CHECK(ps[con3.meet(a, b)] == meet(ps[a], ps[b]));
      CHECK(ps[con3.join(a, b)] == join_via_product(ps[a], ps[b]));
    }
  Budget small;
  small.max_congruence_carrier = 3;
  CHECK_THROWS_AS(congruence_lattice(reference::pure_set(4), small), BudgetExceeded);
}

TEST_CASE("check_modular_law") {
  for (std::size_t n = 1; n <= 5; ++n) CHECK_FALSE(check_modular_law(FiniteLattice::chain(n)));
  const FiniteLattice n = n5();
  const auto w = check_modular_law(n);
  REQUIRE(w);
  CHECK(n.label((*w)[0]) == "a");
  CHECK(n.label((*w)[1]) == "c");
  CHECK(n.label((*w)[2]) == "b");
  CHECK_FALSE(check_modular_law(m3()));
  CHECK_THROWS_AS(FiniteLattice::from_order({"a", "b"}, {{1, 0}, {0, 1}}), ValidationError);
}

TEST_CASE("sublattice_generated") {
  const auto t = blocks(3, {{0, 1}, {2}});
  const std::vector<EquivRelation> one{t};
  CHECK(sublattice_generated(one).size() == 1);
  const std::vector<EquivRelation> two{blocks(3, {{0, 1}, {2}}), blocks(3, {{0}, {1, 2}})};
  const FiniteLattice l = sublattice_generated(two);
  CHECK(l.size() == 4);
  CHECK(l.partitions()[0] == two[0]);
  CHECK(l.partitions()[1] == two[1]);
  for (std::size_t a = 0; a < l.size(); ++a)
    for (std::size_t b = 0; b < l.size(); ++b) {
      CHECK(l.find(meet(l.partitions()[a], l.partitions()[b])));
      CHECK(l.find(join_via_product(l.partitions()[a], l.partitions()[b])));
    }
}

TEST_CASE("pentagon axioms") {
  const Pentagon p = reference::pentagon4();
  CHECK_FALSE(validate_pentagon(p));
  Pentagon bad = p;
  bad.alpha = blocks(4, {{0, 2}, {1}, {3}});
  CHECK(validate_pentagon(bad) == 1);
  bad = p;
  bad.beta = bad.gamma = EquivRelation::full(4);
  bad.alpha = EquivRelation::identity(4);
  CHECK(validate_pentagon(bad) == 2);
  bad = p;
  bad.beta = EquivRelation::identity(4);
  bad.alpha = EquivRelation::identity(4);
  CHECK(validate_pentagon(bad) == 3);
  bad = p;
  bad.alpha = EquivRelation::identity(4);
  CHECK(validate_pentagon(bad) == 4);
  CHECK_FALSE(validate_pentagon(bad, false));
}

TEST_CASE("decompose the shipped pentagon") {
  const auto d = decompose_pentagon(reference::pentagon4());
  CHECK(d.b_size() == 2);
  CHECK(d.c_size() == 2);
  CHECK(d.alpha_b[0] == EquivRelation::identity(2));
  CHECK(d.alpha_b[1] == EquivRelation::full(2));
  CHECK(d.blocks.size() == 2);
  const auto pair = is_interesting(d);
  REQUIRE(pair);
  CHECK(*pair == std::pair<std::size_t, std::size_t>{0, 1});
  const auto p2 = pentagon_two_sorted(d);
  CHECK(p2.r.size() == 6);
  CHECK(is_valid_two_sorted(p2));
  CHECK_THROWS_AS(decompose_pentagon(Pentagon{"x", {"a", "b"}, EquivRelation::full(2),
                                              EquivRelation::identity(2),
                                              EquivRelation::full(2)}),
                  ValidationError);
}

TEST_CASE("degenerate and crossing pentagons") {
  const Pentagon zero = product_pentagon({EquivRelation::identity(3), EquivRelation::identity(3)});
  // alpha = 0_P needs axiom 4 relaxed when |B| > 1
  const auto d = decompose_pentagon(zero, false);
  CHECK(d.blocks.size() == 1);
  CHECK(d.alphas[0] == EquivRelation::identity(3));
  CHECK_FALSE(is_interesting(d));
  CHECK(pentagon_two_sorted(d).r.size() == 6);
  CHECK(d.b_size() * d.c_size() == zero.elements.size());

  const Pentagon crossing =
      product_pentagon({blocks(3, {{0, 1}, {2}}), blocks(3, {{0}, {1, 2}})});
  const auto dc = decompose_pentagon(crossing);
  CHECK(dc.alphas.size() == 2);
  CHECK_FALSE(is_interesting(dc));
  for (std::size_t b = 0; b < dc.b_size(); ++b)
    CHECK(pentagon_two_sorted(dc).fibre(int(b)).is_equivalence());
}

TEST_CASE("pentagon text") {
  const Pentagon p = reference::pentagon4();
  const Pentagon q = parse_pentagon(print_pentagon(p));
  CHECK(q.elements == p.elements);
  CHECK(q.alpha == p.alpha);
  CHECK(q.beta == p.beta);
  CHECK(q.gamma == p.gamma);
  CHECK_THROWS_AS(parse_pentagon("pentagon x { set={a,b} alpha={{a},{c}} beta={{a},{b}} "
                                 "gamma={{a,b}} }"),
                  ValidationError);
}

TEST_CASE("K_P of the shipped pentagon") {
  const auto d = decompose_pentagon(reference::pentagon4());
  const FiniteLattice kp = sublattice_generated(d.alphas);
  CHECK(kp.size() == 2);
  CHECK(kp.leq(0, 1));
}

TEST_CASE("lattice terms") {
  const LatticeTerm t = parse_lattice_term("((x1 v x2) ^ x3 ^ x1)");
  CHECK(t.kind() == LatticeTerm::Kind::meet);
  CHECK(t.depth() == 2);
  CHECK(t.leaves() == 4);
  CHECK(t.variables() == std::vector<std::string>{"x1", "x2", "x3"});
  CHECK(parse_lattice_term(print_lattice_term(t)) == t);
  CHECK(parse_lattice_term("((x))") == LatticeTerm::variable("x"));
  CHECK_THROWS_AS(parse_lattice_term("(x ^ y v z)"), Error);
  CHECK_THROWS_AS(parse_lattice_term("(x ^"), ParseError);
  CHECK(shared_variables(parse_lattice_term("(b v a)"), parse_lattice_term("c")) ==
        std::vector<std::string>{"a", "b", "c"});

  const FiniteLattice c4 = FiniteLattice::chain(4);
  const std::vector<std::string> vars{"x1", "x2", "x3"};
  const std::size_t vals[] = {3, 1, 2};
  CHECK(eval_lattice_term(t, vars, vals, c4) == 2);
  CHECK(eval_lattice_term(t, {{"x1", 0}, {"x2", 3}, {"x3", 3}}, c4) == 0);
  CHECK_THROWS_AS(eval_lattice_term(t, {{"x1", 0}}, c4), ValidationError);
}

TEST_CASE("decide_term_ineq") {
  const LatticeTerm x = parse_lattice_term("x"), xs = parse_lattice_term("(x v s)");
  const std::vector<FiniteLattice> ls{FiniteLattice::chain(3), n5(), m3()};
  CHECK(decide_term_ineq(x, xs, ls).yes);

  const auto d = decompose_pentagon(reference::pentagon4());
  const std::vector<FiniteLattice> kp{sublattice_generated(d.alphas)};
  const LatticeTerm join = parse_lattice_term("(x1 v x2)"),
                    meet_t = parse_lattice_term("(x1 ^ x2)");
  const Verdict v = decide_term_ineq(join, meet_t, kp);
  CHECK_FALSE(v.yes);
  CHECK(v.witness->values == Assignment{0, 1});
  CHECK(decide_term_ineq(join, meet_t, kp, {std::vector<std::size_t>{0}}).yes);
  CHECK(decide_term_ineq(join, meet_t, kp, {std::vector<std::size_t>{1}}).yes);

  // distributive law fails in N5 and M3, holds on chains
  const LatticeTerm lhs = parse_lattice_term("(x ^ (y v z))"),
                    rhs = parse_lattice_term("((x ^ y) v (x ^ z))");
  const std::vector<FiniteLattice> chain{FiniteLattice::chain(4)};
  CHECK(decide_term_ineq(lhs, rhs, chain).yes);
  const Verdict nv = decide_term_ineq(lhs, rhs, ls);
  CHECK_FALSE(nv.yes);
  CHECK(nv.witness->structure == 1);

  const std::vector<FiniteLattice> big{congruence_lattice(reference::pure_set(4))};
  CHECK_THROWS_AS(decide_term_ineq(parse_lattice_term("(a v b v c v d v e)"),
                                   parse_lattice_term("a"), big),
                  BudgetExceeded);
}
