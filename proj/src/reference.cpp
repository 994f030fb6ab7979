#include "ppcomp/reference.hpp"

#include <string>

namespace ppcomp::reference {

namespace {

FinAlgebra pure_set_named(std::string name, std::vector<std::string> universe) {
  return FinAlgebra(std::move(name), std::move(universe));
}

EquivRelation blocks(std::size_t n, std::vector<std::vector<int>> b) {
  return EquivRelation::from_blocks(n, b);
}

}  // namespace

FinAlgebra pure_set(std::size_t n) {
  std::vector<std::string> universe;
  for (std::size_t i = 0; i < n; ++i) universe.push_back(std::to_string(i));
  return pure_set_named("set" + std::to_string(n), std::move(universe));
}

RelStructure boolean_le() {
  RelStructure c("C", {"0", "1"});
  c.add_relation("le", Relation(2, 2, {{0, 0}, {0, 1}, {1, 1}}));
  return c;
}

UnaryTypePackage pure_set_package() {
  return build_package("pure_set", pure_set(3), {0, 1}, boolean_le());
}

Pentagon pentagon4() {
  Pentagon p;
  p.name = "pentagon4";
  p.elements = {"00", "01", "10", "11"};
  p.alpha = blocks(4, {{0}, {1}, {2, 3}});
  p.beta = blocks(4, {{0, 1}, {2, 3}});
  p.gamma = blocks(4, {{0, 2}, {1, 3}});
  return p;
}

Pentagon pentagon2() {
  Pentagon p;
  p.name = "pentagon2";
  p.elements = {"p", "q"};
  p.alpha = EquivRelation::identity(2);
  p.beta = EquivRelation::identity(2);
  p.gamma = EquivRelation::full(2);
  return p;
}

AmalgamPackage amalgam4() {
  Pentagon p = pentagon4();
  FinAlgebra a = pure_set_named("amalgam4", p.elements);
  std::vector<Relation> d;
  for (std::size_t k = 1; k <= 4; ++k) d.push_back(Relation::full(k, 4));
  return make_amalgam("amalgam4", std::move(a), p.alpha, p.beta, p.gamma, {p},
                      std::move(d));
}

AmalgamPackage disjoint_amalgam() {
  FinAlgebra a =
      pure_set_named("disjoint6", {"00", "01", "10", "11", "p", "q"});
  auto alpha = blocks(6, {{0}, {1}, {2, 3}, {4}, {5}});
  auto beta = blocks(6, {{0, 1}, {2, 3}, {4}, {5}});
  auto gamma = blocks(6, {{0, 2}, {1, 3}, {4, 5}});
  const std::vector<std::vector<ElemId>> carriers = {{0, 1, 2, 3}, {4, 5}};
  std::vector<Tuple> pairs;
  for (const auto& c : carriers)
    for (ElemId x : c)
      for (ElemId y : c) pairs.push_back({x, y});
  std::vector<Relation> d = {Relation::full(1, 6),
                             Relation(2, 6, std::move(pairs))};
  return make_amalgam("disjoint6", std::move(a), alpha, beta, gamma,
                      {pentagon4(), pentagon2()}, std::move(d));
}

}  // namespace ppcomp::reference
