#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "chernlab/group.hpp"

using namespace chernlab;

namespace {

// independent permutation helpers for oracle values
std::vector<std::vector<int>> all_perms(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int perm_index(const std::vector<std::vector<int>>& perms, const std::vector<int>& p) {
  return static_cast<int>(std::find(perms.begin(), perms.end(), p) - perms.begin());
}

std::vector<int> compose(const std::vector<int>& p, const std::vector<int>& q) {
  std::vector<int> out(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) out[x] = p[q[x]];
  return out;
}

}  // namespace

TEST_CASE("cyclic group multiplication") {
  FiniteGroup z4 = FiniteGroup::cyclic(4);
  REQUIRE(z4.multiply(1, 3) == 0);  // g * g^-1 = e
  REQUIRE(z4.multiply(1, 1) == 2);
  REQUIRE(z4.inverse(1) == 3);
  REQUIRE_THROWS_AS(z4.multiply(1, 4), std::out_of_range);
}

TEST_CASE("symmetric group composition matches hand-composed permutations") {
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  auto perms = all_perms(3);
  int t01 = perm_index(perms, {1, 0, 2});  // transposition (0 1)
  int t12 = perm_index(perms, {0, 2, 1});  // transposition (1 2)
  int product = perm_index(perms, compose(perms[t01], perms[t12]));
  REQUIRE(s3.multiply(t01, t12) == product);
  // the product is a 3-cycle
  REQUIRE(s3.element_order(product) == 3);

  SECTION("full table agrees with composition") {
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b)
        REQUIRE(s3.multiply(a, b) == perm_index(perms, compose(perms[a], perms[b])));
  }
}

TEST_CASE("group validation rejects broken tables") {
  REQUIRE_THROWS_AS(FiniteGroup(2, {{0, 1}, {1, 1}}, 0), std::invalid_argument);  // not Latin
  REQUIRE_THROWS_AS(FiniteGroup(2, {{1, 0}, {0, 1}}, 0), std::invalid_argument);  // bad identity
  // Latin square with identity that is not associative: smallest examples are
  // order 5 loops
  std::vector<std::vector<int>> loop = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  REQUIRE_THROWS_AS(FiniteGroup(5, loop, 0), std::invalid_argument);
}

TEST_CASE("word metric from BFS") {
  FiniteGroup z6 = FiniteGroup::cyclic(6);

  SECTION("generators {1,5}") {
    GeneratingSet gens(z6, {1});  // symmetrized to {1, 5}
    REQUIRE(gens.generators() == std::vector<int>{1, 5});
    WordMetric wm(gens);
    REQUIRE(wm.distance(0, 0) == 0);
    REQUIRE(wm.distance(0, 3) == 3);
    // oracle: cycle distance min(|i-j|, 6-|i-j|)
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        REQUIRE(wm.distance(i, j) == std::min(std::abs(i - j), 6 - std::abs(i - j)));
  }

  SECTION("generators {1,2,4,5}") {
    GeneratingSet gens(z6, {1, 2});
    WordMetric wm(gens);
    REQUIRE(wm.distance(0, 3) == 2);  // 3 = 1 + 2
    REQUIRE(wm.diameter() == 2);
  }

  SECTION("left invariance") {
    GeneratingSet gens(z6, {1});
    WordMetric wm(gens);
    for (int g = 0; g < 6; ++g)
      for (int x = 0; x < 6; ++x)
        for (int y = 0; y < 6; ++y)
          REQUIRE(wm.distance(z6.multiply(g, x), z6.multiply(g, y)) == wm.distance(x, y));
  }

  SECTION("non-generating set is rejected") {
    REQUIRE_THROWS_AS(GeneratingSet(z6, {2}), std::invalid_argument);  // <2,4> misses odd elements
    REQUIRE_THROWS_AS(GeneratingSet(z6, {}), std::invalid_argument);
  }
}

TEST_CASE("element orders and Lagrange") {
  FiniteGroup z6 = FiniteGroup::cyclic(6);
  REQUIRE(z6.element_order(0) == 1);
  REQUIRE(z6.element_order(1) == 6);
  REQUIRE(z6.element_order(3) == 2);

  FiniteGroup s3 = FiniteGroup::symmetric(3);
  auto perms = all_perms(3);
  int cycle3 = perm_index(perms, {1, 2, 0});
  REQUIRE(s3.element_order(cycle3) == 3);

  for (const FiniteGroup& g : {z6, s3})
    for (int x = 0; x < g.order(); ++x) REQUIRE(g.order() % g.element_order(x) == 0);
}

TEST_CASE("conjugacy orbits") {
  FiniteGroup z6 = FiniteGroup::cyclic(6);
  REQUIRE(z6.conjugacy_orbit(0) == std::vector<int>{0});
  for (int x = 0; x < 6; ++x) REQUIRE(z6.conjugacy_orbit(x) == std::vector<int>{x});  // abelian

  FiniteGroup s3 = FiniteGroup::symmetric(3);
  auto perms = all_perms(3);
  std::vector<int> transpositions = {perm_index(perms, {1, 0, 2}), perm_index(perms, {0, 2, 1}),
                                     perm_index(perms, {2, 1, 0})};
  std::sort(transpositions.begin(), transpositions.end());
  REQUIRE(s3.conjugacy_orbit(transpositions[0]) == transpositions);
  REQUIRE(s3.conjugacy_orbit(s3.identity()) == std::vector<int>{s3.identity()});
}

TEST_CASE("direct products") {
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  FiniteGroup z3 = FiniteGroup::cyclic(3);
  FiniteGroup z6 = FiniteGroup::product(z2, z3);
  REQUIRE(z6.order() == 6);
  // (1,1) generates the product of coprime cyclic groups
  int gen = 1 * 3 + 1;
  REQUIRE(z6.element_order(gen) == 6);
  GeneratingSet gens(z6, {gen});
  WordMetric wm(gens);
  REQUIRE(wm.diameter() == 3);
}
