#include <catch2/catch_amalgamated.hpp>

#include <memory>

#include "chernlab/complex.hpp"

using namespace chernlab;

namespace {

std::shared_ptr<const FiniteGroup> cyclic_ptr(int n) {
  return std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(n));
}

int simplex_count(const SimplicialComplex& cx) {
  int total = 0;
  for (int k = 0; k <= cx.dim(); ++k) total += static_cast<int>(cx.simplices(k).size());
  return total;
}

}  // namespace

TEST_CASE("Rips complexes from word metrics") {
  SECTION("hexagon at d = 1") {
    auto g = cyclic_ptr(6);
    GeneratingSet gens(*g, {1});
    WordMetric wm(gens);
    SimplicialComplex cx = build_rips(g, wm, Rational(1), 2);
    REQUIRE(cx.simplices(0).size() == 6);
    REQUIRE(cx.simplices(1).size() == 6);
    REQUIRE(cx.simplices(2).empty());
    REQUIRE(cx.has_simplex({0, 1}));
    REQUIRE(cx.has_simplex({0, 5}));
    REQUIRE(!cx.has_simplex({0, 3}));
    REQUIRE(cx.has_metric());
    REQUIRE(cx.has_action());
  }

  SECTION("d = 0 gives vertices only") {
    auto g = cyclic_ptr(5);
    GeneratingSet gens(*g, {1});
    WordMetric wm(gens);
    SimplicialComplex cx = build_rips(g, wm, Rational(0), 3);
    REQUIRE(cx.dim() == 0);
    REQUIRE(cx.simplices(0).size() == 5);
  }

  SECTION("Z/3 at d = 1 is the full 2-simplex") {
    auto g = cyclic_ptr(3);
    GeneratingSet gens(*g, {1});
    WordMetric wm(gens);
    SimplicialComplex cx = build_rips(g, wm, Rational(1), 2);
    REQUIRE(cx.simplices(0).size() == 3);
    REQUIRE(cx.simplices(1).size() == 3);
    REQUIRE(cx.simplices(2).size() == 1);
  }

  SECTION("monotone in d") {
    auto g = std::make_shared<const FiniteGroup>(FiniteGroup::symmetric(3));
    GeneratingSet gens(*g, {1, 2});  // a transposition and another involution-free pick
    WordMetric wm(gens);
    for (int d = 0; d + 1 <= wm.diameter(); ++d) {
      SimplicialComplex small = build_rips(g, wm, Rational(d), 3);
      SimplicialComplex large = build_rips(g, wm, Rational(d + 1), 3);
      for (int k = 0; k <= small.dim(); ++k)
        for (const auto& s : small.simplices(k)) REQUIRE(large.has_simplex(s));
    }
  }
}

TEST_CASE("complex validation") {
  REQUIRE_THROWS_AS(SimplicialComplex(3, {{{0}, {1}}, {{0, 1}, {1, 2}}}),
                    std::invalid_argument);  // face {2} missing
  REQUIRE_THROWS_AS(SimplicialComplex(2, {{{0}, {1}}, {{1, 0}}}),
                    std::invalid_argument);  // unsorted simplex
  SimplicialComplex ok(3, {{{0}, {1}, {2}}, {{0, 1}}});
  REQUIRE(ok.dim() == 1);
}

TEST_CASE("fixed subcomplexes X_{g,r}") {
  auto g = cyclic_ptr(6);
  GeneratingSet gens(*g, {1});
  WordMetric wm(gens);
  SimplicialComplex cx = build_rips(g, wm, Rational(1), 2);

  SECTION("identity fixes everything at any r") {
    SimplicialComplex sub = fixed_subcomplex(cx, 0, Rational(0));
    REQUIRE(simplex_count(sub) == simplex_count(cx));
  }

  SECTION("rotation by 3 at r = 0 is empty") {
    SimplicialComplex sub = fixed_subcomplex(cx, 3, Rational(0));
    REQUIRE(sub.empty());
  }

  SECTION("rotation by 1 at r = 1 keeps everything") {
    SimplicialComplex sub = fixed_subcomplex(cx, 1, Rational(1));
    REQUIRE(simplex_count(sub) == simplex_count(cx));
  }

  SECTION("monotone in r") {
    for (int gg = 0; gg < 6; ++gg) {
      SimplicialComplex lo = fixed_subcomplex(cx, gg, Rational(1));
      SimplicialComplex hi = fixed_subcomplex(cx, gg, Rational(2));
      for (int k = 0; k <= lo.dim(); ++k)
        for (const auto& s : lo.simplices(k)) REQUIRE(hi.has_simplex(s));
    }
  }
}

TEST_CASE("twisted spaces") {
  SECTION("trivial group gives the single component (e, X)") {
    auto g = cyclic_ptr(1);
    GeneratingSet gens(*g, {});
    WordMetric wm(gens);
    SimplicialComplex cx = build_rips(g, wm, Rational(0), 2);
    TwistedSpace tw = build_twisted_space(cx, Rational(5));
    REQUIRE(tw.components().size() == 1);
    REQUIRE(tw.components()[0].g == 0);
  }

  SECTION("Z/2 at large r keeps both components full") {
    auto g = cyclic_ptr(2);
    GeneratingSet gens(*g, {1});
    WordMetric wm(gens);
    SimplicialComplex cx = build_rips(g, wm, Rational(1), 2);
    TwistedSpace tw = build_twisted_space(cx, Rational(10));
    REQUIRE(tw.components().size() == 2);
    for (const auto& comp : tw.components())
      REQUIRE(simplex_count(comp.subcomplex) == simplex_count(cx));
  }

  SECTION("r = 0 on a free action keeps only the identity component") {
    auto g = cyclic_ptr(4);
    GeneratingSet gens(*g, {1});
    WordMetric wm(gens);
    SimplicialComplex cx = build_rips(g, wm, Rational(1), 2);
    TwistedSpace tw = build_twisted_space(cx, Rational(0));
    REQUIRE(tw.components().size() == 1);
    REQUIRE(tw.components()[0].g == 0);
  }
}

TEST_CASE("fixed-point spaces") {
  SECTION("Z/2 swapping two disjoint edges") {
    auto g = cyclic_ptr(2);
    SimplicialComplex cx(4, {{{0}, {1}, {2}, {3}}, {{0, 1}, {2, 3}}});
    cx.attach_action(g, {{0, 1, 2, 3}, {2, 3, 0, 1}});
    TwistedSpace hat = build_fixed_point_space(cx);
    REQUIRE(hat.components().size() == 2);
    REQUIRE(simplex_count(hat.components()[0].subcomplex) == 6);  // (e, X)
    REQUIRE(hat.components()[1].subcomplex.empty());              // (g, empty)
  }

  SECTION("Z/2 fixing the middle of a path") {
    auto g = cyclic_ptr(2);
    SimplicialComplex cx(3, {{{0}, {1}, {2}}, {{0, 1}, {1, 2}}});
    cx.attach_action(g, {{0, 1, 2}, {2, 1, 0}});
    TwistedSpace hat = build_fixed_point_space(cx);
    const SimplicialComplex& fixed = hat.components()[1].subcomplex;
    REQUIRE(fixed.dim() == 0);
    REQUIRE(fixed.simplices(0) == std::vector<std::vector<int>>{{1}});
  }
}
