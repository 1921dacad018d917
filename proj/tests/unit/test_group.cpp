#include "doctest.h"

#include <random>

#include "biauto/error.hpp"
#include "biauto/group.hpp"

using namespace biauto;

TEST_CASE("parse and format") {
  auto g = Group::product(Group::free({"x", "y"}), Group::abelian(1, {4}));
  for (auto s : {"[x y^-1 | (3;1)]", "[e | (0;0)]", "[x x | (-2;3)]"}) CHECK(g.format(g.parse(s)) == s);
  CHECK(g.format(g.parse("[x^2 y x^-1 x | (0;5)]")) == "[x x y | (0;1)]");
  CHECK_THROWS_AS(g.parse("[q | (0;0)]"), Error);
  CHECK_THROWS_AS(g.parse("(1)"), Error);
  CHECK(g.describe() == "F2 x Z + Z/4");
  auto a = Group::abelian(2);
  CHECK(a.format(a.parse("(1,-2)")) == "(1,-2)");
  CHECK(Group::abelian(0).format(Group::abelian(0).identity()) == "()");
}

TEST_CASE("free group arithmetic against word reduction") {
  auto f = Group::free({"x", "y"});
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(0, 3);
  const char* tok[] = {"x", "x^-1", "y", "y^-1"};
  for (int t = 0; t < 200; ++t) {
    std::string u, v;
    std::vector<int> seq;
    for (int i = 0; i < 6; ++i) seq.push_back(d(rng));
    for (int i = 0; i < 3; ++i) u += std::string(tok[seq[i]]) + " ";
    for (int i = 3; i < 6; ++i) v += std::string(tok[seq[i]]) + " ";
    Element a = f.parse(u), b = f.parse(v);
    CHECK(f.multiply(a, b) == f.parse(u + v));
    CHECK(f.is_identity(f.multiply(a, f.inverse(a))));
    CHECK(f.power(a, 3) == f.parse(u + u + u));
    CHECK(f.power(a, -1) == f.inverse(a));
  }
}

TEST_CASE("center and cyclic exponents") {
  auto g = Group::product(Group::free({"x", "y"}), Group::abelian(1));
  CHECK(g.in_center(g.parse("[e | (5)]")));
  CHECK_FALSE(g.in_center(g.parse("[x | (0)]")));
  CHECK(g.cyclic_exponent(g.parse("[e | (2)]"), g.parse("[e | (-6)]")) == -3);
  CHECK_FALSE(g.cyclic_exponent(g.parse("[e | (2)]"), g.parse("[e | (3)]")));
  auto f = Group::free({"x", "y"});
  CHECK(f.cyclic_exponent(f.parse("x y"), f.parse("x y x y x y")) == 3);
  CHECK_FALSE(f.cyclic_exponent(f.parse("x y"), f.parse("y x")));
  auto t = Group::abelian(1, {6});
  CHECK(t.cyclic_exponent(t.parse("(1;1)"), t.parse("(7;1)")) == 7);
  CHECK_FALSE(t.cyclic_exponent(t.parse("(1;1)"), t.parse("(7;2)")));
  CHECK_FALSE(t.has_infinite_order(t.parse("(0;3)")));
  CHECK_THROWS_AS(t.cyclic_exponent(t.parse("(0;3)"), t.parse("(0;0)")), Error);
  auto c = g.center_coordinates({g.parse("[e | (3)]")});
  CHECK(c.free == lattice::Matrix{{3}});
  CHECK(g.from_center_coordinates({3}, {}) == g.parse("[e | (3)]"));
  // brute force: brute search of exponents agrees in Z + Z/6
  for (lattice::Int x = -8; x <= 8; ++x)
    for (lattice::Int r = 0; r < 6; ++r) {
      Element e = t.parse("(" + std::to_string(x) + ";" + std::to_string(r) + ")");
      std::optional<lattice::Int> want;
      for (lattice::Int k = -20; k <= 20; ++k)
        if (t.power(t.parse("(2;3)"), k) == e) want = k;
      CHECK(t.cyclic_exponent(t.parse("(2;3)"), e) == want);
    }
}

TEST_CASE("balls and word metric") {
  auto z2 = Group::abelian(2);
  Alphabet ab({"a", "A", "b", "B"});
  GroupModel m(z2, ab, {z2.parse("(1,0)"), z2.parse("(-1,0)"), z2.parse("(0,1)"), z2.parse("(0,-1)")});
  for (std::size_t r = 0; r <= 8; ++r) CHECK(ball(m, r).size() == 2 * r * r + 2 * r + 1);
  WordMetric wm(m, 10);
  CHECK(wm.length(z2.parse("(3,-4)")) == 7);
  CHECK(wm.distance(z2.parse("(1,1)"), z2.parse("(-1,2)")) == 3);
  CHECK_THROWS_AS(wm.length(z2.parse("(30,0)")), Error);
  CHECK_THROWS_AS(ball(m, 50, BallOptions{100}), Error);
  CHECK(m.is_symmetric());
  CHECK(m.is_central(z2.parse("(5,5)")));

  auto f = Group::free({"x", "y"});
  Alphabet fx({"x", "X", "y", "Y"});
  GroupModel fm(f, fx, {f.parse("x"), f.parse("x^-1"), f.parse("y"), f.parse("y^-1")});
  // free group spheres have 4 * 3^(r-1) elements
  CHECK(ball(fm, 3).size() == 1 + 4 + 12 + 36);
  CHECK(WordMetric(fm).length(f.parse("x y x^-1")) == 3);
}
