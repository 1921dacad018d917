#include "doctest.h"

#include <chrono>
#include <map>
#include <set>

#include "biauto/error.hpp"
#include "biauto/quotient.hpp"

using namespace biauto;

namespace {

std::set<std::string> language(const BiautomaticStructure& bs, std::size_t n) {
  std::set<std::string> out;
  for (const auto& w : enumerate_words(bs.acceptor(), n)) out.insert(bs.alphabet().format(w));
  return out;
}

// Path-tracing oracle for L_H.
bool in_LH_by_definition(const BiautomaticStructure& bs, const std::vector<ZCycle>& cycles, const Word& w) {
  const auto& m = bs.acceptor();
  if (!accepts(m, w)) return false;
  auto p = run(m, w);
  bool compatible = false;
  for (const auto& c : cycles) {
    if (contains(m, p, c.cycle)) return false;
    if (!c.positive()) continue;
    bool all = true;
    for (const auto& t : c.cycle.terms) {
      bool hit = false;
      for (State s : p.visited) hit |= t.loop.loop.visits(s);
      all &= hit;
    }
    compatible |= all;
  }
  return compatible;
}

// Every word over the alphabet up to length n.
std::vector<Word> all_words(std::size_t k, std::size_t n) {
  std::vector<Word> out{{}};
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i].size() < n)
      for (Letter x = 0; x < k; ++x) {
        Word w = out[i];
        w.push_back(x);
        out.push_back(std::move(w));
      }
  return out;
}

}  // namespace

TEST_CASE("touch acceptor") {
  auto bs = builtin("Z2");
  const auto& m = bs.acceptor();
  const auto& ab = bs.alphabet();
  Loop a_loop;
  for (const auto& l : enumerate_simple_loops(m))
    if (ab.format(l.letters) == "a") a_loop = l;
  auto t = build_touch_acceptor(m, a_loop);
  for (auto w : {"a", "ab", "aaa"}) CHECK(accepts(t, ab.parse(w)));
  for (auto w : {"", "b", "Ab"}) CHECK_FALSE(accepts(t, ab.parse(w)));
  for (const auto& w : all_words(4, 6)) {
    auto p = run(m, w);
    bool hit = false;
    for (State s : p.visited) hit |= a_loop.visits(s);
    CHECK(accepts(t, w) == hit);
  }
  Loop fake{{0, 1}, {0, 0}};
  CHECK_THROWS_AS(build_touch_acceptor(m, fake), Error);
}

TEST_CASE("contains acceptor agrees with first-visit semantics") {
  for (auto name : builtin_names()) {
    auto bs = builtin(name);
    const auto& m = bs.acceptor();
    auto loops = enumerate_simple_loops(m);
    for (const auto& l : loops)
      for (Int n = 1; n <= 2; ++n) {
        auto acc = build_contains_acceptor(m, l, n);
        CentralCycle c;
        c.terms.push_back({CentralLoop{l, {}, {}, {}}, n});
        for (const auto& w : all_words(m.alphabet().size(), name == "Z2" ? 6 : 4))
          CHECK(accepts(acc, w) == contains(m, run(m, w), c));
      }
  }
  auto bs = builtin("Z2");
  const auto& ab = bs.alphabet();
  Loop a_loop;
  for (const auto& l : enumerate_simple_loops(bs.acceptor()))
    if (ab.format(l.letters) == "a") a_loop = l;
  auto one = build_contains_acceptor(bs.acceptor(), a_loop, 1);
  CHECK(accepts(one, ab.parse("aa")));
  CHECK(accepts(one, ab.parse("aab")));
  CHECK_FALSE(accepts(one, ab.parse("a")));
  CHECK_FALSE(accepts(one, ab.parse("ab")));
  auto two = build_contains_acceptor(bs.acceptor(), a_loop, 2);
  CHECK(accepts(two, ab.parse("aaa")));
  CHECK_FALSE(accepts(two, ab.parse("aa")));
}

TEST_CASE("projection by Smith normal form") {
  auto g = Group::abelian(2);
  auto p = Projection::quotient(g, {g.parse("(1,1)")});
  CHECK(p.target().describe() == "Z");
  // kernel is exactly <(1,1)>
  for (Int x = -4; x <= 4; ++x)
    for (Int y = -4; y <= 4; ++y) {
      Element e = g.parse("(" + std::to_string(x) + "," + std::to_string(y) + ")");
      CHECK(p.target().is_identity(p(e)) == (x == y));
    }
  auto t = Group::abelian(1, {4});
  auto pt = Projection::quotient(t, {t.parse("(0;2)")});
  CHECK(pt.target().describe() == "Z + Z/2");
  auto f = Group::product(Group::free({"x", "y"}), Group::abelian(1));
  auto pf = Projection::quotient(f, {f.parse("[e | (1)]")});
  CHECK(pf.target().describe() == "F2");
  CHECK(pf.target().format(pf(f.parse("[x y^-1 | (3)]"))) == "x y^-1");
  auto full = Projection::quotient(g, {g.parse("(1,0)"), g.parse("(0,1)")});
  CHECK(full.target().describe() == "1");
  auto id = Projection::identity(g);
  CHECK(id.target() == g);
  CHECK(id(g.parse("(2,3)")) == g.parse("(2,3)"));
}

TEST_CASE("L_H for Z2 and z=(1,1)") {
  auto bs = builtin("Z2");
  auto qs = build_LH(bs, bs.group().parse("(1,1)"));
  std::set<std::string> want;
  for (int j = 1; j <= 11; ++j) want.insert("a" + std::string(j, 'b'));
  for (int i = 1; i <= 11; ++i) want.insert(std::string(i, 'a') + "b");
  CHECK(language(qs.structure, 12) == want);
  CHECK(qs.structure.group().describe() == "Z");

  // one representative per coset value in [-6, 6]
  const auto& H = qs.structure;
  std::map<Element, int> count;
  for (const auto& w : enumerate_words(H.acceptor(), 12)) ++count[H.evaluate(w)];
  auto b = ball(H.model(), 6);
  for (const auto& h : b.members) CHECK(count[h] == 1);
  CHECK(b.size() == 13);

  auto r = verify_quotient(qs, 6, 12);
  for (const auto& rep : r) CHECK_MESSAGE(rep.passed, rep.property);

  // contained negative cycle is excluded even though it is never compatible
  CHECK_FALSE(accepts(H.acceptor(), bs.alphabet().parse("AABB")));
}

TEST_CASE("bound chain on Z2") {
  auto bs = builtin("Z2");
  auto b = compute_bound(bs, bs.group().parse("(1,1)"));
  CHECK(b.A == 1);
  CHECK(b.R == 1);
  CHECK(b.z_length == 2);
  CHECK(b.K1 == 8);
  CHECK(b.U == 145);
  CHECK(b.M == 5);
  CHECK(b.B == 727);
  CHECK(b.K_prime == 2912);
  // |U| oracle: lattice points with |x|+|y| <= 8
  std::size_t n = 0;
  for (int x = -8; x <= 8; ++x)
    for (int y = -8; y <= 8; ++y) n += std::abs(x) + std::abs(y) <= 8;
  CHECK(b.U == n);
  CHECK_THROWS_AS(compute_bound(bs, bs.group().parse("(1,1)"), BallOptions{100}), Error);
}

TEST_CASE("L_H for F2xZ") {
  auto bs = builtin("F2xZ");
  auto qs = build_LH(bs, builtin_center("F2xZ"));
  CHECK(qs.structure.group().describe() == "F2");
  CHECK(qs.bound.K_prime == (qs.bound.B * 1 + 2) * qs.bound.K);
  // {r z : r freely reduced over x,X,y,Y}
  std::set<std::string> want;
  for (const auto& w : all_words(4, 7)) {
    std::string s;
    bool reduced = true;
    const std::string letters = "xXyY";
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i && (w[i] ^ 1) == w[i - 1]) reduced = false;
      s += letters[w[i]];
    }
    if (reduced) want.insert(s + "z");
  }
  CHECK(language(qs.structure, 8) == want);
  for (const auto& rep : verify_quotient(qs, 6, 8)) CHECK_MESSAGE(rep.passed, rep.property);
}

TEST_CASE("automaton L_H matches the path-tracing definition") {
  struct Case {
    std::string name, z;
  };
  for (const auto& c : std::vector<Case>{{"Z2", "(1,1)"}, {"Z2", "(1,0)"}, {"Z2", "(2,-1)"}, {"Z3", "(1,1,1)"},
                                         {"F2xZ", "[e | (1)]"}}) {
    CAPTURE(c.name);
    CAPTURE(c.z);
    auto bs = builtin(c.name);
    auto qs = build_LH(bs, bs.group().parse(c.z));
    std::size_t n = c.name == "Z2" ? 10 : 6;
    for (const auto& w : all_words(bs.alphabet().size(), n))
      if (accepts(bs.acceptor(), w)) CHECK(accepts(qs.structure.acceptor(), w) == in_LH_by_definition(bs, qs.cycles, w));
  }
}

TEST_CASE("finite quotient projection") {
  auto g = Group::abelian(1, {4});
  auto bs = builtin("Z2");
  GroupModel model(g, bs.alphabet(), {g.parse("(1;0)"), g.parse("(-1;0)"), g.parse("(0;1)"), g.parse("(0;3)")});
  BiautomaticStructure s(model, bs.acceptor(), 2);
  auto p = finite_quotient_projection(s, {g.parse("(0;2)")});
  CHECK(p.structure.group().describe() == "Z + Z/2");
  CHECK(p.structure.acceptor().table() == s.acceptor().table());
  auto same = finite_quotient_projection(s, {});
  CHECK(same.structure.group() == g);
  CHECK_THROWS_AS(finite_quotient_projection(s, {g.parse("(1;0)")}), Error);
}

TEST_CASE("theorem A pipeline") {
  auto z2 = builtin("Z2");
  const auto& G = z2.group();
  auto full = theorem_a_pipeline(z2, {G.parse("(1,0)"), G.parse("(0,1)")});
  CHECK(full.log.size() == 2);
  CHECK(full.structure.group().describe() == "1");
  CHECK(verify_surjectivity(full.structure, 3).passed);
  CHECK(!enumerate_words(full.structure.acceptor(), 6).empty());

  auto z3 = builtin("Z3");
  auto one = theorem_a_pipeline(z3, {builtin_center("Z3")});
  REQUIRE(one.log.size() == 1);
  CHECK(one.structure.group().describe() == "Z^2");
  auto direct = build_LH(z3, builtin_center("Z3"));
  CHECK(equivalent(one.structure.acceptor(), direct.structure.acceptor()));

  auto none = theorem_a_pipeline(z2, {});
  CHECK(none.log.empty());
  CHECK(none.structure.acceptor().table() == z2.acceptor().table());
  CHECK_THROWS_AS(theorem_a_pipeline(builtin("F2xZ"), {builtin("F2xZ").group().parse("[x | (0)]")}), Error);
}
