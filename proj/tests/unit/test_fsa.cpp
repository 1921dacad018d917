#include "doctest.h"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "biauto/error.hpp"
#include "biauto/fsa.hpp"
#include "random_automata.hpp"

using namespace biauto;

namespace {

// Brute-force simple cycles: all closed walks without repeated vertices,
// found from every start state by exhaustive DFS.
std::set<Loop> brute_loops(const Automaton& m) {
  std::set<Loop> out;
  auto live = live_mask(m);
  const std::size_t k = m.alphabet().size();
  std::vector<State> states;
  Word letters;
  std::function<void(State, State)> dfs = [&](State root, State s) {
    for (Letter x = 0; x < k; ++x) {
      State t = m.next(s, x);
      if (!live[t]) continue;
      if (t == root) {
        auto st = states;
        auto lt = letters;
        lt.push_back(x);
        out.insert(make_loop(st, lt));
        continue;
      }
      if (std::find(states.begin(), states.end(), t) != states.end()) continue;
      states.push_back(t);
      letters.push_back(x);
      dfs(root, t);
      states.pop_back();
      letters.pop_back();
    }
  };
  for (State r = 0; r < m.state_count(); ++r) {
    if (!live[r]) continue;
    states = {r};
    letters.clear();
    dfs(r, r);
  }
  return out;
}

}  // namespace

TEST_CASE("alphabet") {
  Alphabet a({"x", "X", "y"});
  CHECK(a.format(a.parse("xXy")) == "xXy");
  CHECK(a.parse(" x X ") == Word{0, 1});
  CHECK_THROWS_AS(a.parse("xq"), Error);
  CHECK_THROWS_AS(Alphabet({"x", "x"}), Error);
  CHECK_THROWS_AS(Alphabet(std::vector<std::string>{}), Error);
  Alphabet multi({"t1", "t", "s"});
  CHECK(multi.parse("t1t") == Word{0, 1});
  CHECK(multi.format({0, 2}) == "t1 s");
}

TEST_CASE("automaton validation") {
  Alphabet a({"x"});
  CHECK_THROWS_AS(Automaton(a, {1}, 0, {true}), Error);
  CHECK_THROWS_AS(Automaton(a, {0}, 1, {true}), Error);
  CHECK_THROWS_AS(Automaton(a, {0, 0}, 0, {true}), Error);
}

TEST_CASE("boolean operations and minimization agree with enumeration on random automata") {
  std::mt19937 rng(20240611);
  auto words = all_words_upto(2, 8);
  for (int trial = 0; trial < 20; ++trial) {
    CAPTURE(trial);
    auto a = random_automaton(rng), b = random_automaton(rng);
    auto i = intersect(a, b), u = unite(a, b), d = boolean(a, b, BooleanOp::Difference), c = complement(a);
    auto ma = minimize(a);
    for (const auto& w : words) {
      bool x = accepts(a, w), y = accepts(b, w);
      CHECK(accepts(i, w) == (x && y));
      CHECK(accepts(u, w) == (x || y));
      CHECK(accepts(d, w) == (x && !y));
      CHECK(accepts(c, w) == !x);
      CHECK(accepts(ma, w) == x);
    }
    CHECK(ma.state_count() <= a.state_count() + 0);
    CHECK(minimize(ma).table() == ma.table());
    CHECK(equivalent(a, ma));
    // enumerate_words returns exactly the accepted words, in shortlex order
    std::vector<Word> want;
    for (const auto& w : words)
      if (accepts(a, w)) want.push_back(w);
    CHECK(enumerate_words(a, 8) == want);
    CHECK(is_empty(a) == std::none_of(words.begin(), words.end(), [&](const Word& w) { return accepts(a, w); }));
  }
}

TEST_CASE("minimal automata are canonical") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_automaton(rng);
    // an equivalent automaton with a duplicated copy of every state
    const std::size_t n = a.state_count();
    std::vector<State> table(2 * n * 2);
    std::vector<bool> acc(2 * n);
    for (State s = 0; s < n; ++s)
      for (Letter x = 0; x < 2; ++x) {
        table[s * 2 + x] = a.next(s, x) + static_cast<State>(n);
        table[(s + n) * 2 + x] = a.next(s, x);
      }
    for (State s = 0; s < n; ++s) acc[s] = acc[s + n] = a.is_accept(s);
    Automaton twin(a.alphabet(), table, 0, acc);
    CHECK(minimize(twin).table() == minimize(a).table());
    CHECK(minimize(twin).accept_mask() == minimize(a).accept_mask());
  }
}

TEST_CASE("simple loops agree with brute force") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_automaton(rng, 6);
    auto got = enumerate_simple_loops(a);
    CHECK(std::set<Loop>(got.begin(), got.end()) == brute_loops(a));
    CHECK(std::is_sorted(got.begin(), got.end()));
    for (const auto& l : got) {
      CHECK(l.is_simple());
      CHECK(is_loop_of(a, l));
    }
  }
  // cap overflow
  Alphabet ab({"x", "y"});
  Automaton dense(ab, {1, 2, 2, 0, 0, 1}, 0, {true, true, true});
  CHECK_THROWS_AS(enumerate_simple_loops(dense, {true, 2}), Error);
}

TEST_CASE("loops and paths") {
  auto l = make_loop({2, 0, 1}, {1, 0, 0});
  CHECK(l.states == std::vector<State>{0, 1, 2});
  CHECK(l.letters == Word{0, 0, 1});
  CHECK(l.word_from(2) == Word{1, 0, 0});
  CHECK(l.position(1) == 1);
  CHECK_FALSE(l.visits(5));
  Alphabet ab({"x"});
  Automaton m(ab, {1, 2, 0, 3}, 0, {true, false, false, false});
  CHECK(run(m, {0, 0}).visited == std::vector<State>{0, 1, 2});
  CHECK(accepts(m, {0, 0, 0}));
  CHECK(live_states(m) == std::vector<State>{0, 1, 2});
  CHECK(longest_live_simple_path(m) == 2);
  CHECK(shortlex_less({1}, {0, 0}));
  CHECK(shortlex_less({0, 1}, {1, 0}));
}
