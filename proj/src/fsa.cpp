#include "biauto/fsa.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "biauto/error.hpp"

namespace biauto {

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) fail(ErrorKind::Input, "alphabet must not be empty");
  std::set<std::string> seen;
  for (const auto& s : letters_) {
    if (s.empty()) fail(ErrorKind::Input, "alphabet symbols must be non-empty");
    for (char c : s)
      if (!std::isgraph(static_cast<unsigned char>(c)))
        fail(ErrorKind::Input, "alphabet symbol '" + s + "' is not printable");
    if (!seen.insert(s).second) fail(ErrorKind::Input, "duplicate alphabet symbol '" + s + "'");
  }
}

std::optional<Letter> Alphabet::find(std::string_view symbol) const {
  for (std::size_t i = 0; i < letters_.size(); ++i)
    if (letters_[i] == symbol) return static_cast<Letter>(i);
  return std::nullopt;
}

std::string Alphabet::format(const Word& w) const {
  bool spaced = std::any_of(letters_.begin(), letters_.end(), [](const auto& s) { return s.size() > 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (spaced && i > 0) out += ' ';
    out += letters_.at(w[i]);
  }
  return out;
}

Word Alphabet::parse(std::string_view text) const {
  Word out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t best_len = 0;
    Letter best = 0;
    for (std::size_t k = 0; k < letters_.size(); ++k) {
      const auto& s = letters_[k];
      if (s.size() > best_len && text.substr(i, s.size()) == s) {
        best_len = s.size();
        best = static_cast<Letter>(k);
      }
    }
    if (best_len == 0)
      fail(ErrorKind::Input, "unknown letter '" + std::string(1, text[i]) + "' at position " + std::to_string(i));
    out.push_back(best);
    i += best_len;
  }
  return out;
}

Automaton::Automaton(Alphabet alphabet, std::vector<State> table, State start, std::vector<bool> accept,
                     std::vector<std::string> names)
    : alphabet_(std::move(alphabet)), table_(std::move(table)), start_(start), accept_(std::move(accept)),
      names_(std::move(names)) {
  const std::size_t n = accept_.size();
  if (n == 0) fail(ErrorKind::Input, "automaton needs at least one state");
  if (table_.size() != n * alphabet_.size())
    fail(ErrorKind::Input, "transition table is not complete: expected " + std::to_string(n * alphabet_.size()) +
                               " entries, got " + std::to_string(table_.size()));
  for (State t : table_)
    if (t >= n) fail(ErrorKind::Input, "transition target " + std::to_string(t) + " is not a state");
  if (start_ >= n) fail(ErrorKind::Input, "start state " + std::to_string(start_) + " is not a state");
  if (names_.empty()) {
    for (std::size_t s = 0; s < n; ++s) names_.push_back("q" + std::to_string(s));
  } else if (names_.size() != n) {
    fail(ErrorKind::Input, "state name list does not match the state count");
  }
}

Automaton Automaton::with_accept(std::vector<bool> accept) const {
  return Automaton(alphabet_, table_, start_, std::move(accept), names_);
}

bool Loop::visits(State s) const { return position(s).has_value(); }

std::optional<std::size_t> Loop::position(State s) const {
  auto it = std::find(states.begin(), states.end(), s);
  if (it == states.end()) return std::nullopt;
  return static_cast<std::size_t>(it - states.begin());
}

bool Loop::is_simple() const {
  std::set<State> seen(states.begin(), states.end());
  return seen.size() == states.size();
}

Word Loop::word_from(State base) const {
  auto p = position(base);
  if (!p) fail(ErrorKind::Precondition, "state " + std::to_string(base) + " is not on the loop");
  Word out;
  out.reserve(letters.size());
  for (std::size_t k = 0; k < letters.size(); ++k) out.push_back(letters[(*p + k) % letters.size()]);
  return out;
}

Loop make_loop(std::vector<State> states, Word letters) {
  if (states.empty() || states.size() != letters.size())
    fail(ErrorKind::Input, "a loop needs matching, non-empty state and letter sequences");
  const std::size_t n = states.size();
  Loop best{states, letters};
  for (std::size_t r = 1; r < n; ++r) {
    Loop cand;
    cand.states.reserve(n);
    cand.letters.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      cand.states.push_back(states[(r + k) % n]);
      cand.letters.push_back(letters[(r + k) % n]);
    }
    if (cand < best) best = std::move(cand);
  }
  return best;
}

bool is_loop_of(const Automaton& m, const Loop& loop) {
  const std::size_t n = loop.states.size();
  if (n == 0 || loop.letters.size() != n) return false;
  for (std::size_t k = 0; k < n; ++k) {
    if (loop.states[k] >= m.state_count() || loop.letters[k] >= m.alphabet().size()) return false;
    if (m.next(loop.states[k], loop.letters[k]) != loop.states[(k + 1) % n]) return false;
  }
  return true;
}

Path run(const Automaton& m, const Word& w, State from) {
  if (from >= m.state_count()) fail(ErrorKind::Input, "run: origin is not a state");
  Path p{from, w, {}};
  p.visited.reserve(w.size() + 1);
  p.visited.push_back(from);
  State s = from;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= m.alphabet().size())
      fail(ErrorKind::Input, "unknown letter index " + std::to_string(w[i]) + " at position " + std::to_string(i));
    s = m.next(s, w[i]);
    p.visited.push_back(s);
  }
  return p;
}

Path run(const Automaton& m, const Word& w) { return run(m, w, m.start()); }

bool accepts(const Automaton& m, const Word& w) { return m.is_accept(run(m, w).end()); }

std::vector<bool> reachable_mask(const Automaton& m) {
  std::vector<bool> seen(m.state_count(), false);
  std::vector<State> stack{m.start()};
  seen[m.start()] = true;
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    for (Letter x = 0; x < m.alphabet().size(); ++x) {
      State t = m.next(s, x);
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

std::vector<bool> coreachable_mask(const Automaton& m) {
  const std::size_t n = m.state_count();
  std::vector<std::vector<State>> reverse(n);
  for (State s = 0; s < n; ++s)
    for (Letter x = 0; x < m.alphabet().size(); ++x) reverse[m.next(s, x)].push_back(s);
  std::vector<bool> seen(n, false);
  std::vector<State> stack;
  for (State s = 0; s < n; ++s)
    if (m.is_accept(s)) {
      seen[s] = true;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    for (State p : reverse[s])
      if (!seen[p]) {
        seen[p] = true;
        stack.push_back(p);
      }
  }
  return seen;
}

std::vector<bool> live_mask(const Automaton& m) {
  auto r = reachable_mask(m);
  auto c = coreachable_mask(m);
  for (std::size_t s = 0; s < r.size(); ++s) r[s] = r[s] && c[s];
  return r;
}

std::vector<State> live_states(const Automaton& m) {
  auto live = live_mask(m);
  std::vector<State> out;
  for (State s = 0; s < live.size(); ++s)
    if (live[s]) out.push_back(s);
  return out;
}

bool is_empty(const Automaton& m) {
  auto r = reachable_mask(m);
  for (State s = 0; s < r.size(); ++s)
    if (r[s] && m.is_accept(s)) return false;
  return true;
}

Automaton boolean(const Automaton& a, const Automaton& b, BooleanOp op) {
  if (!(a.alphabet() == b.alphabet())) fail(ErrorKind::Input, "boolean operation on automata over different alphabets");
  const std::size_t k = a.alphabet().size();
  std::map<std::pair<State, State>, State> index;
  std::vector<std::pair<State, State>> order;
  auto intern = [&](State x, State y) {
    auto [it, fresh] = index.emplace(std::make_pair(x, y), static_cast<State>(order.size()));
    if (fresh) order.emplace_back(x, y);
    return it->second;
  };
  intern(a.start(), b.start());
  std::vector<State> table;
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto [x, y] = order[i];
    for (Letter l = 0; l < k; ++l) table.push_back(intern(a.next(x, l), b.next(y, l)));
  }
  std::vector<bool> accept(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    bool p = a.is_accept(order[i].first), q = b.is_accept(order[i].second);
    switch (op) {
      case BooleanOp::Intersect: accept[i] = p && q; break;
      case BooleanOp::Union: accept[i] = p || q; break;
      case BooleanOp::Difference: accept[i] = p && !q; break;
    }
  }
  return Automaton(a.alphabet(), std::move(table), 0, std::move(accept));
}

Automaton complement(const Automaton& m) {
  std::vector<bool> accept(m.accept_mask());
  accept.flip();
  return m.with_accept(std::move(accept));
}

Automaton intersect(const Automaton& a, const Automaton& b) { return boolean(a, b, BooleanOp::Intersect); }
Automaton unite(const Automaton& a, const Automaton& b) { return boolean(a, b, BooleanOp::Union); }

Automaton minimize(const Automaton& m) {
  const std::size_t k = m.alphabet().size();
  auto reach = reachable_mask(m);
  std::vector<State> states;
  for (State s = 0; s < m.state_count(); ++s)
    if (reach[s]) states.push_back(s);

  // Moore refinement: block ids are refined by successor signatures until stable.
  std::vector<std::size_t> block(m.state_count(), 0);
  for (State s : states) block[s] = m.is_accept(s) ? 1 : 0;
  std::size_t count = 0;
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next_block(m.state_count(), 0);
    for (State s : states) {
      std::vector<std::size_t> sig{block[s]};
      for (Letter x = 0; x < k; ++x) sig.push_back(block[m.next(s, x)]);
      auto [it, fresh] = ids.emplace(std::move(sig), ids.size());
      next_block[s] = it->second;
    }
    std::size_t next_count = ids.size();
    block = std::move(next_block);
    if (next_count == count) break;
    count = next_count;
  }

  // Canonical numbering: BFS from the start block, letters in order.
  std::vector<std::optional<State>> canon(count);
  std::vector<State> representative;
  std::deque<State> queue{m.start()};
  canon[block[m.start()]] = 0;
  representative.push_back(m.start());
  std::vector<State> table;
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    for (Letter x = 0; x < k; ++x) {
      State t = m.next(s, x);
      auto& c = canon[block[t]];
      if (!c) {
        c = static_cast<State>(representative.size());
        representative.push_back(t);
        queue.push_back(t);
      }
      table.push_back(*c);
    }
  }
  std::vector<bool> accept;
  for (State r : representative) accept.push_back(m.is_accept(r));
  return Automaton(m.alphabet(), std::move(table), 0, std::move(accept));
}

bool equivalent(const Automaton& a, const Automaton& b) {
  return is_empty(boolean(a, b, BooleanOp::Difference)) && is_empty(boolean(b, a, BooleanOp::Difference));
}

std::vector<Loop> enumerate_simple_loops(const Automaton& m, const LoopOptions& options) {
  const std::size_t k = m.alphabet().size();
  std::vector<bool> allowed = options.live_only ? live_mask(m) : std::vector<bool>(m.state_count(), true);
  std::set<Loop> found;

  for (State root = 0; root < m.state_count(); ++root) {
    if (!allowed[root]) continue;
    std::vector<State> states{root};
    Word letters;
    std::vector<bool> on_path(m.state_count(), false);
    on_path[root] = true;
    // explicit DFS stack of next-letter cursors
    std::vector<Letter> cursor{0};
    while (!cursor.empty()) {
      Letter& x = cursor.back();
      if (x == k) {
        cursor.pop_back();
        on_path[states.back()] = false;
        states.pop_back();
        if (!letters.empty()) letters.pop_back();
        continue;
      }
      State s = states.back();
      State t = m.next(s, x);
      Letter used = x++;
      if (t == root) {
        Word w(letters);
        w.push_back(used);
        found.insert(make_loop(states, std::move(w)));
        if (found.size() > options.cap)
          fail(ErrorKind::Resource, "simple loop enumeration exceeded the cap of " + std::to_string(options.cap));
      } else if (t > root && allowed[t] && !on_path[t]) {
        states.push_back(t);
        letters.push_back(used);
        on_path[t] = true;
        cursor.push_back(0);
      }
    }
  }
  return {found.begin(), found.end()};
}

std::vector<Word> enumerate_words(const Automaton& m, std::size_t max_len) {
  const std::size_t k = m.alphabet().size();
  auto co = coreachable_mask(m);
  std::vector<Word> out;
  std::vector<std::pair<Word, State>> level;
  if (co[m.start()]) level.emplace_back(Word{}, m.start());
  for (std::size_t len = 0; !level.empty(); ++len) {
    for (const auto& [w, s] : level)
      if (m.is_accept(s)) out.push_back(w);
    if (len == max_len) break;
    std::vector<std::pair<Word, State>> next;
    for (const auto& [w, s] : level) {
      for (Letter x = 0; x < k; ++x) {
        State t = m.next(s, x);
        if (!co[t]) continue;
        Word v(w);
        v.push_back(x);
        next.emplace_back(std::move(v), t);
      }
    }
    level = std::move(next);
  }
  return out;
}

std::size_t longest_live_simple_path(const Automaton& m) {
  const std::size_t k = m.alphabet().size();
  auto live = live_mask(m);
  std::size_t best = 0;
  std::vector<bool> on_path(m.state_count(), false);
  // plain DFS over simple paths; desk-scale automata only
  auto dfs = [&](auto&& self, State s, std::size_t depth) -> void {
    best = std::max(best, depth);
    on_path[s] = true;
    for (Letter x = 0; x < k; ++x) {
      State t = m.next(s, x);
      if (live[t] && !on_path[t]) self(self, t, depth + 1);
    }
    on_path[s] = false;
  };
  for (State s = 0; s < m.state_count(); ++s)
    if (live[s]) dfs(dfs, s, 0);
  return best;
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace biauto
