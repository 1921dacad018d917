#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace biauto {

using Letter = std::uint16_t;
using Word = std::vector<Letter>;
using State = std::uint32_t;

/// Ordered set of distinct printable symbols. The order is the tie-break
/// order for every canonical form in the library.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> letters);

  std::size_t size() const noexcept { return letters_.size(); }
  const std::string& symbol(Letter x) const { return letters_.at(x); }
  const std::vector<std::string>& symbols() const noexcept { return letters_; }
  std::optional<Letter> find(std::string_view symbol) const;

  /// Concatenates symbols; uses single spaces when some symbol is longer
  /// than one character. The empty word renders as "" .
  std::string format(const Word& w) const;

  /// Greedy longest-match tokenizer; whitespace separates tokens and is
  /// otherwise ignored. Throws Input naming the offending position.
  Word parse(std::string_view text) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> letters_;
};

/// Complete deterministic finite automaton.
class Automaton {
 public:
  Automaton() = default;
  /// `table[s * |alphabet| + x]` is the successor of state s on letter x.
  Automaton(Alphabet alphabet, std::vector<State> table, State start,
            std::vector<bool> accept, std::vector<std::string> names = {});

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t state_count() const noexcept { return accept_.size(); }
  State start() const noexcept { return start_; }
  State next(State s, Letter x) const { return table_[s * alphabet_.size() + x]; }
  bool is_accept(State s) const { return accept_.at(s); }
  const std::vector<bool>& accept_mask() const noexcept { return accept_; }
  const std::vector<State>& table() const noexcept { return table_; }
  const std::string& name(State s) const { return names_.at(s); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  /// Copy with a different accept set.
  Automaton with_accept(std::vector<bool> accept) const;

 private:
  Alphabet alphabet_;
  std::vector<State> table_;
  State start_ = 0;
  std::vector<bool> accept_;
  std::vector<std::string> names_;
};

struct Path {
  State origin = 0;
  Word letters;
  std::vector<State> visited;  // visited.size() == letters.size() + 1

  std::size_t length() const noexcept { return letters.size(); }
  State end() const { return visited.back(); }
  bool operator==(const Path&) const = default;
};

/// A directed cycle states[0] -x0-> states[1] -> ... -> states[0], stored in
/// canonical form: the least rotation under (letters, states) order.
struct Loop {
  std::vector<State> states;
  Word letters;

  std::size_t length() const noexcept { return letters.size(); }
  bool visits(State s) const;
  std::optional<std::size_t> position(State s) const;
  bool is_simple() const;
  /// Word of the cyclic permutation based at `base`, which must lie on the loop.
  Word word_from(State base) const;

  auto operator<=>(const Loop& o) const {
    if (auto c = letters <=> o.letters; c != 0) return c;
    return states <=> o.states;
  }
  bool operator==(const Loop&) const = default;
};

/// Canonicalizes an arbitrary rotation.
Loop make_loop(std::vector<State> states, Word letters);

/// Checks that the loop's edges exist in the automaton.
bool is_loop_of(const Automaton& m, const Loop& loop);

Path run(const Automaton& m, const Word& w, State from);
Path run(const Automaton& m, const Word& w);
bool accepts(const Automaton& m, const Word& w);

std::vector<bool> reachable_mask(const Automaton& m);
std::vector<bool> coreachable_mask(const Automaton& m);
std::vector<bool> live_mask(const Automaton& m);
std::vector<State> live_states(const Automaton& m);

bool is_empty(const Automaton& m);

enum class BooleanOp { Intersect, Union, Difference };

Automaton boolean(const Automaton& a, const Automaton& b, BooleanOp op);
Automaton complement(const Automaton& m);
Automaton intersect(const Automaton& a, const Automaton& b);
Automaton unite(const Automaton& a, const Automaton& b);

/// Minimal complete DFA; states numbered in BFS order from the start,
/// following letters in alphabet order.
Automaton minimize(const Automaton& m);

bool equivalent(const Automaton& a, const Automaton& b);

struct LoopOptions {
  bool live_only = true;
  std::size_t cap = 10000;
};

/// All vertex-simple cycles (canonical, deduplicated, sorted). Throws
/// Resource when more than `cap` loops exist.
std::vector<Loop> enumerate_simple_loops(const Automaton& m, const LoopOptions& options = {});

/// Accepted words of length <= max_len in length-then-lexicographic order.
std::vector<Word> enumerate_words(const Automaton& m, std::size_t max_len);

/// Length of the longest vertex-simple path inside the live states.
std::size_t longest_live_simple_path(const Automaton& m);

/// Length-then-lexicographic comparison under alphabet order.
bool shortlex_less(const Word& a, const Word& b);

}  // namespace biauto
