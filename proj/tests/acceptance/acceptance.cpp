#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/random_automata.hpp"
#include "biauto/central.hpp"
#include "biauto/error.hpp"
#include "biauto/neumann_shapiro.hpp"
#include "biauto/quotient.hpp"

using namespace biauto;

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (passed) detail << "failed: ";
      else detail << "; ";
      detail << what;
      passed = false;
    }
  }
};

std::set<std::string> language(const BiautomaticStructure& bs, std::size_t n) {
  std::set<std::string> out;
  for (const auto& w : enumerate_words(bs.acceptor(), n)) out.insert(bs.alphabet().format(w));
  return out;
}

bool touches_all(const Path& p, const CentralCycle& c) {
  for (const auto& t : c.terms) {
    bool hit = false;
    for (State s : p.visited) hit |= t.loop.loop.visits(s);
    if (!hit) return false;
  }
  return true;
}

// L_H membership by tracing the path: compatible with a positive Z-cycle and
// containing none.
bool in_LH_by_definition(const BiautomaticStructure& bs, const std::vector<ZCycle>& cycles, const Word& w) {
  const auto& m = bs.acceptor();
  if (!accepts(m, w)) return false;
  auto p = run(m, w);
  bool compatible = false;
  for (const auto& c : cycles) {
    if (contains(m, p, c.cycle)) return false;
    if (c.positive() && touches_all(p, c.cycle)) compatible = true;
  }
  return compatible;
}

std::vector<std::string> reduced_words(const std::string& letters, std::size_t n) {
  // letters come in inverse pairs: letters[2i], letters[2i+1]
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() >= n) continue;
    for (std::size_t x = 0; x < letters.size(); ++x) {
      if (!out[i].empty()) {
        auto last = letters.find(out[i].back());
        if ((last ^ 1) == x) continue;
      }
      out.push_back(out[i] + letters[x]);
    }
  }
  return out;
}

std::vector<VerificationReport> full_suite(const BiautomaticStructure& bs, std::size_t radius, std::size_t max_len) {
  VerifyOptions o;
  o.slack = max_len > radius ? max_len - radius : 0;
  std::vector<VerificationReport> out{verify_surjectivity(bs, radius, o), verify_uniqueness(bs, max_len),
                                      verify_fellow_traveller(bs, max_len), check_simplicity(bs)};
  auto loops = find_central_loops(bs);
  for (const auto& set : enumerate_live_sets(bs, loops))
    if (!set.members.empty()) out.push_back(check_independence(bs, loops, set));
  return out;
}

Outcome fixture_soundness() {
  Outcome o;
  for (const auto& name : builtin_names()) {
    auto bs = builtin(name);
    for (const auto& r : full_suite(bs, 6, 10)) o.require(r.passed, name + " " + r.property);
    auto ft = verify_fellow_traveller(bs, 10);
    o.require(ft.measured && *ft.measured <= bs.K(), name + " measured K");
    o.detail << name << " K^=" << (ft.measured ? *ft.measured : 0) << "<=" << bs.K() << " ";
  }
  return o;
}

Outcome z2_construction() {
  Outcome o;
  auto bs = builtin("Z2");
  auto qs = build_LH(bs, bs.group().parse("(1,1)"));
  std::set<std::string> want;
  for (int j = 1; j <= 11; ++j) want.insert("a" + std::string(j, 'b'));
  for (int i = 1; i <= 11; ++i) want.insert(std::string(i, 'a') + "b");
  auto got = language(qs.structure, 12);
  o.require(got == want, "language to length 12");
  // coset value of (x, y) in Z^2/<(1,1)> is x - y
  std::map<int, int> reps;
  for (const auto& w : got) {
    int x = 0, y = 0;
    for (char c : w) {
      if (c == 'a') ++x;
      if (c == 'A') --x;
      if (c == 'b') ++y;
      if (c == 'B') --y;
    }
    ++reps[x - y];
  }
  for (int v = -6; v <= 6; ++v) o.require(reps[v] == 1, "coset " + std::to_string(v));
  o.detail << got.size() << " words, cosets -6..6 each hit once";
  return o;
}

Outcome f2z_construction() {
  Outcome o;
  auto bs = builtin("F2xZ");
  auto qs = build_LH(bs, builtin_center("F2xZ"));
  std::set<std::string> want;
  for (const auto& r : reduced_words("xXyY", 7)) want.insert(r + "z");
  auto got = language(qs.structure, 8);
  o.require(got == want, "language to length 8");
  const auto& H = qs.structure;
  std::set<Element> image;
  for (const auto& w : enumerate_words(H.acceptor(), 8)) image.insert(H.evaluate(w));
  std::size_t ball = 0;
  for (const auto& r : reduced_words("xXyY", 6)) {
    Element g = H.group().identity();
    for (char c : r) {
      std::string t = (c == 'x' || c == 'X') ? "x" : "y";
      if (c == 'X' || c == 'Y') t += "^-1";
      g = H.group().multiply(g, H.group().parse(t));
    }
    ++ball;
    o.require(image.count(g) == 1, "ball element " + r);
  }
  o.detail << got.size() << " words, F2 ball(6) of " << ball << " covered";
  return o;
}

Outcome formula_equivalence() {
  Outcome o;
  for (const auto& name : builtin_names()) {
    auto bs = builtin(name);
    auto qs = build_LH(bs, builtin_center(name));
    o.require(is_empty(intersect(qs.structure.acceptor(), complement(bs.acceptor()))), name + " L_H in L");
    std::size_t n = 0, in = 0;
    for (const auto& w : enumerate_words(bs.acceptor(), 10)) {
      bool a = accepts(qs.structure.acceptor(), w), d = in_LH_by_definition(bs, qs.cycles, w);
      ++n;
      in += a;
      if (a != d) o.require(false, name + " word " + bs.alphabet().format(w));
    }
    o.detail << name << " " << in << "/" << n << " ";
  }
  return o;
}

Outcome splice_calculus() {
  Outcome o;
  std::size_t checked = 0, contains_checked = 0;
  for (const auto& name : builtin_names()) {
    auto bs = builtin(name);
    const auto& m = bs.acceptor();
    const auto& G = bs.group();
    auto cycles = find_primitive_z_cycles(bs, builtin_center(name));
    for (const auto& zc : cycles) {
      const auto& c = zc.cycle;
      Element cbar = c.element(G);
      std::size_t clen = 0;
      for (const auto& t : c.terms) clen += t.loop.loop.length() * static_cast<std::size_t>(t.coefficient);
      for (const auto& w : enumerate_words(m, 6)) {
        auto pi = run(m, w);
        if (!touches_all(pi, c)) continue;
        for (Int k = 1; k <= 3; ++k) {
          auto q = splice(m, pi, c.scaled(k));
          ++checked;
          o.require(accepts(m, q.letters), name + " splice accepted " + bs.alphabet().format(w));
          o.require(bs.evaluate(q.letters) == G.multiply(bs.evaluate(w), G.power(cbar, k)),
                    name + " evaluate " + bs.alphabet().format(w));
          auto s0 = strip(m, pi, c), s = strip(m, q, c);
          o.require(s.multiplicity == s0.multiplicity + k, name + " multiplicity " + bs.alphabet().format(w));
          o.require(s.base == (s0.multiplicity ? s0.base : pi), name + " base " + bs.alphabet().format(w));
          o.require(splice(m, s.base, c.scaled(s.multiplicity)) == q, name + " round trip " + bs.alphabet().format(w));
        }
      }
      // contains(q, c) iff q = splice(pi, c) for some compatible accepted pi
      if (clen > 10) continue;
      std::set<Word> spliced;
      for (const auto& w : enumerate_words(m, 10 - clen)) {
        auto pi = run(m, w);
        if (touches_all(pi, c)) spliced.insert(splice(m, pi, c).letters);
      }
      for (const auto& w : enumerate_words(m, 10)) {
        ++contains_checked;
        bool got = contains(m, run(m, w), c);
        if (got != (spliced.count(w) == 1))
          o.require(false, name + " contains " + bs.alphabet().format(w) + " " + c.label(m));
      }
    }
  }
  o.detail << checked << " splices, " << contains_checked << " contains decisions";
  return o;
}

Outcome lemma_suite() {
  Outcome o;
  std::size_t words = 0;
  for (const auto& name : builtin_names()) {
    auto bs = builtin(name);
    auto cycles = find_primitive_z_cycles(bs, builtin_center(name));
    for (const auto& w : enumerate_words(bs.acceptor(), 10)) {
      auto p = run(bs.acceptor(), w);
      std::size_t compatible = 0;
      for (const auto& c : cycles) compatible += touches_all(p, c.cycle);
      ++words;
      if (compatible > 1) o.require(false, name + " two cycles on " + bs.alphabet().format(w));
    }
  }
  auto z2 = builtin("Z2");
  auto acc = z2.acceptor().accept_mask();
  std::fill(acc.begin(), acc.end(), true);
  BiautomaticStructure dead(z2.model(), z2.acceptor().with_accept(acc), z2.K());
  o.require(!check_simplicity(dead).passed, "dead-accepting simplicity should fail");
  o.require(!verify_uniqueness(dead, 6).passed, "dead-accepting uniqueness should fail");
  Automaton one(z2.alphabet(), {0, 0, 0, 0}, 0, {true});
  BiautomaticStructure single(z2.model(), one, z2.K());
  o.require(!check_simplicity(single).passed, "single-state simplicity should fail");
  o.require(!verify_uniqueness(single, 6).passed, "single-state uniqueness should fail");
  o.detail << words << " words, both mutants rejected";
  return o;
}

Outcome neumann_shapiro() {
  Outcome o;
  auto z2 = build_subdivision(builtin("Z2"));
  auto z3 = build_subdivision(builtin("Z3"));
  o.require(z2.f_vector() == std::vector<std::size_t>{4, 4}, "Z2 f-vector");
  o.require(z3.f_vector() == std::vector<std::size_t>{6, 12, 8}, "Z3 f-vector");
  o.require(verify_subdivision(z2, 8).passed, "Z2 subdivision");
  o.require(verify_subdivision(z3, 8).passed, "Z3 subdivision");
  for (double eps : {0.5, 0.01}) {
    auto r = visual_lemma_check(builtin("Z2"), eps);
    o.require(r.passed, "Z2 visual lemma at " + std::to_string(eps));
    o.detail << "Z2 eps=" << eps << " B=" << r.bound << " ";
  }
  auto r3 = visual_lemma_check(builtin("Z3"), 0.5);
  o.require(r3.passed, "Z3 visual lemma at 0.5");
  o.detail << "Z3 eps=0.5 B=" << r3.bound;
  return o;
}

Outcome bound_chain() {
  Outcome o;
  auto bs = builtin("Z2");
  auto b = compute_bound(bs, bs.group().parse("(1,1)"));
  auto A = static_cast<std::size_t>(b.A), R = static_cast<std::size_t>(b.R);
  o.require(b.K1 == (A * b.z_length + 2) * b.K, "K1 formula");
  o.require(b.B == A * R * (b.U * b.M + 1) + A, "B formula");
  o.require(b.K_prime == (b.B * b.z_length + 2) * b.K, "K' formula");
  std::size_t u = 0;
  for (int x = -20; x <= 20; ++x)
    for (int y = -20; y <= 20; ++y) u += static_cast<std::size_t>(std::abs(x) + std::abs(y)) <= b.K1;
  o.require(b.U == u, "|U| against lattice count");
  o.detail << "K1=" << b.K1 << " U=" << b.U << " M=" << b.M << " B=" << b.B << " K'=" << b.K_prime << "; ";
  for (const auto& name : builtin_names()) {
    auto qs = build_LH(builtin(name), builtin_center(name));
    std::size_t len = name == "Z3" ? 15 : name == "F2xZ" ? 8 : 10;
    for (const auto& r : verify_quotient(qs, 6, len)) {
      o.require(r.passed, name + " " + r.property);
      if (r.property == "bound_dominance" && r.measured) {
        o.require(*r.measured <= qs.bound.K_prime, name + " K^_H");
        o.detail << name << " K^_H=" << *r.measured << "<=" << qs.bound.K_prime << " ";
      }
    }
  }
  return o;
}

Outcome pipelines() {
  Outcome o;
  auto z2 = builtin("Z2");
  const auto& G = z2.group();
  auto full = theorem_a_pipeline(z2, {G.parse("(1,0)"), G.parse("(0,1)")});
  o.require(full.log.size() == 2, "Z2 peels twice");
  o.require(full.structure.group().describe() == "1", "Z2 ends trivial");
  o.require(!is_empty(full.structure.acceptor()), "trivial-group language nonempty");
  o.require(verify_surjectivity(full.structure, 0).passed, "single coset covered");
  auto z3 = builtin("Z3");
  auto one = theorem_a_pipeline(z3, {builtin_center("Z3")});
  o.require(one.structure.group().describe() == "Z^2", "Z3 quotient is Z^2");
  std::size_t n = 0;
  for (const auto& r : full_suite(one.structure, 6, 15)) {
    ++n;
    o.require(r.passed, "Z3/<(1,1,1)> " + r.property);
  }
  o.detail << "Z2 steps=" << full.log.size() << ", Z3 quotient passed " << n << " checks at max_len 15";
  return o;
}

Outcome fsa_oracle() {
  Outcome o;
  std::mt19937 rng(20240611);
  auto words = all_words_upto(2, 8);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_automaton(rng), b = random_automaton(rng);
    auto i = intersect(a, b), u = unite(a, b), d = boolean(a, b, BooleanOp::Difference), c = complement(a);
    auto ma = minimize(a);
    for (const auto& w : words) {
      bool x = accepts(a, w), y = accepts(b, w);
      bool ok = accepts(i, w) == (x && y) && accepts(u, w) == (x || y) && accepts(d, w) == (x && !y) &&
                accepts(c, w) == !x && accepts(ma, w) == x;
      if (!ok) o.require(false, "trial " + std::to_string(trial));
    }
  }
  o.detail << "20 automata, " << words.size() << " words each";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"fixture soundness", fixture_soundness},
      {"L_H on Z2 with z=(1,1)", z2_construction},
      {"L_H on F2xZ with z central", f2z_construction},
      {"automaton L_H equals the path definition", formula_equivalence},
      {"splice/strip calculus", splice_calculus},
      {"uniqueness corollary and mutants", lemma_suite},
      {"subdivisions and visual lemma", neumann_shapiro},
      {"bound chain and K^_H <= K'", bound_chain},
      {"theorem A pipelines", pipelines},
      {"FSA algebra oracle", fsa_oracle},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %zu: %s [%lld ms] %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].name,
                static_cast<long long>(ms), o.detail.str().c_str());
    std::fflush(stdout);
    failed += !o.passed;
  }
  return failed ? 1 : 0;
}
