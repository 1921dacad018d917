#include "biauto/central.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "biauto/error.hpp"

namespace biauto {

namespace {

constexpr std::size_t kMaxLiveSetLoops = 20;

// Generator of the solution lattice of sum_i x_i * rows[i] = 0 in the center
// Z^f + (Z/moduli), restricted to the listed variables. Returns nullopt when
// only the zero solution exists; throws Structural when the lattice has
// rank > 1.
std::optional<lattice::Vec> rank_one_relation(const lattice::Matrix& free_rows, const lattice::Matrix& torsion_rows,
                                              const lattice::Vec& moduli) {
  const std::size_t vars = free_rows.size();
  const std::size_t fcols = vars ? free_rows[0].size() : 0;
  const std::size_t tcols = moduli.size();
  lattice::Matrix m;
  for (std::size_t i = 0; i < vars; ++i) {
    lattice::Vec row(free_rows[i]);
    row.insert(row.end(), torsion_rows[i].begin(), torsion_rows[i].end());
    m.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < tcols; ++j) {
    lattice::Vec row(fcols + tcols, 0);
    row[fcols + j] = moduli[j];
    m.push_back(std::move(row));
  }
  auto kernel = lattice::left_kernel(m, fcols + tcols);
  lattice::Matrix projected;
  for (auto& k : kernel) projected.emplace_back(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(vars));
  auto basis = lattice::hermite_basis(projected, vars);
  if (basis.empty()) return std::nullopt;
  if (basis.size() > 1) fail(ErrorKind::Structural, "relation lattice has rank > 1; central loops are dependent");
  return basis[0];
}

}  // namespace

std::string loop_label(const Automaton& m, const Loop& loop) {
  return m.alphabet().format(loop.letters) + "@" + m.name(loop.states.front());
}

std::vector<CentralLoop> find_central_loops(const BiautomaticStructure& bs, std::size_t loop_cap) {
  std::vector<CentralLoop> out;
  for (auto& loop : enumerate_simple_loops(bs.acceptor(), {true, loop_cap})) {
    Element g = bs.evaluate(loop.letters);
    if (!bs.model().is_central(g)) continue;
    auto coords = bs.group().center_coordinates({g});
    out.push_back({std::move(loop), std::move(g), coords.free[0], coords.torsion[0]});
  }
  return out;
}

VerificationReport check_simplicity(const BiautomaticStructure& bs, std::size_t loop_cap) {
  auto r = VerificationReport::make("simplicity", "states", bs.acceptor().state_count());
  const auto& m = bs.acceptor();
  auto loops = enumerate_simple_loops(m, {true, loop_cap});
  std::vector<bool> central;
  for (const auto& l : loops) central.push_back(bs.model().is_central(bs.evaluate(l.letters)));
  for (std::size_t i = 0; i < loops.size(); ++i)
    for (std::size_t j = 0; j < loops.size(); ++j) {
      if (i == j || !central[i] || (central[j] && j < i)) continue;
      for (State s : loops[i].states)
        if (loops[j].visits(s)) {
          r.add_witness({loop_label(m, loops[i]), loop_label(m, loops[j]),
                         m.name(s)},
                        32);
          break;
        }
    }
  r.notes.emplace_back("live_simple_loops", std::to_string(loops.size()));
  return r;
}

std::vector<LiveSet> enumerate_live_sets(const BiautomaticStructure& bs, const std::vector<CentralLoop>& loops) {
  const auto& m = bs.acceptor();
  const std::size_t n = loops.size();
  if (n > kMaxLiveSetLoops)
    fail(ErrorKind::Resource, "live-set enumeration supports at most " + std::to_string(kMaxLiveSetLoops) +
                                  " central loops, got " + std::to_string(n));
  std::vector<std::uint32_t> touch(m.state_count(), 0);
  for (std::size_t i = 0; i < n; ++i)
    for (State s : loops[i].loop.states) touch[s] |= (1u << i);

  // BFS over (state, touched-mask); discovery order is shortlex order of the
  // discovering words.
  using Node = std::pair<State, std::uint32_t>;
  std::map<Node, std::size_t> seen;
  std::vector<Node> nodes;
  std::vector<std::pair<std::size_t, Letter>> parent;
  auto start = Node{m.start(), touch[m.start()]};
  seen.emplace(start, 0);
  nodes.push_back(start);
  parent.emplace_back(SIZE_MAX, 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto [s, mask] = nodes[i];
    for (Letter x = 0; x < m.alphabet().size(); ++x) {
      State t = m.next(s, x);
      Node nt{t, mask | touch[t]};
      if (seen.emplace(nt, nodes.size()).second) {
        nodes.push_back(nt);
        parent.emplace_back(i, x);
      }
    }
  }
  auto word_of = [&](std::size_t i) {
    Word w;
    for (; parent[i].first != SIZE_MAX; i = parent[i].first) w.push_back(parent[i].second);
    std::reverse(w.begin(), w.end());
    return w;
  };

  std::map<std::uint32_t, std::size_t> witness;  // subset mask -> node
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!m.is_accept(nodes[i].first)) continue;
    std::uint32_t full = nodes[i].second;
    for (std::uint32_t sub = full;; sub = (sub - 1) & full) {
      witness.emplace(sub, i);
      if (sub == 0) break;
    }
  }
  std::vector<LiveSet> out;
  for (auto [mask, node] : witness) {
    LiveSet ls;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) ls.members.push_back(i);
    ls.witness = word_of(node);
    out.push_back(std::move(ls));
  }
  std::sort(out.begin(), out.end(), [](const LiveSet& a, const LiveSet& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.members < b.members;
  });
  return out;
}

VerificationReport check_independence(const Group& group, const std::vector<Element>& elements,
                                      const std::vector<std::string>& labels) {
  auto r = VerificationReport::make("independence", "elements", elements.size());
  auto coords = group.center_coordinates(elements);
  const std::size_t fcols = group.center_free_rank();
  if (lattice::rank(coords.free, fcols) == elements.size()) return r;
  auto kernel = lattice::left_kernel(coords.free, fcols);
  lattice::Vec relation = lattice::primitive(kernel.at(0));
  // scale until the torsion part vanishes as well
  Int k = 1;
  for (std::size_t j = 0; j < coords.moduli.size(); ++j) {
    Int t = 0;
    for (std::size_t i = 0; i < elements.size(); ++i)
      t = lattice::mod(t + lattice::mul(relation[i], coords.torsion[i][j]), coords.moduli[j]);
    k = lattice::lcm(k, coords.moduli[j] / lattice::gcd(t, coords.moduli[j]));
  }
  std::string coeffs, names;
  for (std::size_t i = 0; i < relation.size(); ++i) {
    coeffs += (i ? "," : "") + std::to_string(lattice::mul(k, relation[i]));
    names += (i ? "," : "") + (i < labels.size() ? labels[i] : std::to_string(i));
  }
  r.add_witness({coeffs, names}, 32);
  return r;
}

VerificationReport check_independence(const BiautomaticStructure& bs, const std::vector<CentralLoop>& loops,
                                      const LiveSet& set) {
  std::vector<Element> elems;
  std::vector<std::string> labels;
  for (std::size_t i : set.members) {
    elems.push_back(loops.at(i).element);
    labels.push_back(loop_label(bs.acceptor(), loops[i].loop));
  }
  return check_independence(bs.group(), elems, labels);
}

Element CentralCycle::element(const Group& g) const {
  Element acc = g.identity();
  for (const auto& t : terms) acc = g.multiply(acc, g.power(t.loop.element, t.coefficient));
  return acc;
}

bool CentralCycle::is_primitive() const {
  Int d = 0;
  for (const auto& t : terms) d = lattice::gcd(d, t.coefficient);
  return d == 1;
}

CentralCycle CentralCycle::scaled(Int k) const {
  CentralCycle c(*this);
  for (auto& t : c.terms) t.coefficient = lattice::mul(t.coefficient, k);
  return c;
}

std::string CentralCycle::label(const Automaton& m) const {
  if (terms.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) s += " + ";
    if (terms[i].coefficient != 1) s += std::to_string(terms[i].coefficient) + "*";
    s += loop_label(m, terms[i].loop.loop);
  }
  return s;
}

std::vector<ZCycle> find_primitive_z_cycles(const BiautomaticStructure& bs, const Element& z) {
  const auto& G = bs.group();
  if (!bs.model().is_central(z)) fail(ErrorKind::Precondition, "z = " + G.format(z) + " is not central");
  if (!G.has_infinite_order(z)) fail(ErrorKind::Precondition, "z = " + G.format(z) + " has finite order");
  auto loops = find_central_loops(bs);
  auto zc = G.center_coordinates({z});
  auto moduli = G.center_moduli();

  std::vector<ZCycle> out;
  for (const auto& ls : enumerate_live_sets(bs, loops)) {
    if (ls.members.empty()) continue;
    auto ind = check_independence(bs, loops, ls);
    if (!ind.passed)
      fail(ErrorKind::Structural, "live set is linearly dependent (relation " + ind.witnesses[0][0] + " on " +
                                      ind.witnesses[0][1] + "); the structure lacks uniqueness");
    lattice::Matrix fr, tr;
    for (std::size_t i : ls.members) {
      fr.push_back(loops[i].free);
      tr.push_back(loops[i].torsion);
    }
    lattice::Vec nz(zc.free[0]), nt(zc.torsion[0]);
    for (auto& x : nz) x = -x;
    for (auto& x : nt) x = -x;
    fr.push_back(nz);
    tr.push_back(nt);
    auto gen = rank_one_relation(fr, tr, moduli);
    if (!gen) continue;
    const std::size_t k = ls.members.size();
    Int sign = (*gen)[0] > 0 ? 1 : -1;
    bool uniform = true;
    for (std::size_t i = 0; i < k; ++i)
      if ((*gen)[i] * sign <= 0) uniform = false;
    if (!uniform) continue;
    ZCycle zc_out;
    zc_out.members = ls.members;
    for (std::size_t i = 0; i < k; ++i) zc_out.cycle.terms.push_back({loops[ls.members[i]], (*gen)[i] * sign});
    zc_out.exponent = (*gen)[k] * sign;
    out.push_back(std::move(zc_out));
  }
  return out;
}

namespace {

struct Anchor {
  std::size_t term;
  std::size_t time;   // first visit
  Word word;          // loop word based at the first-visit state
  std::size_t runs;   // consecutive full traversals starting at `time`
};

std::vector<Anchor> anchors(const Path& q, const CentralCycle& c, bool require_all) {
  std::vector<Anchor> out;
  for (std::size_t i = 0; i < c.terms.size(); ++i) {
    const Loop& loop = c.terms[i].loop.loop;
    std::optional<std::size_t> t;
    for (std::size_t k = 0; k < q.visited.size(); ++k)
      if (loop.visits(q.visited[k])) {
        t = k;
        break;
      }
    if (!t) {
      if (require_all) fail(ErrorKind::Precondition, "path is not compatible with the cycle: it misses a loop");
      return {};
    }
    Anchor a{i, *t, loop.word_from(q.visited[*t]), 0};
    std::size_t pos = *t;
    while (pos + a.word.size() <= q.letters.size() &&
           std::equal(a.word.begin(), a.word.end(), q.letters.begin() + static_cast<std::ptrdiff_t>(pos))) {
      ++a.runs;
      pos += a.word.size();
    }
    out.push_back(std::move(a));
  }
  std::sort(out.begin(), out.end(), [](const Anchor& x, const Anchor& y) { return x.time < y.time; });
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i].time == out[i - 1].time)
      fail(ErrorKind::Structural, "two cycle loops share a first-visit state; loops are not disjoint");
  return out;
}

}  // namespace

Path splice(const Automaton& m, const Path& pi, const CentralCycle& c) {
  auto as = anchors(pi, c, true);
  Word out;
  std::size_t cursor = 0;
  for (const auto& a : as) {
    out.insert(out.end(), pi.letters.begin() + static_cast<std::ptrdiff_t>(cursor),
               pi.letters.begin() + static_cast<std::ptrdiff_t>(a.time));
    for (Int k = 0; k < c.terms[a.term].coefficient; ++k) out.insert(out.end(), a.word.begin(), a.word.end());
    cursor = a.time;
  }
  out.insert(out.end(), pi.letters.begin() + static_cast<std::ptrdiff_t>(cursor), pi.letters.end());
  return run(m, out, pi.origin);
}

bool contains(const Automaton&, const Path& q, const CentralCycle& c) {
  if (c.terms.empty()) return true;
  auto as = anchors(q, c, false);
  if (as.empty()) return false;
  return std::all_of(as.begin(), as.end(), [&](const Anchor& a) {
    return static_cast<Int>(a.runs) >= c.terms[a.term].coefficient;
  });
}

StripResult strip(const Automaton& m, const Path& q, const CentralCycle& c) {
  if (c.terms.empty() || !contains(m, q, c)) return {q, 0};
  auto as = anchors(q, c, true);
  Int mult = INT64_MAX;
  for (const auto& a : as) mult = std::min(mult, static_cast<Int>(a.runs) / c.terms[a.term].coefficient);
  Word w = q.letters;
  for (auto it = as.rbegin(); it != as.rend(); ++it) {
    std::size_t len = static_cast<std::size_t>(mult * c.terms[it->term].coefficient) * it->word.size();
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(it->time), w.begin() + static_cast<std::ptrdiff_t>(it->time + len));
  }
  return {run(m, w, q.origin), mult};
}

CycleConstants compute_cycle_constants(const BiautomaticStructure& bs, const Element& z) {
  const auto& G = bs.group();
  CycleConstants out;
  auto loops = find_central_loops(bs);
  for (auto& zc : find_primitive_z_cycles(bs, z))
    if (zc.positive()) out.positive.push_back(std::move(zc));
  if (out.positive.empty())
    fail(ErrorKind::Structural, "no positive Z-cycle for z = " + G.format(z) + "; the coset language would be empty");
  auto moduli = G.center_moduli();

  std::map<std::size_t, Int> m_of;
  for (const auto& zc : out.positive) {
    out.A = std::max(out.A, zc.exponent);
    for (std::size_t gi : zc.members) {
      if (m_of.count(gi)) continue;
      LoopPowerClass cls{gi, {}, 1};
      for (std::size_t j = 0; j < loops.size(); ++j) {
        // p * other = q * loop with p, q >= 1
        lattice::Vec nf(loops[gi].free), nt(loops[gi].torsion);
        for (auto& x : nf) x = -x;
        for (auto& x : nt) x = -x;
        auto gen = rank_one_relation({loops[j].free, nf}, {loops[j].torsion, nt}, moduli);
        if (!gen) continue;
        Int p = (*gen)[0], q = (*gen)[1];
        if (p < 0) {
          p = -p;
          q = -q;
        }
        if (p == 0 || q <= 0) continue;
        cls.members.push_back(j);
        cls.m = lattice::lcm(cls.m, q);
      }
      m_of[gi] = cls.m;
      out.classes.push_back(std::move(cls));
    }
  }
  for (const auto& zc : out.positive) {
    Int k = 1;
    for (std::size_t i = 0; i < zc.members.size(); ++i) {
      Int mg = m_of.at(zc.members[i]);
      k = lattice::lcm(k, mg / lattice::gcd(mg, zc.cycle.terms[i].coefficient));
    }
    std::vector<Int> rho;
    for (const auto& t : zc.cycle.terms) {
      rho.push_back(lattice::mul(k, t.coefficient));
      out.R = std::max(out.R, rho.back());
    }
    out.rho.push_back(std::move(rho));
  }
  return out;
}

}  // namespace biauto
