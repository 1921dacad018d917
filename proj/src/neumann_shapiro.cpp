#include "biauto/neumann_shapiro.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "biauto/error.hpp"

namespace biauto {

namespace {

void require_abelian(const BiautomaticStructure& bs) {
  if (!bs.group().is_abelian())
    fail(ErrorKind::Input, "model " + bs.group().describe() + " is not abelian");
  if (bs.group().center_free_rank() == 0) fail(ErrorKind::Input, "model has free rank 0");
}

lattice::Vec free_part(const Group& g, const Element& e) { return g.center_coordinates({e}).free[0]; }

Int l1(const lattice::Vec& v) {
  Int s = 0;
  for (Int x : v) s = lattice::add(s, x < 0 ? -x : x);
  return s;
}

// Coefficients of p in the basis, if p is in the span.
std::optional<std::vector<lattice::Rational>> coordinates(const std::vector<Direction>& basis, const lattice::Vec& p) {
  return lattice::solve_in_span(lattice::Matrix(basis.begin(), basis.end()), p);
}

bool independent(const std::vector<Direction>& v) {
  if (v.empty()) return true;
  return lattice::rank(lattice::Matrix(v.begin(), v.end()), v[0].size()) == v.size();
}

std::string render(const lattice::Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

long double dot(const lattice::Vec& a, const lattice::Vec& b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long double>(a[i]) * static_cast<long double>(b[i]);
  return s;
}

// Angle from d to the nearest ray of the closed cone on `face`.
double cone_angle(const Direction& d, const std::vector<Direction>& face) {
  const long double dn = std::sqrt(dot(d, d));
  long double best = -1;
  for (const auto& v : face) best = std::max(best, dot(d, v) / (dn * std::sqrt(dot(v, v))));
  const std::size_t n = face.size();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<const Direction*> sub;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) sub.push_back(&face[i]);
    const std::size_t j = sub.size();
    // normal equations G c = b
    std::vector<std::vector<long double>> a(j, std::vector<long double>(j + 1));
    for (std::size_t r = 0; r < j; ++r) {
      for (std::size_t c = 0; c < j; ++c) a[r][c] = dot(*sub[r], *sub[c]);
      a[r][j] = dot(*sub[r], d);
    }
    bool ok = true;
    for (std::size_t c = 0; c < j && ok; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c; r < j; ++r)
        if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
      if (std::fabs(a[piv][c]) < 1e-12L) ok = false;
      std::swap(a[c], a[piv]);
      for (std::size_t r = 0; r < j && ok; ++r) {
        if (r == c) continue;
        long double f = a[r][c] / a[c][c];
        for (std::size_t k = c; k <= j; ++k) a[r][k] -= f * a[c][k];
      }
    }
    if (!ok) continue;
    std::vector<long double> p(d.size(), 0);
    for (std::size_t r = 0; r < j && ok; ++r) {
      long double coef = a[r][j] / a[r][r];
      if (coef <= 0) ok = false;
      for (std::size_t k = 0; k < d.size(); ++k) p[k] += coef * static_cast<long double>((*sub[r])[k]);
    }
    if (!ok) continue;
    long double pn = 0;
    for (auto x : p) pn += x * x;
    best = std::max(best, std::sqrt(pn) / dn);
  }
  return static_cast<double>(std::acos(std::clamp(best, -1.0L, 1.0L)));
}

std::size_t ball_radius_for(std::size_t delta, double epsilon) {
  double s = std::sin(std::min(epsilon, std::numbers::pi / 2));
  return static_cast<std::size_t>(std::ceil(static_cast<double>(delta) / s)) + delta;
}

}  // namespace

Direction direction_of(const lattice::Vec& v) {
  if (lattice::is_zero(v)) fail(ErrorKind::Input, "direction of the zero vector");
  return lattice::primitive(v);
}

std::vector<Direction> Simplex::key() const {
  auto k = vertices;
  std::sort(k.begin(), k.end());
  return k;
}

std::vector<std::size_t> Subdivision::f_vector() const {
  std::vector<std::size_t> f;
  for (const auto& s : simplices) {
    if (f.size() <= s.dimension()) f.resize(s.dimension() + 1, 0);
    ++f[s.dimension()];
  }
  return f;
}

std::vector<LoopAnchor> loop_sequence(const Automaton& m, const Path& pi) {
  auto loops = enumerate_simple_loops(m);
  std::map<State, std::size_t> owner;
  for (std::size_t i = 0; i < loops.size(); ++i)
    for (State s : loops[i].states)
      if (!owner.emplace(s, i).second)
        fail(ErrorKind::Structural, "state " + m.name(s) + " lies on two simple loops (simplicity check fails)");
  std::vector<LoopAnchor> out;
  std::optional<std::size_t> prev;
  for (std::size_t t = 0; t < pi.visited.size(); ++t) {
    auto it = owner.find(pi.visited[t]);
    if (it == owner.end() || it->second == prev) continue;
    out.push_back({t, loops[it->second]});
    prev = it->second;
  }
  return out;
}

std::vector<Path> simple_accepted_paths(const Automaton& m) {
  auto live = live_mask(m);
  std::vector<Path> out;
  if (!live[m.start()]) return out;
  std::vector<bool> on(m.state_count(), false);
  Path cur{m.start(), {}, {m.start()}};
  std::function<void(State)> dfs = [&](State s) {
    if (m.is_accept(s)) out.push_back(cur);
    on[s] = true;
    for (Letter x = 0; x < m.alphabet().size(); ++x) {
      State t = m.next(s, x);
      if (!live[t] || on[t]) continue;
      cur.letters.push_back(x);
      cur.visited.push_back(t);
      dfs(t);
      cur.letters.pop_back();
      cur.visited.pop_back();
    }
    on[s] = false;
  };
  dfs(m.start());
  std::sort(out.begin(), out.end(), [](const Path& a, const Path& b) { return shortlex_less(a.letters, b.letters); });
  return out;
}

Subdivision close_faces(Subdivision s) {
  std::map<std::pair<std::size_t, std::vector<Direction>>, Simplex> all;
  for (const auto& x : s.simplices) all.emplace(std::make_pair(x.vertices.size(), x.key()), x);
  for (const auto& x : s.simplices) {
    const std::size_t n = x.vertices.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      Simplex f;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) f.vertices.push_back(x.vertices[i]);
      all.emplace(std::make_pair(f.vertices.size(), f.key()), f);
    }
  }
  s.simplices.clear();
  for (auto& [k, v] : all) s.simplices.push_back(std::move(v));
  return s;
}

Subdivision build_subdivision(const BiautomaticStructure& bs) {
  require_abelian(bs);
  const auto& m = bs.acceptor();
  Subdivision out;
  out.rank = bs.group().center_free_rank();
  for (const auto& pi : simple_accepted_paths(m)) {
    auto anchors = loop_sequence(m, pi);
    if (anchors.empty()) continue;
    Simplex s;
    s.source = pi.letters;
    for (const auto& a : anchors) {
      auto v = free_part(bs.group(), bs.evaluate(a.loop.letters));
      if (lattice::is_zero(v))
        fail(ErrorKind::Structural, "loop " + loop_label(m, a.loop) + " has no free part; no direction");
      s.vertices.push_back(direction_of(v));
    }
    if (!independent(s.vertices))
      fail(ErrorKind::Structural, "loop directions along path '" + bs.alphabet().format(pi.letters) +
                                      "' are dependent (independence check fails)");
    out.simplices.push_back(std::move(s));
  }
  return close_faces(std::move(out));
}

VerificationReport verify_subdivision(const Subdivision& s, std::size_t sample_radius, std::size_t witness_cap) {
  auto r = VerificationReport::make("subdivision", "sample_radius", sample_radius);
  std::vector<bool> ok(s.simplices.size());
  for (std::size_t i = 0; i < s.simplices.size(); ++i) {
    ok[i] = independent(s.simplices[i].vertices);
    if (!ok[i]) {
      std::string v;
      for (const auto& d : s.simplices[i].vertices) v += render(d);
      r.add_witness({"dependent", v}, witness_cap);
    }
  }
  // nonzero points of the L1 ball, by norm then lexicographically
  const Int rad = static_cast<Int>(sample_radius);
  std::vector<lattice::Vec> points;
  lattice::Vec p(s.rank, 0);
  std::function<void(std::size_t, Int)> gen = [&](std::size_t i, Int budget) {
    if (i == s.rank) {
      if (!lattice::is_zero(p)) points.push_back(p);
      return;
    }
    for (Int x = -budget; x <= budget; ++x) {
      p[i] = x;
      gen(i + 1, budget - (x < 0 ? -x : x));
    }
    p[i] = 0;
  };
  gen(0, rad);
  std::stable_sort(points.begin(), points.end(),
                   [](const lattice::Vec& a, const lattice::Vec& b) { return l1(a) < l1(b); });
  for (const auto& q : points) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < s.simplices.size(); ++i) {
      if (!ok[i]) continue;
      auto c = coordinates(s.simplices[i].vertices, q);
      if (c && std::all_of(c->begin(), c->end(), [](const lattice::Rational& x) { return x.numerator() > 0; })) ++hits;
    }
    if (hits != 1) r.add_witness({render(q), std::to_string(hits)}, witness_cap);
  }
  r.notes.emplace_back("points", std::to_string(points.size()));
  return r;
}

Word PathNormalForm::word() const {
  Word out;
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const auto& a = anchors[i];
    out.insert(out.end(), pi.letters.begin() + static_cast<std::ptrdiff_t>(cursor),
               pi.letters.begin() + static_cast<std::ptrdiff_t>(a.time));
    Word w = a.loop.word_from(pi.visited[a.time]);
    for (Int k = 0; k < exponents[i]; ++k) out.insert(out.end(), w.begin(), w.end());
    cursor = a.time;
  }
  out.insert(out.end(), pi.letters.begin() + static_cast<std::ptrdiff_t>(cursor), pi.letters.end());
  return out;
}

PathNormalForm path_normal_form(const BiautomaticStructure& bs, const Element& g) {
  require_abelian(bs);
  const auto& G = bs.group();
  G.validate(g);
  const auto target = free_part(G, g);
  for (const auto& pi : simple_accepted_paths(bs.acceptor())) {
    auto anchors = loop_sequence(bs.acceptor(), pi);
    Element base = bs.evaluate(pi.letters);
    lattice::Vec rest = target, bf = free_part(G, base);
    for (std::size_t i = 0; i < rest.size(); ++i) rest[i] = lattice::add(rest[i], -bf[i]);
    std::vector<Int> n;
    if (anchors.empty()) {
      if (base != g) continue;
    } else {
      lattice::Matrix gens;
      for (const auto& a : anchors) gens.push_back(free_part(G, bs.evaluate(a.loop.letters)));
      if (lattice::rank(gens, rest.size()) != gens.size())
        fail(ErrorKind::Structural, "dependent loop directions along a simple path");
      auto c = lattice::solve_in_span(gens, rest);
      if (!c) continue;
      bool good = true;
      for (const auto& x : *c) {
        if (x.denominator() != 1 || x.numerator() < 0) good = false;
        n.push_back(x.numerator());
      }
      if (!good) continue;
      Element e = base;
      for (std::size_t i = 0; i < anchors.size(); ++i)
        e = G.multiply(e, G.power(bs.evaluate(anchors[i].loop.letters), n[i]));
      if (e != g) continue;
    }
    PathNormalForm nf{pi, std::move(anchors), std::move(n)};
    if (!accepts(bs.acceptor(), nf.word())) fail(ErrorKind::Structural, "reconstructed normal form is not accepted");
    return nf;
  }
  fail(ErrorKind::Resource, "no normal form for " + G.format(g) + " among the simple-path families");
}

double visual_distance(const lattice::Vec& a, const lattice::Vec& b) {
  if (lattice::is_zero(a) || lattice::is_zero(b)) fail(ErrorKind::Input, "visual distance of the zero vector");
  if (lattice::primitive(a) == lattice::primitive(b)) return 0.0;
  long double c = dot(a, b) / std::sqrt(dot(a, a) * dot(b, b));
  return static_cast<double>(std::acos(std::clamp(c, -1.0L, 1.0L)));
}

VerificationReport visual_lemma_check(const BiautomaticStructure& bs, double epsilon, std::size_t witness_cap) {
  if (!(epsilon > 0)) fail(ErrorKind::Input, "epsilon must be positive");
  require_abelian(bs);
  const auto& G = bs.group();
  const auto& m = bs.acceptor();
  const std::size_t delta = longest_live_simple_path(m);
  const std::size_t br = ball_radius_for(delta, epsilon);
  auto r = VerificationReport::make("visual_lemma", "ball_radius", br);
  std::ostringstream eps;
  eps << epsilon;
  r.notes.emplace_back("epsilon", eps.str());
  r.notes.emplace_back("delta", std::to_string(delta));
  if (delta == 0) {
    r.notes.emplace_back("annulus", "0");
    return r;
  }
  Ball b = ball(bs.model(), 2 * br);
  std::unordered_map<Element, bool, ElementHash> covered;
  for (const auto& g : b.members)
    if (b.length.at(g) > br) covered.emplace(g, false);
  r.notes.emplace_back("annulus", std::to_string(covered.size()));

  const std::size_t cap = 4 * br;
  double worst = 0;
  for (const auto& pi : simple_accepted_paths(m)) {
    auto anchors = loop_sequence(m, pi);
    std::vector<Element> gamma;
    std::vector<lattice::Vec> gf;
    std::vector<std::size_t> len;
    for (const auto& a : anchors) {
      gamma.push_back(bs.evaluate(a.loop.letters));
      gf.push_back(free_part(G, gamma.back()));
      len.push_back(a.loop.length());
    }
    std::vector<Int> n(anchors.size(), 0);
    Element base = bs.evaluate(pi.letters);
    std::function<void(std::size_t, const Element&, std::size_t)> rec = [&](std::size_t i, const Element& e,
                                                                           std::size_t used) {
      if (i == anchors.size()) {
        auto it = covered.find(e);
        if (it == covered.end()) return;
        it->second = true;
        lattice::Vec sum(G.center_free_rank(), 0);
        for (std::size_t k = 0; k < n.size(); ++k)
          for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += n[k] * gf[k][c];
        double angle = visual_distance(free_part(G, e), sum);
        worst = std::max(worst, angle);
        if (angle >= epsilon) r.add_witness({G.format(e), render(sum), std::to_string(angle)}, witness_cap);
        return;
      }
      Element cur = e;
      for (n[i] = 0;; ++n[i]) {
        rec(i + 1, cur, used);
        if (used + len[i] > cap) break;
        used += len[i];
        cur = G.multiply(cur, gamma[i]);
      }
      n[i] = 0;
    };
    if (pi.letters.size() <= cap) rec(0, base, pi.letters.size());
  }
  for (const auto& g : b.members) {
    auto it = covered.find(g);
    if (it == covered.end() || it->second) continue;
    r.add_witness({G.format(g), "no normal form within length " + std::to_string(cap)}, witness_cap);
  }
  std::ostringstream w;
  w << worst;
  r.notes.emplace_back("max_angle", w.str());
  return r;
}

std::vector<Simplex> star(const Subdivision& s, const Direction& d) {
  std::vector<Simplex> out;
  for (const auto& x : s.simplices) {
    if (!independent(x.vertices)) continue;
    auto c = coordinates(x.vertices, d);
    if (c && std::all_of(c->begin(), c->end(), [](const lattice::Rational& v) { return v.numerator() >= 0; })) out.push_back(x);
  }
  return out;
}

Representative find_LH_representative(const BiautomaticStructure& bs, const QuotientStructure& qs, const Element& g,
                                      Int m_cap) {
  require_abelian(bs);
  const auto& G = bs.group();
  const Element& z = qs.z;
  G.validate(g);
  const auto zf = free_part(G, z);
  const Direction dz = direction_of(zf);
  auto sigma = build_subdivision(bs);
  auto st = star(sigma, dz);
  if (st.empty()) fail(ErrorKind::Structural, "direction of z is not covered by the subdivision");

  // distance from [z] to the link of its star
  double link = std::numbers::pi / 2;
  for (const auto& x : st) {
    const std::size_t n = x.vertices.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<Direction> face;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) face.push_back(x.vertices[i]);
      auto c = coordinates(face, dz);
      if (c && std::all_of(c->begin(), c->end(), [](const lattice::Rational& v) { return v.numerator() >= 0; })) continue;
      link = std::min(link, cone_angle(dz, face));
    }
  }
  Representative rep;
  rep.epsilon = link / 3;
  rep.ball_radius = ball_radius_for(longest_live_simple_path(bs.acceptor()), rep.epsilon);
  Int gen_l1 = 1;
  for (const auto& im : bs.model().images()) gen_l1 = std::max(gen_l1, l1(free_part(G, im)));
  const Int outside = lattice::mul(static_cast<Int>(rep.ball_radius), gen_l1);

  Element h = g;
  for (rep.m = 1;; ++rep.m) {
    if (rep.m > m_cap) fail(ErrorKind::Resource, "no suitable power of z up to " + std::to_string(m_cap));
    h = G.multiply(h, z);
    auto hf = free_part(G, h);
    if (l1(hf) > outside && visual_distance(hf, zf) < rep.epsilon) break;
  }
  auto nf = path_normal_form(bs, h);
  Path q = run(bs.acceptor(), nf.word());
  for (bool again = true; again;) {
    again = false;
    for (const auto& c : qs.cycles) {
      auto s = strip(bs.acceptor(), q, c.cycle);
      if (s.multiplicity == 0) continue;
      rep.stripped += s.multiplicity;
      q = s.base;
      again = true;
    }
  }
  rep.word = q.letters;
  if (!accepts(qs.structure.acceptor(), rep.word))
    fail(ErrorKind::Structural, "constructed representative '" + bs.alphabet().format(rep.word) + "' is not in L_H");
  if (!G.cyclic_exponent(z, G.multiply(G.inverse(bs.evaluate(rep.word)), g)))
    fail(ErrorKind::Structural, "constructed representative lies in the wrong coset");
  return rep;
}

std::string export_subdivision(const Subdivision& s) {
  std::ostringstream os;
  os << "rank " << s.rank << '\n';
  for (const auto& x : s.simplices) {
    os << x.dimension();
    for (const auto& v : x.vertices) os << ' ' << render(v);
    os << '\n';
  }
  return os.str();
}

}  // namespace biauto
