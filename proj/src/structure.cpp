#include "biauto/structure.hpp"

#include <algorithm>
#include <unordered_map>

#include "biauto/error.hpp"

namespace biauto {

BiautomaticStructure::BiautomaticStructure(GroupModel model, Automaton acceptor, std::size_t K)
    : model_(std::move(model)), acceptor_(std::move(acceptor)), K_(K) {
  if (!(acceptor_.alphabet() == model_.alphabet()))
    fail(ErrorKind::Input, "acceptor alphabet differs from the generator alphabet");
  if (!model_.is_symmetric())
    fail(ErrorKind::Input, "generating set is not symmetric: some letter image has no inverse letter");
  if (is_empty(acceptor_)) fail(ErrorKind::Input, "the acceptor's language is empty");
}

VerificationReport VerificationReport::make(std::string property, std::string bound_name, std::size_t bound) {
  VerificationReport r;
  r.property = std::move(property);
  r.bound_name = std::move(bound_name);
  r.bound = bound;
  return r;
}

void VerificationReport::add_witness(std::vector<std::string> w, std::size_t cap) {
  passed = false;
  ++witness_total;
  if (witnesses.size() < cap) witnesses.push_back(std::move(w));
}

VerificationReport verify_surjectivity(const BiautomaticStructure& bs, std::size_t radius,
                                       const VerifyOptions& options) {
  auto r = VerificationReport::make("surjectivity", "radius", radius);
  r.notes.emplace_back("max_word_length", std::to_string(radius + options.slack));
  Ball b = ball(bs.model(), radius);
  std::unordered_map<Element, bool, ElementHash> hit;
  for (const auto& g : b.members) hit.emplace(g, false);
  for (const auto& w : enumerate_words(bs.acceptor(), radius + options.slack)) {
    if (auto it = hit.find(bs.evaluate(w)); it != hit.end()) it->second = true;
  }
  for (const auto& g : b.members)
    if (!hit[g]) r.add_witness({bs.group().format(g)}, options.witness_cap);
  return r;
}

VerificationReport verify_uniqueness(const BiautomaticStructure& bs, std::size_t max_len,
                                     const VerifyOptions& options) {
  auto r = VerificationReport::make("uniqueness", "max_len", max_len);
  std::unordered_map<Element, Word, ElementHash> first;
  for (const auto& w : enumerate_words(bs.acceptor(), max_len)) {
    Element g = bs.evaluate(w);
    auto [it, fresh] = first.emplace(g, w);
    if (!fresh)
      r.add_witness({bs.alphabet().format(it->second), bs.alphabet().format(w), bs.group().format(g)},
                    options.witness_cap);
  }
  return r;
}

VerificationReport verify_fellow_traveller(const BiautomaticStructure& bs, std::size_t max_len,
                                           const VerifyOptions& options) {
  auto r = VerificationReport::make("fellow_traveller", "max_len", max_len);
  r.notes.emplace_back("claimed_K", std::to_string(bs.K()));
  const auto& G = bs.group();
  const auto& model = bs.model();
  const auto words = enumerate_words(bs.acceptor(), max_len);

  std::vector<Element> values;
  values.reserve(words.size());
  std::unordered_map<Element, std::vector<std::size_t>, ElementHash> index;
  for (std::size_t i = 0; i < words.size(); ++i) {
    values.push_back(bs.evaluate(words[i]));
    index[values.back()].push_back(i);
  }

  // a ranges over the empty word and one letter per distinct image
  struct Perturbation {
    std::string label;
    Element value, inverse;
  };
  std::vector<Perturbation> perturbations{{"", G.identity(), G.identity()}};
  for (Letter x = 0; x < bs.alphabet().size(); ++x) {
    const Element& a = model.image(x);
    bool dup = G.is_identity(a) || std::any_of(perturbations.begin(), perturbations.end(),
                                               [&](const Perturbation& p) { return p.value == a; });
    if (!dup) perturbations.push_back({bs.alphabet().symbol(x), a, G.inverse(a)});
  }

  WordMetric metric(model, options.search_radius);
  std::size_t measured = 0;
  auto scan = [&](const char* side, std::size_t i, std::size_t j, const Perturbation& p, bool left) {
    const Word& v = words[i];
    const Word& w = words[j];
    const std::size_t horizon = std::max(v.size(), w.size());
    Element vt = left ? p.value : G.identity();
    Element wt = G.identity();
    for (std::size_t t = 0; t <= horizon; ++t) {
      if (t > 0) {
        if (t <= v.size()) vt = G.multiply(vt, model.image(v[t - 1]));
        if (t <= w.size()) wt = G.multiply(wt, model.image(w[t - 1]));
      }
      std::size_t d = vt == wt ? 0 : metric.distance(vt, wt);
      measured = std::max(measured, d);
      if (d > bs.K())
        r.add_witness({side, bs.alphabet().format(v), bs.alphabet().format(w), p.label, std::to_string(t),
                       std::to_string(d)},
                      options.witness_cap);
    }
  };

  for (std::size_t i = 0; i < words.size(); ++i) {
    for (const auto& p : perturbations) {
      // right: v = w a, so w = v a^-1
      if (auto it = index.find(G.multiply(values[i], p.inverse)); it != index.end())
        for (std::size_t j : it->second)
          if (j != i) scan("right", i, j, p, false);
      if (G.is_identity(p.value)) continue;  // left with a = e repeats the right scan
      // left: a v = w
      if (auto it = index.find(G.multiply(p.value, values[i])); it != index.end())
        for (std::size_t j : it->second) scan("left", i, j, p, true);
    }
  }
  r.measured = measured;
  return r;
}

namespace {

// Acceptor for (x1-run | X1-run)(x2-run | X2-run)...: letters come in
// (positive, negative) pairs per axis, runs appear in axis order, each axis
// at most once with one sign. Every state but the sink accepts.
Automaton axis_run_acceptor(const Alphabet& alphabet, std::size_t axes) {
  const std::size_t k = alphabet.size();
  // state 0 = start, 1 + 2*axis + sign, last = dead
  const State dead = static_cast<State>(1 + 2 * axes);
  std::vector<State> table((dead + 1) * k, dead);
  std::vector<std::string> names{"S"};
  for (std::size_t a = 0; a < axes; ++a)
    for (std::size_t sign = 0; sign < 2; ++sign) names.push_back("S" + alphabet.symbol(static_cast<Letter>(2 * a + sign)));
  names.push_back("dead");
  auto run_state = [](std::size_t axis, std::size_t sign) { return static_cast<State>(1 + 2 * axis + sign); };
  for (std::size_t a = 0; a < axes; ++a)
    for (std::size_t sign = 0; sign < 2; ++sign) table[0 * k + 2 * a + sign] = run_state(a, sign);
  for (std::size_t a = 0; a < axes; ++a)
    for (std::size_t sign = 0; sign < 2; ++sign) {
      State s = run_state(a, sign);
      table[s * k + 2 * a + sign] = s;
      for (std::size_t b = a + 1; b < axes; ++b)
        for (std::size_t sb = 0; sb < 2; ++sb) table[s * k + 2 * b + sb] = run_state(b, sb);
    }
  std::vector<bool> accept(dead + 1, true);
  accept[dead] = false;
  return Automaton(alphabet, std::move(table), 0, std::move(accept), std::move(names));
}

BiautomaticStructure free_abelian_fixture(std::size_t rank, std::size_t K) {
  static const char* axes[] = {"a", "b", "c", "d"};
  std::vector<std::string> letters;
  for (std::size_t i = 0; i < rank; ++i) {
    std::string lower = axes[i];
    std::string upper(1, static_cast<char>(lower[0] - 'a' + 'A'));
    letters.push_back(lower);
    letters.push_back(upper);
  }
  Alphabet alphabet(letters);
  Group g = Group::abelian(rank);
  std::vector<Element> images;
  for (std::size_t i = 0; i < rank; ++i)
    for (Int sign : {1, -1}) {
      Element e = g.identity();
      e.data[i] = sign;
      images.push_back(e);
    }
  return BiautomaticStructure(GroupModel(g, alphabet, images), axis_run_acceptor(alphabet, rank), K);
}

// Freely reduced words over x, X, y, Y followed by a z-run or a Z-run.
BiautomaticStructure f2z_fixture(std::size_t K) {
  Alphabet alphabet({"x", "X", "y", "Y", "z", "Z"});
  Group g = Group::product(Group::free({"x", "y"}), Group::abelian(1));
  std::vector<Element> images{g.parse("[x | (0)]"),   g.parse("[x^-1 | (0)]"), g.parse("[y | (0)]"),
                              g.parse("[y^-1 | (0)]"), g.parse("[e | (1)]"),    g.parse("[e | (-1)]")};
  // states: 0 S, 1 Sx, 2 SX, 3 Sy, 4 SY, 5 Sz, 6 SZ, 7 dead
  const std::size_t k = 6;
  const State dead = 7;
  std::vector<State> table(8 * k, dead);
  for (State s = 0; s <= 4; ++s) {
    for (Letter x = 0; x < 4; ++x) {
      bool cancels = s != 0 && (s - 1) == (x ^ 1);  // letter undoes the previous one
      table[s * k + x] = cancels ? dead : static_cast<State>(x + 1);
    }
    table[s * k + 4] = 5;
    table[s * k + 5] = 6;
  }
  table[5 * k + 4] = 5;
  table[6 * k + 5] = 6;
  std::vector<bool> accept(8, true);
  accept[dead] = false;
  Automaton m(alphabet, std::move(table), 0, std::move(accept), {"S", "Sx", "SX", "Sy", "SY", "Sz", "SZ", "dead"});
  return BiautomaticStructure(GroupModel(g, alphabet, images), std::move(m), K);
}

}  // namespace

std::vector<std::string> builtin_names() { return {"Z2", "Z3", "F2xZ"}; }

BiautomaticStructure builtin(const std::string& name) {
  if (name == "Z2") return free_abelian_fixture(2, 2);
  if (name == "Z3") return free_abelian_fixture(3, 2);
  if (name == "F2xZ") return f2z_fixture(2);
  fail(ErrorKind::Input, "unknown builtin structure '" + name + "' (known: Z2, Z3, F2xZ)");
}

Element builtin_center(const std::string& name) {
  if (name == "Z2") return Group::abelian(2).parse("(1,1)");
  if (name == "Z3") return Group::abelian(3).parse("(1,1,1)");
  if (name == "F2xZ") return builtin("F2xZ").group().parse("[e | (1)]");
  fail(ErrorKind::Input, "unknown builtin structure '" + name + "' (known: Z2, Z3, F2xZ)");
}

}  // namespace biauto
