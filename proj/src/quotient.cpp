#include "biauto/quotient.hpp"

#include "biauto/error.hpp"

namespace biauto {

namespace {

bool is_block_identity(const std::vector<Int>& block) {
  for (Int x : block)
    if (x != 0) return false;
  return true;
}

// Coordinates of a block of a factor that is merged into the abelian part.
void append_coordinates(const Factor& f, const std::vector<Int>& block, lattice::Vec& out) {
  if (std::holds_alternative<AbelianFactor>(f)) {
    out.insert(out.end(), block.begin(), block.end());
  } else {
    Int e = 0;
    for (Int x : block) e += x > 0 ? 1 : -1;
    out.push_back(e);
  }
}

std::size_t merged_width(const Factor& f) {
  if (auto* ab = std::get_if<AbelianFactor>(&f)) return ab->rank + ab->torsion.size();
  return 1;
}

}  // namespace

Projection Projection::identity(const Group& g) { return quotient(g, {}); }

Projection Projection::quotient(const Group& g, const std::vector<Element>& central) {
  Stage st;
  st.source = g;
  const auto& fs = g.factors();
  std::vector<bool> touched(fs.size(), false);
  for (const auto& c : central) {
    g.validate(c);
    if (!g.in_center(c)) fail(ErrorKind::Precondition, g.format(c) + " is not central");
    auto parts = g.split(c);
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (!is_block_identity(parts[i])) touched[i] = true;
  }
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (touched[i]) st.touched.push_back(i);

  // relation matrix on the merged coordinates
  std::size_t cols = 0;
  lattice::Matrix rel;
  for (std::size_t i : st.touched) {
    if (auto* ab = std::get_if<AbelianFactor>(&fs[i])) {
      for (std::size_t k = 0; k < ab->torsion.size(); ++k) {
        lattice::Vec row(cols + merged_width(fs[i]), 0);
        row[cols + ab->rank + k] = ab->torsion[k];
        rel.push_back(std::move(row));
      }
    }
    cols += merged_width(fs[i]);
  }
  for (auto& row : rel) row.resize(cols, 0);
  for (const auto& c : central) {
    auto parts = g.split(c);
    lattice::Vec row;
    for (std::size_t i : st.touched) append_coordinates(fs[i], parts[i], row);
    if (!row.empty()) rel.push_back(std::move(row));
  }

  AbelianFactor merged;
  if (cols > 0) {
    auto snf = lattice::smith(rel, cols);
    st.V = snf.column_transform;
    st.orders.assign(cols, 0);
    for (std::size_t i = 0; i < snf.diagonal.size(); ++i) st.orders[i] = snf.diagonal[i];
    for (Int d : st.orders) {
      if (d == 0) ++merged.rank;
    }
    for (Int d : st.orders)
      if (d > 1) merged.torsion.push_back(d);
  }

  std::vector<Factor> out;
  st.copy_to.assign(fs.size(), std::nullopt);
  bool merged_nontrivial = merged.rank > 0 || !merged.torsion.empty();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (touched[i]) {
      if (i == st.touched.front() && merged_nontrivial) {
        st.merged_to = out.size();
        out.emplace_back(merged);
      }
      continue;
    }
    st.copy_to[i] = out.size();
    out.push_back(fs[i]);
  }
  if (out.empty()) {
    st.merged_to = 0;
    out.emplace_back(merged);
  }
  st.target = Group(std::move(out));
  Projection p;
  p.stages_.push_back(std::move(st));
  return p;
}

Element Projection::Stage::apply(const Element& g) const {
  auto parts = source.split(g);
  const auto& fs = source.factors();
  std::vector<std::vector<Int>> out(target.factors().size());
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (copy_to[i]) out[*copy_to[i]] = parts[i];
  if (merged_to) {
    lattice::Vec x;
    for (std::size_t i : touched) append_coordinates(fs[i], parts[i], x);
    std::vector<Int> free, tors;
    for (std::size_t j = 0; j < orders.size(); ++j) {
      Int y = 0;
      for (std::size_t k = 0; k < x.size(); ++k) y = lattice::add(y, lattice::mul(x[k], V[k][j]));
      if (orders[j] == 0)
        free.push_back(y);
      else if (orders[j] > 1)
        tors.push_back(lattice::mod(y, orders[j]));
    }
    free.insert(free.end(), tors.begin(), tors.end());
    out[*merged_to] = std::move(free);
  }
  return target.join(out);
}

Element Projection::operator()(const Element& g) const {
  Element x = g;
  for (const auto& st : stages_) x = st.apply(x);
  return x;
}

Projection Projection::then(const Projection& next) const {
  if (!(target() == next.source())) fail(ErrorKind::Precondition, "projections do not compose");
  Projection p(*this);
  p.stages_.insert(p.stages_.end(), next.stages_.begin(), next.stages_.end());
  return p;
}

Automaton build_touch_acceptor(const Automaton& m, const Loop& loop) {
  if (!is_loop_of(m, loop)) fail(ErrorKind::Input, "touch acceptor: not a loop of the automaton");
  const std::size_t k = m.alphabet().size();
  auto table = m.table();
  std::vector<bool> accept(m.state_count(), false);
  for (State s : loop.states) {
    accept[s] = true;
    for (std::size_t x = 0; x < k; ++x) table[s * k + x] = s;
  }
  return Automaton(m.alphabet(), std::move(table), m.start(), std::move(accept), m.names());
}

Automaton build_contains_acceptor(const Automaton& m, const Loop& loop, Int n) {
  if (!is_loop_of(m, loop)) fail(ErrorKind::Input, "contains acceptor: not a loop of the automaton");
  if (!loop.is_simple()) fail(ErrorKind::Input, "contains acceptor: loop is not simple");
  if (n < 1) fail(ErrorKind::Input, "contains acceptor: power must be positive");
  const std::size_t k = m.alphabet().size();
  const std::size_t L = loop.length();
  const std::size_t span = static_cast<std::size_t>(n) * L;
  const std::size_t pre = m.state_count();
  const State yes = static_cast<State>(pre + L * span), no = yes + 1;
  const std::size_t total = pre + L * span + 2;
  auto tracker = [&](std::size_t base, std::size_t step) { return static_cast<State>(pre + base * span + step); };
  auto arrive = [&](State s) { return loop.visits(s) ? tracker(*loop.position(s), 0) : s; };

  std::vector<State> table(total * k);
  std::vector<bool> accept(total, false);
  std::vector<std::string> names(total);
  for (State s = 0; s < pre; ++s) {
    names[s] = m.name(s);
    for (std::size_t x = 0; x < k; ++x) table[s * k + x] = arrive(m.next(s, static_cast<Letter>(x)));
  }
  for (std::size_t b = 0; b < L; ++b)
    for (std::size_t t = 0; t < span; ++t) {
      State id = tracker(b, t);
      names[id] = m.name(loop.states[b]) + "+" + std::to_string(t);
      Letter want = loop.letters[(b + t) % L];
      for (std::size_t x = 0; x < k; ++x)
        table[id * k + x] = x != want ? no : (t + 1 == span ? yes : tracker(b, t + 1));
    }
  for (std::size_t x = 0; x < k; ++x) {
    table[yes * k + x] = yes;
    table[no * k + x] = no;
  }
  accept[yes] = true;
  names[yes] = "contained";
  names[no] = "missed";
  return Automaton(m.alphabet(), std::move(table), arrive(m.start()), std::move(accept), std::move(names));
}

BoundReport compute_bound(const BiautomaticStructure& bs, const Element& z, const BallOptions& options) {
  auto constants = compute_cycle_constants(bs, z);
  BoundReport b;
  b.K = bs.K();
  b.A = constants.A;
  b.R = constants.R;
  WordMetric metric(bs.model());
  b.z_length = metric.length(z);
  auto sz = [](std::size_t v) { return static_cast<Int>(v); };
  b.K1 = static_cast<std::size_t>(lattice::mul(lattice::add(lattice::mul(b.A, sz(b.z_length)), 2), sz(b.K)));
  b.U = ball(bs.model(), b.K1, options).size();
  b.M = live_states(minimize(bs.acceptor())).size();
  Int B = lattice::add(lattice::mul(lattice::mul(b.A, b.R), lattice::add(lattice::mul(sz(b.U), sz(b.M)), 1)), b.A);
  b.B = static_cast<std::size_t>(B);
  b.K_prime = static_cast<std::size_t>(lattice::mul(lattice::add(lattice::mul(B, sz(b.z_length)), 2), sz(b.K)));
  return b;
}

QuotientStructure build_LH(const BiautomaticStructure& bs, const Element& z, const BallOptions& options) {
  const auto& m = bs.acceptor();
  if (!check_simplicity(bs).passed)
    fail(ErrorKind::Precondition, "acceptor fails the simplicity check; L_H is undefined");
  auto cycles = find_primitive_z_cycles(bs, z);
  auto bound = compute_bound(bs, z, options);  // throws when no positive cycle exists
  auto constants = compute_cycle_constants(bs, z);

  auto contains_all = [&](const ZCycle& c) {
    std::optional<Automaton> acc;
    for (const auto& t : c.cycle.terms) {
      auto part = build_contains_acceptor(m, t.loop.loop, t.coefficient);
      acc = acc ? minimize(intersect(*acc, part)) : minimize(part);
    }
    return *acc;
  };
  std::optional<Automaton> compatible;
  for (const auto& c : cycles) {
    if (!c.positive()) continue;
    std::optional<Automaton> touch;
    for (const auto& t : c.cycle.terms) {
      auto part = build_touch_acceptor(m, t.loop.loop);
      touch = touch ? minimize(intersect(*touch, part)) : minimize(part);
    }
    auto branch = minimize(boolean(*touch, contains_all(c), BooleanOp::Difference));
    compatible = compatible ? minimize(unite(*compatible, branch)) : branch;
  }
  Automaton lh = minimize(intersect(m, *compatible));
  for (const auto& c : cycles) lh = minimize(boolean(lh, contains_all(c), BooleanOp::Difference));

  auto proj = Projection::quotient(bs.group(), {z});
  std::vector<Element> images;
  for (const auto& g : bs.model().images()) images.push_back(proj(g));
  GroupModel hmodel(proj.target(), bs.alphabet(), std::move(images));
  return QuotientStructure{BiautomaticStructure(std::move(hmodel), std::move(lh), bound.K_prime), proj, z,
                           std::move(cycles), std::move(constants), bound};
}

std::vector<VerificationReport> verify_quotient(const QuotientStructure& qs, std::size_t radius, std::size_t max_len,
                                                const VerifyOptions& options) {
  const auto& h = qs.structure;
  VerifyOptions surj = options;
  surj.slack = max_len > radius ? max_len - radius : 0;
  auto coset = verify_surjectivity(h, radius, surj);
  coset.property = "coset_surjectivity";
  auto ft = verify_fellow_traveller(h, max_len, options);
  ft.property = "quotient_fellow_traveller";
  auto dom = VerificationReport::make("bound_dominance", "K_prime", qs.bound.K_prime);
  dom.measured = ft.measured;
  if (ft.measured && *ft.measured > qs.bound.K_prime)
    dom.add_witness({std::to_string(*ft.measured), std::to_string(qs.bound.K_prime)}, options.witness_cap);
  return {coset, ft, dom};
}

ProjectedStructure finite_quotient_projection(const BiautomaticStructure& bs,
                                              const std::vector<Element>& generators) {
  const auto& G = bs.group();
  for (const auto& g : generators) {
    G.validate(g);
    if (G.has_infinite_order(g))
      fail(ErrorKind::Input, "finite quotient: " + G.format(g) + " has infinite order");
  }
  auto proj = Projection::quotient(G, generators);
  std::vector<Element> images;
  for (const auto& g : bs.model().images()) images.push_back(proj(g));
  GroupModel model(proj.target(), bs.alphabet(), std::move(images));
  return {BiautomaticStructure(std::move(model), bs.acceptor(), bs.K()), proj};
}

PipelineResult theorem_a_pipeline(const BiautomaticStructure& bs, const std::vector<Element>& central,
                                  const BallOptions& options) {
  for (const auto& c : central) {
    bs.group().validate(c);
    if (!bs.model().is_central(c)) fail(ErrorKind::Precondition, bs.group().format(c) + " is not central");
  }
  PipelineResult out{bs, Projection::identity(bs.group()), {}};
  for (;;) {
    const auto& G = out.structure.group();
    std::optional<Element> z;
    for (const auto& c : central) {
      Element image = out.projection(c);
      if (G.has_infinite_order(image)) {
        z = image;
        break;
      }
    }
    if (!z) break;
    auto qs = build_LH(out.structure, *z, options);
    out.log.push_back({"theorem_e", G.format(*z), qs.structure.group().describe(),
                       qs.structure.acceptor().state_count(), qs.structure.K(), qs.bound});
    out.projection = out.projection.then(qs.projection);
    out.structure = std::move(qs.structure);
  }
  std::vector<Element> residue;
  std::string listed;
  for (const auto& c : central) {
    Element image = out.projection(c);
    if (out.structure.group().is_identity(image)) continue;
    listed += (listed.empty() ? "" : ", ") + out.structure.group().format(image);
    residue.push_back(image);
  }
  if (!residue.empty()) {
    auto ps = finite_quotient_projection(out.structure, residue);
    out.log.push_back({"finite", listed, ps.structure.group().describe(), ps.structure.acceptor().state_count(),
                       ps.structure.K(), std::nullopt});
    out.projection = out.projection.then(ps.projection);
    out.structure = std::move(ps.structure);
  }
  return out;
}

}  // namespace biauto
