#include "biauto/commands.hpp"

#include <chrono>
#include <sstream>

#include "biauto/error.hpp"
#include "biauto/neumann_shapiro.hpp"

namespace biauto {

using json = nlohmann::ordered_json;

namespace {

using Clock = std::chrono::steady_clock;

const Element& require_z(const CommandInput& in) {
  if (!in.file.z) fail(ErrorKind::Input, "no central element z: pass --z or add 'z' to [structure]");
  return *in.file.z;
}

json header(const char* command, const CommandInput& in, const CommandOptions& o) {
  const auto& bs = in.file.structure;
  json r;
  r["command"] = command;
  r["input"] = {{"source", in.source},
                {"digest", digest(emit_structure(bs, in.file.z))},
                {"group", bs.group().describe()},
                {"alphabet", bs.alphabet().symbols()},
                {"states", bs.acceptor().state_count()},
                {"K", bs.K()}};
  if (in.file.z) r["input"]["z"] = bs.group().format(*in.file.z);
  r["parameters"] = {{"max_len", o.max_len}, {"radius", o.radius}};
  return r;
}

CommandResult finish(json r, Clock::time_point t0, std::optional<std::string> artifact = std::nullopt) {
  CommandResult out;
  out.passed = true;
  if (r.contains("checks"))
    for (const auto& c : r["checks"]) out.passed = out.passed && c["passed"].get<bool>();
  r["passed"] = out.passed;
  r["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  out.report = std::move(r);
  out.artifact = std::move(artifact);
  return out;
}

// The verification suite of a structure: surjectivity, uniqueness, two-way
// fellow travelling, simplicity and independence of every live set.
void full_suite(const BiautomaticStructure& bs, std::size_t radius, std::size_t max_len, json& checks) {
  VerifyOptions vo;
  vo.slack = max_len > radius ? max_len - radius : 0;
  checks.push_back(to_json(verify_surjectivity(bs, radius, vo)));
  checks.push_back(to_json(verify_uniqueness(bs, max_len)));
  checks.push_back(to_json(verify_fellow_traveller(bs, max_len)));
  checks.push_back(to_json(check_simplicity(bs)));
  auto loops = find_central_loops(bs);
  for (const auto& ls : enumerate_live_sets(bs, loops)) {
    if (ls.members.empty()) continue;
    auto r = check_independence(bs, loops, ls);
    std::string names;
    for (auto i : ls.members) names += (names.empty() ? "" : " ") + loop_label(bs.acceptor(), loops[i].loop);
    r.notes.emplace_back("live_set", names);
    checks.push_back(to_json(r));
  }
}

json cycle_json(const BiautomaticStructure& bs, const ZCycle& c) {
  return {{"cycle", c.cycle.label(bs.acceptor())}, {"exponent", c.exponent}, {"positive", c.positive()}};
}

json bound_json(const BoundReport& b) {
  return {{"K", b.K},   {"A", b.A},   {"R", b.R}, {"z_length", b.z_length}, {"K1", b.K1},
          {"U", b.U},   {"M", b.M},   {"B", b.B}, {"K_prime", b.K_prime},   {"M_convention", b.M_convention}};
}

}  // namespace

json to_json(const VerificationReport& r) {
  json j;
  j["property"] = r.property;
  j["passed"] = r.passed;
  j["bound_name"] = r.bound_name;
  j["bound"] = r.bound;
  j["measured"] = r.measured ? json(*r.measured) : json(nullptr);
  j["witness_total"] = r.witness_total;
  j["witnesses"] = r.witnesses;
  json notes = json::object();
  for (const auto& [k, v] : r.notes) notes[k] = v;
  j["notes"] = notes;
  return j;
}

json to_json(const Automaton& m) {
  json j;
  j["states"] = m.names();
  j["start"] = m.name(m.start());
  json acc = json::array();
  for (State s = 0; s < m.state_count(); ++s)
    if (m.is_accept(s)) acc.push_back(m.name(s));
  j["accept"] = acc;
  json t = json::array();
  for (State s = 0; s < m.state_count(); ++s)
    for (Letter x = 0; x < m.alphabet().size(); ++x)
      t.push_back({m.name(s), m.alphabet().symbol(x), m.name(m.next(s, x))});
  j["transitions"] = t;
  return j;
}

CommandInput builtin_input(const std::string& name) {
  return {{builtin(name), builtin_center(name)}, "builtin:" + name};
}

CommandInput file_input(const std::string& path) { return {load_structure(path), path}; }

CommandInput text_input(const std::string& text) { return {parse_structure(text), "text"}; }

CommandResult cmd_inspect(const CommandInput& in, const CommandOptions& o) {
  auto t0 = Clock::now();
  const auto& bs = in.file.structure;
  const auto& m = bs.acceptor();
  json r = header("inspect", in, o);
  json a;
  a["states"] = m.state_count();
  json live = json::array();
  for (State s : live_states(m)) live.push_back(m.name(s));
  a["live_states"] = live;
  json simple = json::array();
  for (const auto& l : enumerate_simple_loops(m)) simple.push_back(loop_label(m, l));
  a["simple_loops"] = simple;
  auto loops = find_central_loops(bs);
  json central = json::array();
  for (const auto& l : loops) central.push_back({{"loop", loop_label(m, l.loop)}, {"element", bs.group().format(l.element)}});
  a["central_loops"] = central;
  json sets = json::array();
  for (const auto& ls : enumerate_live_sets(bs, loops)) {
    json names = json::array();
    for (auto i : ls.members) names.push_back(loop_label(m, loops[i].loop));
    sets.push_back({{"loops", names}, {"witness", bs.alphabet().format(ls.witness)}});
  }
  a["live_sets"] = sets;
  r["acceptor"] = a;
  if (in.file.z) {
    json cycles = json::array();
    for (const auto& c : find_primitive_z_cycles(bs, *in.file.z)) cycles.push_back(cycle_json(bs, c));
    r["z_cycles"] = cycles;
  }
  return finish(std::move(r), t0);
}

CommandResult cmd_verify(const CommandInput& in, const CommandOptions& o) {
  auto t0 = Clock::now();
  json r = header("verify", in, o);
  json checks = json::array();
  full_suite(in.file.structure, o.radius, o.max_len, checks);
  r["checks"] = checks;
  return finish(std::move(r), t0);
}

CommandResult cmd_quotient(const CommandInput& in, const CommandOptions& o) {
  auto t0 = Clock::now();
  const auto& bs = in.file.structure;
  json r = header("quotient", in, o);
  json checks = json::array();
  if (o.central) {
    auto gens = parse_element_list(bs.group(), *o.central);
    json listed = json::array();
    for (const auto& g : gens) listed.push_back(bs.group().format(g));
    r["parameters"]["central"] = listed;
    auto res = theorem_a_pipeline(bs, gens);
    json log = json::array();
    for (const auto& st : res.log) {
      json step = {{"kind", st.kind}, {"element", st.element}, {"group", st.group}, {"states", st.states}, {"K", st.K}};
      if (st.bound) step["bound"] = bound_json(*st.bound);
      log.push_back(step);
    }
    r["pipeline"] = log;
    const auto& h = res.structure;
    r["quotient"] = {{"group", h.group().describe()}, {"states", h.acceptor().state_count()}, {"K", h.K()}};
    full_suite(h, o.radius, o.max_len, checks);
    r["checks"] = checks;
    r["automata"] = {{"L_H", to_json(h.acceptor())}};
    return finish(std::move(r), t0, emit_structure(h));
  }
  const auto& z = require_z(in);
  auto qs = build_LH(bs, z);
  json cycles = json::array();
  for (const auto& c : qs.cycles) cycles.push_back(cycle_json(bs, c));
  r["z_cycles"] = cycles;
  json rho = json::array();
  for (const auto& v : qs.constants.rho) rho.push_back(v);
  json classes = json::array();
  auto loops = find_central_loops(bs);
  for (const auto& c : qs.constants.classes) {
    json members = json::array();
    for (auto i : c.members) members.push_back(loop_label(bs.acceptor(), loops[i].loop));
    classes.push_back({{"loop", loop_label(bs.acceptor(), loops[c.loop].loop)}, {"G", members}, {"m", c.m}});
  }
  r["constants"] = {{"A", qs.constants.A}, {"R", qs.constants.R}, {"rho", rho}, {"classes", classes}};
  r["bound"] = bound_json(qs.bound);
  const auto& h = qs.structure;
  r["quotient"] = {{"group", h.group().describe()}, {"states", h.acceptor().state_count()}, {"K", h.K()}};
  for (const auto& c : verify_quotient(qs, o.radius, o.max_len)) checks.push_back(to_json(c));
  r["checks"] = checks;
  r["automata"] = {{"L_H", to_json(h.acceptor())}};
  return finish(std::move(r), t0, emit_structure(h));
}

CommandResult cmd_fan(const CommandInput& in, const CommandOptions& o) {
  auto t0 = Clock::now();
  const auto& bs = in.file.structure;
  json r = header("fan", in, o);
  r["parameters"]["epsilon"] = o.epsilon;
  double eps = parse_rational(o.epsilon);
  auto sigma = build_subdivision(bs);
  json simplices = json::array();
  for (const auto& s : sigma.simplices) simplices.push_back(s.vertices);
  r["subdivision"] = {{"rank", sigma.rank}, {"f_vector", sigma.f_vector()}, {"simplices", simplices}};
  json checks = json::array();
  checks.push_back(to_json(verify_subdivision(sigma, o.radius)));
  checks.push_back(to_json(visual_lemma_check(bs, eps)));
  r["checks"] = checks;
  return finish(std::move(r), t0, export_subdivision(sigma));
}

namespace {

std::string scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>().empty() ? "\"\"" : v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

void render_value(std::ostringstream& os, const json& v, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) {
      if (x.is_structured() && !x.empty() && !(x.is_array() && !x.front().is_structured())) {
        os << pad << k << ":\n";
        render_value(os, x, indent + 2);
      } else {
        os << pad << k << ":";
        if (x.is_array() && x.empty()) {
          os << " []";
        } else if (x.is_array()) {
          os << ' ';
          for (std::size_t i = 0; i < x.size(); ++i) os << (i ? " " : "") << scalar(x[i]);
        } else {
          os << ' ' << scalar(x);
        }
        os << '\n';
      }
    }
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (x.is_object()) {
        std::ostringstream inner;
        render_value(inner, x, indent + 2);
        auto s = inner.str();
        s.replace(static_cast<std::size_t>(indent), 2, "- ");
        os << s;
      } else if (x.is_array()) {
        os << pad << "-";
        for (const auto& y : x) os << ' ' << (y.is_array() ? y.dump() : scalar(y));
        os << '\n';
      } else {
        os << pad << "- " << scalar(x) << '\n';
      }
    }
  } else {
    os << pad << scalar(v) << '\n';
  }
}

}  // namespace

std::string render_human(const json& r) {
  std::ostringstream os;
  for (const auto& [k, v] : r.items()) {
    if (k == "checks" || k == "passed" || k == "timing_ms") continue;
    if (v.is_structured()) {
      os << k << ":\n";
      render_value(os, v, 2);
    } else {
      os << k << ": " << scalar(v) << '\n';
    }
  }
  if (r.contains("checks")) {
    os << "checks:\n";
    for (const auto& c : r["checks"]) {
      os << "  [" << (c["passed"].get<bool>() ? "PASS" : "FAIL") << "] " << scalar(c["property"]) << " ("
         << scalar(c["bound_name"]) << ' ' << scalar(c["bound"]) << ")";
      if (!c["measured"].is_null()) os << " measured " << scalar(c["measured"]);
      os << '\n';
      for (const auto& [k, v] : c["notes"].items()) os << "      " << k << ": " << scalar(v) << '\n';
      if (c["witness_total"].get<std::size_t>() > 0) {
        os << "      witnesses: " << scalar(c["witness_total"]) << " (showing " << c["witnesses"].size() << ")\n";
        for (const auto& w : c["witnesses"]) {
          os << "        ";
          for (std::size_t i = 0; i < w.size(); ++i) os << (i ? " | " : "") << scalar(w[i]);
          os << '\n';
        }
      }
    }
  }
  os << "result: " << (r.value("passed", true) ? "PASS" : "FAIL") << '\n';
  os << "timing_ms: " << scalar(r["timing_ms"]) << '\n';
  return os.str();
}

}  // namespace biauto
