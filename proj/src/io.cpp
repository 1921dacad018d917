#include "biauto/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "biauto/error.hpp"

namespace biauto {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back({std::string(line.substr(i, j - i)), i + 1});
    i = j;
  }
  return out;
}

[[noreturn]] void parse_fail(std::size_t line, std::size_t column, const std::string& what) {
  fail(ErrorKind::Parse, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::size_t parse_count(const Token& t, std::size_t line) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || p != t.text.data() + t.text.size())
    parse_fail(line, t.column, "expected a non-negative integer, got '" + t.text + "'");
  return v;
}

struct Line {
  std::size_t number;
  std::string text;
};

}  // namespace

StructureFile parse_structure(std::string_view text) {
  std::map<std::string, std::vector<Line>> sections;
  std::map<std::string, std::size_t> header_line;
  std::string current;
  std::size_t number = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto body = trim(raw);
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') parse_fail(number, 1, "unterminated section header");
      current = std::string(trim(body.substr(1, body.size() - 2)));
      static const char* known[] = {"alphabet", "model", "generators", "acceptor", "structure"};
      if (std::find(std::begin(known), std::end(known), current) == std::end(known))
        parse_fail(number, 2, "unknown section '" + current + "'");
      if (header_line.count(current)) parse_fail(number, 2, "duplicate section [" + current + "]");
      header_line[current] = number;
      sections[current];
      continue;
    }
    if (current.empty()) parse_fail(number, 1, "content before the first section header");
    sections[current].push_back({number, raw});
  }
  for (auto s : {"alphabet", "model", "generators", "acceptor", "structure"})
    if (!sections.count(s)) fail(ErrorKind::Parse, std::string("missing section [") + s + "]");

  // alphabet
  std::vector<std::string> letters;
  for (const auto& l : sections["alphabet"])
    for (auto& t : tokenize(l.text)) letters.push_back(t.text);
  if (letters.empty()) parse_fail(header_line["alphabet"], 1, "[alphabet] lists no letters");
  Alphabet alphabet = [&] {
    try {
      return Alphabet(letters);
    } catch (const Error& e) {
      parse_fail(header_line["alphabet"], 1, e.what());
    }
  }();

  // model
  std::vector<Factor> factors;
  for (const auto& l : sections["model"]) {
    auto tok = tokenize(l.text);
    if (tok[0].text == "abelian") {
      if (tok.size() < 2) parse_fail(l.number, tok[0].column, "'abelian' needs a rank");
      AbelianFactor f{parse_count(tok[1], l.number), {}};
      if (tok.size() > 2) {
        if (tok[2].text != "torsion") parse_fail(l.number, tok[2].column, "expected 'torsion'");
        for (std::size_t i = 3; i < tok.size(); ++i) {
          auto m = parse_count(tok[i], l.number);
          if (m < 2) parse_fail(l.number, tok[i].column, "torsion orders must be >= 2");
          f.torsion.push_back(static_cast<Int>(m));
        }
      }
      factors.emplace_back(std::move(f));
    } else if (tok[0].text == "free") {
      FreeFactor f;
      for (std::size_t i = 1; i < tok.size(); ++i) f.names.push_back(tok[i].text);
      if (f.names.empty()) parse_fail(l.number, tok[0].column, "'free' needs generator names");
      factors.emplace_back(std::move(f));
    } else {
      parse_fail(l.number, tok[0].column, "unknown factor kind '" + tok[0].text + "' (abelian or free)");
    }
  }
  if (factors.empty()) parse_fail(header_line["model"], 1, "[model] has no factor");
  Group group = [&] {
    try {
      return Group(factors);
    } catch (const Error& e) {
      parse_fail(header_line["model"], 1, e.what());
    }
  }();

  // generators
  std::vector<std::optional<Element>> images(alphabet.size());
  for (const auto& l : sections["generators"]) {
    auto eq = l.text.find('=');
    if (eq == std::string::npos) parse_fail(l.number, 1, "expected 'letter = element'");
    auto name = std::string(trim(std::string_view(l.text).substr(0, eq)));
    auto x = alphabet.find(name);
    if (!x) parse_fail(l.number, 1, "'" + name + "' is not a letter of the alphabet");
    if (images[*x]) parse_fail(l.number, 1, "generator '" + name + "' assigned twice");
    try {
      images[*x] = group.parse(trim(std::string_view(l.text).substr(eq + 1)));
    } catch (const Error& e) {
      parse_fail(l.number, eq + 2, e.what());
    }
  }
  std::vector<Element> imgs;
  for (std::size_t x = 0; x < images.size(); ++x) {
    if (!images[x])
      parse_fail(header_line["generators"], 1,
                 "[generators] has no image for letter '" + alphabet.symbol(static_cast<Letter>(x)) + "'");
    imgs.push_back(*images[x]);
  }

  // acceptor
  std::vector<std::string> states;
  std::map<std::string, State> index;
  std::optional<State> start;
  std::vector<Line> start_lines, accept_lines, edges;
  for (const auto& l : sections["acceptor"]) {
    auto tok = tokenize(l.text);
    if (tok[0].text == "states") {
      for (std::size_t i = 1; i < tok.size(); ++i) {
        if (!index.emplace(tok[i].text, static_cast<State>(states.size())).second)
          parse_fail(l.number, tok[i].column, "duplicate state '" + tok[i].text + "'");
        states.push_back(tok[i].text);
      }
    } else if (tok[0].text == "start") {
      if (tok.size() != 2) parse_fail(l.number, tok[0].column, "'start' takes exactly one state");
      start_lines.push_back(l);
    } else if (tok[0].text == "accept") {
      accept_lines.push_back(l);
    } else {
      if (tok.size() != 3) parse_fail(l.number, tok[0].column, "expected 'from letter to'");
      edges.push_back(l);
    }
  }
  if (states.empty()) parse_fail(header_line["acceptor"], 1, "[acceptor] has no 'states' line");
  auto state_of = [&](const Token& t, std::size_t line) {
    auto it = index.find(t.text);
    if (it == index.end()) parse_fail(line, t.column, "unknown state '" + t.text + "'");
    return it->second;
  };
  const std::size_t k = alphabet.size();
  const State none = static_cast<State>(-1);
  std::vector<State> table(states.size() * k, none);
  for (const auto& l : start_lines) {
    auto tok = tokenize(l.text);
    if (start) parse_fail(l.number, tok[0].column, "duplicate 'start'");
    start = state_of(tok[1], l.number);
  }
  for (const auto& l : edges) {
    auto tok = tokenize(l.text);
    State from = state_of(tok[0], l.number), to = state_of(tok[2], l.number);
    auto x = alphabet.find(tok[1].text);
    if (!x) parse_fail(l.number, tok[1].column, "'" + tok[1].text + "' is not a letter of the alphabet");
    auto& slot = table[from * k + *x];
    if (slot != none && slot != to)
      parse_fail(l.number, tok[0].column, "second transition from '" + tok[0].text + "' on '" + tok[1].text + "'");
    slot = to;
  }
  if (!start) parse_fail(header_line["acceptor"], 1, "[acceptor] has no 'start' line");
  std::vector<bool> accept(states.size(), false);
  for (const auto& l : accept_lines) {
    auto tok = tokenize(l.text);
    for (std::size_t i = 1; i < tok.size(); ++i) accept[state_of(tok[i], l.number)] = true;
  }
  if (std::find(table.begin(), table.end(), none) != table.end()) {
    std::string sink = "sink";
    while (index.count(sink)) sink += "_";
    const State s = static_cast<State>(states.size());
    states.push_back(sink);
    accept.push_back(false);
    table.resize(table.size() + k, s);
    for (auto& t : table)
      if (t == none) t = s;
  }

  // structure
  std::optional<std::size_t> K;
  std::optional<Element> z;
  for (const auto& l : sections["structure"]) {
    auto tok = tokenize(l.text);
    if (tok[0].text == "K") {
      if (tok.size() != 2) parse_fail(l.number, tok[0].column, "'K' takes one integer");
      K = parse_count(tok[1], l.number);
    } else if (tok[0].text == "z") {
      auto rest = trim(std::string_view(l.text).substr(l.text.find('z') + 1));
      try {
        z = group.parse(rest);
      } catch (const Error& e) {
        parse_fail(l.number, tok[0].column + 2, e.what());
      }
    } else {
      parse_fail(l.number, tok[0].column, "unknown key '" + tok[0].text + "' (K or z)");
    }
  }
  if (!K) parse_fail(header_line["structure"], 1, "[structure] has no 'K' line");

  Automaton m(alphabet, std::move(table), *start, std::move(accept), std::move(states));
  return {BiautomaticStructure(GroupModel(group, alphabet, std::move(imgs)), std::move(m), *K), z};
}

StructureFile load_structure(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorKind::Input, "cannot open '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return parse_structure(s.str());
}

std::string emit_structure(const BiautomaticStructure& bs, const std::optional<Element>& z) {
  std::ostringstream os;
  const auto& ab = bs.alphabet();
  const auto& G = bs.group();
  const auto& m = bs.acceptor();
  os << "[alphabet]\n";
  for (std::size_t x = 0; x < ab.size(); ++x) os << (x ? " " : "") << ab.symbol(static_cast<Letter>(x));
  os << "\n\n[model]\n";
  for (const auto& f : G.factors()) {
    if (auto* a = std::get_if<AbelianFactor>(&f)) {
      os << "abelian " << a->rank;
      if (!a->torsion.empty()) {
        os << " torsion";
        for (Int t : a->torsion) os << ' ' << t;
      }
    } else {
      os << "free";
      for (const auto& n : std::get<FreeFactor>(f).names) os << ' ' << n;
    }
    os << '\n';
  }
  os << "\n[generators]\n";
  for (std::size_t x = 0; x < ab.size(); ++x)
    os << ab.symbol(static_cast<Letter>(x)) << " = " << G.format(bs.model().image(static_cast<Letter>(x))) << '\n';
  os << "\n[acceptor]\nstates";
  for (const auto& n : m.names()) os << ' ' << n;
  os << "\nstart " << m.name(m.start()) << "\naccept";
  for (State s = 0; s < m.state_count(); ++s)
    if (m.is_accept(s)) os << ' ' << m.name(s);
  os << '\n';
  for (State s = 0; s < m.state_count(); ++s)
    for (Letter x = 0; x < ab.size(); ++x) os << m.name(s) << ' ' << ab.symbol(x) << ' ' << m.name(m.next(s, x)) << '\n';
  os << "\n[structure]\nK " << bs.K() << '\n';
  if (z) os << "z " << G.format(*z) << '\n';
  return os.str();
}

std::vector<Element> parse_element_list(const Group& g, std::string_view text) {
  std::vector<Element> out;
  int depth = 0;
  std::size_t begin = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    char c = i < text.size() ? text[i] : ',';
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      auto item = trim(text.substr(begin, i - begin));
      if (item.empty()) fail(ErrorKind::Input, "empty element in list '" + std::string(text) + "'");
      out.push_back(g.parse(item));
      begin = i + 1;
    }
  }
  return out;
}

double parse_rational(std::string_view text) {
  auto t = trim(text);
  auto bad = [&] { fail(ErrorKind::Input, "not a rational number: '" + std::string(text) + "'"); };
  auto slash = t.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string_view::npos) {
      double v = std::stod(std::string(t), &used);
      if (used != t.size()) bad();
      return v;
    }
    std::string p(t.substr(0, slash)), q(t.substr(slash + 1));
    long long a = std::stoll(p, &used);
    if (used != p.size()) bad();
    long long b = std::stoll(q, &used);
    if (used != q.size() || b == 0) bad();
    return static_cast<double>(a) / static_cast<double>(b);
  } catch (const std::logic_error&) {
    bad();
  }
  return 0;
}

std::string digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace biauto
