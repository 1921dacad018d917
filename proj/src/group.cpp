#include "biauto/group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "biauto/error.hpp"

namespace biauto {

using lattice::mod;

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (Int x : e.data) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

std::size_t abelian_width(const AbelianFactor& f) { return f.rank + f.torsion.size(); }

// Arithmetic progression {residue + k * modulus}; modulus 0 pins a single
// value, `all` means every integer.
struct Congruence {
  bool all = true;
  Int residue = 0;
  Int modulus = 1;
};

std::optional<Congruence> meet(const Congruence& a, const Congruence& b) {
  if (a.all) return b;
  if (b.all) return a;
  if (a.modulus == 0 && b.modulus == 0)
    return a.residue == b.residue ? std::optional<Congruence>(a) : std::nullopt;
  if (a.modulus == 0) return mod(a.residue - b.residue, b.modulus) == 0 ? std::optional<Congruence>(a) : std::nullopt;
  if (b.modulus == 0) return meet(b, a);
  // generalized CRT: x = a.r (mod a.m), x = b.r (mod b.m)
  Int g = lattice::gcd(a.modulus, b.modulus);
  if (mod(b.residue - a.residue, g) != 0) return std::nullopt;
  Int l = lattice::lcm(a.modulus, b.modulus);
  // brute step over the smaller modulus; desk-scale torsion orders
  for (Int k = 0; k < b.modulus / g; ++k) {
    Int x = a.residue + k * a.modulus;
    if (mod(x - b.residue, b.modulus) == 0) return Congruence{false, mod(x, l), l};
  }
  return std::nullopt;
}

// Solutions e of e * a = b (mod m).
std::optional<Congruence> solve_linear(Int a, Int b, Int m) {
  a = mod(a, m);
  b = mod(b, m);
  Int d = lattice::gcd(a, m);
  if (d == 0) d = m;
  if (b % d != 0) return std::nullopt;
  Int step = m / d;
  for (Int e = 0; e < step; ++e)
    if (mod(e * a - b, m) == 0) return Congruence{false, e, step};
  return std::nullopt;
}

std::vector<Int> free_reduce_concat(const Int* a, std::size_t la, const Int* b, std::size_t lb) {
  std::size_t i = la, j = 0;
  while (i > 0 && j < lb && a[i - 1] == -b[j]) {
    --i;
    ++j;
  }
  std::vector<Int> out;
  out.reserve(i + lb - j);
  out.insert(out.end(), a, a + i);
  out.insert(out.end(), b + j, b + lb);
  return out;
}

std::vector<Int> free_inverse(const std::vector<Int>& w) {
  std::vector<Int> out(w.rbegin(), w.rend());
  for (Int& x : out) x = -x;
  return out;
}

std::vector<Int> free_mul(const std::vector<Int>& a, const std::vector<Int>& b) {
  return free_reduce_concat(a.data(), a.size(), b.data(), b.size());
}

std::vector<Int> free_power(const std::vector<Int>& w, Int e) {
  std::vector<Int> base = e < 0 ? free_inverse(w) : w;
  std::vector<Int> out;
  for (Int k = 0; k < (e < 0 ? -e : e); ++k) out = free_mul(out, base);
  return out;
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) error(std::string("expected '") + c + "'");
  }
  bool done() {
    skip();
    return pos_ >= text_.size();
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  Int integer() {
    skip();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (digits == pos_) error("expected an integer");
    try {
      return std::stoll(std::string(text_.substr(start, pos_ - start)));
    } catch (const std::out_of_range&) {
      error("integer out of range");
    }
  }
  std::string_view rest() const { return text_.substr(pos_); }
  void advance(std::size_t n) { pos_ += n; }
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::Input, "element syntax: " + what + " at column " + std::to_string(pos_ + 1) + " in '" +
                               std::string(text_) + "'");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Group::Group(std::vector<Factor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) factors_.push_back(AbelianFactor{});
  std::set<std::string> names;
  for (const auto& f : factors_) {
    if (auto* a = std::get_if<AbelianFactor>(&f)) {
      for (Int m : a->torsion)
        if (m < 2) fail(ErrorKind::Input, "torsion orders must be >= 2, got " + std::to_string(m));
    } else {
      for (const auto& n : std::get<FreeFactor>(f).names) {
        if (n.empty() || !std::isalpha(static_cast<unsigned char>(n[0])))
          fail(ErrorKind::Input, "free generator names must start with a letter: '" + n + "'");
        for (char c : n)
          if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            fail(ErrorKind::Input, "free generator names must be alphanumeric: '" + n + "'");
        if (n == "e") fail(ErrorKind::Input, "'e' is reserved for the identity");
        if (!names.insert(n).second) fail(ErrorKind::Input, "duplicate free generator name '" + n + "'");
      }
    }
  }
  for (const auto& f : factors_) {
    if (auto* a = std::get_if<AbelianFactor>(&f))
      identity_.data.insert(identity_.data.end(), abelian_width(*a), 0);
    else
      identity_.data.push_back(0);
  }
}

Group Group::abelian(std::size_t rank, std::vector<Int> torsion) {
  return Group({AbelianFactor{rank, std::move(torsion)}});
}

Group Group::free(std::vector<std::string> names) { return Group({FreeFactor{std::move(names)}}); }

Group Group::product(const Group& left, const Group& right) {
  std::vector<Factor> f(left.factors_);
  f.insert(f.end(), right.factors_.begin(), right.factors_.end());
  return Group(std::move(f));
}

bool Group::is_abelian() const {
  return std::all_of(factors_.begin(), factors_.end(), [](const Factor& f) {
    auto* fr = std::get_if<FreeFactor>(&f);
    return !fr || fr->names.size() <= 1;
  });
}

std::size_t Group::free_rank() const {
  if (!is_abelian()) fail(ErrorKind::Input, "free rank requested for a non-abelian group");
  return center_free_rank();
}

Element Group::identity() const { return identity_; }

std::vector<std::vector<Int>> Group::split(const Element& a) const {
  std::vector<std::vector<Int>> parts;
  std::size_t p = 0;
  for (const auto& f : factors_) {
    if (auto* ab = std::get_if<AbelianFactor>(&f)) {
      std::size_t w = abelian_width(*ab);
      parts.emplace_back(a.data.begin() + static_cast<std::ptrdiff_t>(p),
                         a.data.begin() + static_cast<std::ptrdiff_t>(p + w));
      p += w;
    } else {
      std::size_t len = static_cast<std::size_t>(a.data[p]);
      parts.emplace_back(a.data.begin() + static_cast<std::ptrdiff_t>(p + 1),
                         a.data.begin() + static_cast<std::ptrdiff_t>(p + 1 + len));
      p += 1 + len;
    }
  }
  return parts;
}

Element Group::join(const std::vector<std::vector<Int>>& parts) const {
  Element out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (std::holds_alternative<FreeFactor>(factors_[i])) out.data.push_back(static_cast<Int>(parts[i].size()));
    out.data.insert(out.data.end(), parts[i].begin(), parts[i].end());
  }
  return out;
}

Element Group::multiply(const Element& a, const Element& b) const {
  Element out;
  out.data.reserve(std::max(a.data.size(), b.data.size()) + 4);
  std::size_t pa = 0, pb = 0;
  for (const auto& f : factors_) {
    if (auto* ab = std::get_if<AbelianFactor>(&f)) {
      for (std::size_t k = 0; k < ab->rank; ++k) out.data.push_back(lattice::add(a.data[pa + k], b.data[pb + k]));
      for (std::size_t k = 0; k < ab->torsion.size(); ++k) {
        Int m = ab->torsion[k];
        out.data.push_back(mod(a.data[pa + ab->rank + k] + b.data[pb + ab->rank + k], m));
      }
      pa += abelian_width(*ab);
      pb += abelian_width(*ab);
    } else {
      std::size_t la = static_cast<std::size_t>(a.data[pa]), lb = static_cast<std::size_t>(b.data[pb]);
      const Int* x = a.data.data() + pa + 1;
      const Int* y = b.data.data() + pb + 1;
      std::size_t i = la, j = 0;
      while (i > 0 && j < lb && x[i - 1] == -y[j]) {
        --i;
        ++j;
      }
      out.data.push_back(static_cast<Int>(i + lb - j));
      out.data.insert(out.data.end(), x, x + i);
      out.data.insert(out.data.end(), y + j, y + lb);
      pa += 1 + la;
      pb += 1 + lb;
    }
  }
  return out;
}

Element Group::inverse(const Element& a) const {
  Element out;
  out.data.reserve(a.data.size());
  std::size_t p = 0;
  for (const auto& f : factors_) {
    if (auto* ab = std::get_if<AbelianFactor>(&f)) {
      for (std::size_t k = 0; k < ab->rank; ++k) out.data.push_back(-a.data[p + k]);
      for (std::size_t k = 0; k < ab->torsion.size(); ++k)
        out.data.push_back(mod(-a.data[p + ab->rank + k], ab->torsion[k]));
      p += abelian_width(*ab);
    } else {
      std::size_t len = static_cast<std::size_t>(a.data[p]);
      out.data.push_back(static_cast<Int>(len));
      for (std::size_t k = len; k > 0; --k) out.data.push_back(-a.data[p + k]);
      p += 1 + len;
    }
  }
  return out;
}

Element Group::power(const Element& a, Int e) const {
  Element base = e < 0 ? inverse(a) : a;
  Int n = e < 0 ? -e : e;
  Element acc = identity_;
  // square-and-multiply; the group operation is associative
  while (n > 0) {
    if (n & 1) acc = multiply(acc, base);
    n >>= 1;
    if (n > 0) base = multiply(base, base);
  }
  return acc;
}

bool Group::commute(const Element& a, const Element& b) const { return multiply(a, b) == multiply(b, a); }

bool Group::has_infinite_order(const Element& a) const {
  auto parts = split(a);
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (auto* ab = std::get_if<AbelianFactor>(&factors_[i])) {
      for (std::size_t k = 0; k < ab->rank; ++k)
        if (parts[i][k] != 0) return true;
    } else if (!parts[i].empty()) {
      return true;
    }
  }
  return false;
}

void Group::validate(const Element& a) const {
  std::size_t p = 0;
  for (const auto& f : factors_) {
    if (auto* ab = std::get_if<AbelianFactor>(&f)) {
      if (p + abelian_width(*ab) > a.data.size()) fail(ErrorKind::Input, "element encoding is too short");
      for (std::size_t k = 0; k < ab->torsion.size(); ++k) {
        Int r = a.data[p + ab->rank + k];
        if (r < 0 || r >= ab->torsion[k]) fail(ErrorKind::Input, "torsion residue out of range");
      }
      p += abelian_width(*ab);
    } else {
      if (p >= a.data.size()) fail(ErrorKind::Input, "element encoding is too short");
      Int len = a.data[p];
      if (len < 0 || p + 1 + static_cast<std::size_t>(len) > a.data.size())
        fail(ErrorKind::Input, "bad free word length in element encoding");
      Int rank = static_cast<Int>(std::get<FreeFactor>(f).names.size());
      for (Int k = 0; k < len; ++k) {
        Int x = a.data[p + 1 + static_cast<std::size_t>(k)];
        if (x == 0 || x > rank || x < -rank) fail(ErrorKind::Input, "free letter out of range");
        if (k > 0 && a.data[p + static_cast<std::size_t>(k)] == -x)
          fail(ErrorKind::Input, "free word is not freely reduced");
      }
      p += 1 + static_cast<std::size_t>(len);
    }
  }
  if (p != a.data.size()) fail(ErrorKind::Input, "element encoding is too long");
}

std::optional<Int> Group::cyclic_exponent(const Element& z, const Element& g) const {
  if (!has_infinite_order(z))
    fail(ErrorKind::Precondition, "cyclic_exponent: " + format(z) + " does not have infinite order");
  auto zp = split(z), gp = split(g);
  Congruence acc;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    Congruence c;
    if (auto* ab = std::get_if<AbelianFactor>(&factors_[i])) {
      std::optional<std::size_t> pivot;
      for (std::size_t k = 0; k < ab->rank; ++k)
        if (zp[i][k] != 0) {
          pivot = k;
          break;
        }
      if (pivot) {
        Int zk = zp[i][*pivot], gk = gp[i][*pivot];
        if (gk % zk != 0) return std::nullopt;
        c = Congruence{false, gk / zk, 0};
        for (std::size_t k = 0; k < ab->rank; ++k)
          if (lattice::mul(c.residue, zp[i][k]) != gp[i][k]) return std::nullopt;
      } else {
        for (std::size_t k = 0; k < ab->rank; ++k)
          if (gp[i][k] != 0) return std::nullopt;
      }
      for (std::size_t k = 0; k < ab->torsion.size(); ++k) {
        auto s = solve_linear(zp[i][ab->rank + k], gp[i][ab->rank + k], ab->torsion[k]);
        if (!s) return std::nullopt;
        auto m = meet(c, *s);
        if (!m) return std::nullopt;
        c = *m;
      }
    } else {
      const auto& w = zp[i];
      const auto& h = gp[i];
      if (w.empty()) {
        if (!h.empty()) return std::nullopt;
      } else {
        // w = u c u^-1 with c cyclically reduced; then w^e = u c^e u^-1
        std::size_t lo = 0, hi = w.size();
        while (hi - lo >= 2 && w[lo] == -w[hi - 1]) {
          ++lo;
          --hi;
        }
        std::vector<Int> u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(lo));
        std::vector<Int> core(w.begin() + static_cast<std::ptrdiff_t>(lo), w.begin() + static_cast<std::ptrdiff_t>(hi));
        std::vector<Int> conj = free_mul(free_mul(free_inverse(u), h), u);
        if (conj.size() % core.size() != 0) return std::nullopt;
        Int e = static_cast<Int>(conj.size() / core.size());
        if (free_power(core, e) == conj) {
          c = Congruence{false, e, 0};
        } else if (free_power(core, -e) == conj) {
          c = Congruence{false, -e, 0};
        } else {
          return std::nullopt;
        }
      }
    }
    auto m = meet(acc, c);
    if (!m) return std::nullopt;
    acc = *m;
  }
  if (acc.all || acc.modulus != 0)
    fail(ErrorKind::Precondition, "cyclic_exponent: exponent not pinned; generator has finite order");
  return acc.residue;
}

bool Group::in_center(const Element& g) const {
  auto parts = split(g);
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (auto* fr = std::get_if<FreeFactor>(&factors_[i]); fr && fr->names.size() >= 2 && !parts[i].empty())
      return false;
  return true;
}

std::size_t Group::center_free_rank() const {
  std::size_t r = 0;
  for (const auto& f : factors_) {
    if (auto* ab = std::get_if<AbelianFactor>(&f))
      r += ab->rank;
    else if (std::get<FreeFactor>(f).names.size() == 1)
      r += 1;
  }
  return r;
}

lattice::Vec Group::center_moduli() const {
  lattice::Vec m;
  for (const auto& f : factors_)
    if (auto* ab = std::get_if<AbelianFactor>(&f)) m.insert(m.end(), ab->torsion.begin(), ab->torsion.end());
  return m;
}

CenterCoordinates Group::center_coordinates(const std::vector<Element>& gs) const {
  CenterCoordinates out;
  out.moduli = center_moduli();
  for (const auto& g : gs) {
    if (!in_center(g)) fail(ErrorKind::Precondition, "central_coordinates: " + format(g) + " is not central");
    auto parts = split(g);
    lattice::Vec fr, tr;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (auto* ab = std::get_if<AbelianFactor>(&factors_[i])) {
        fr.insert(fr.end(), parts[i].begin(), parts[i].begin() + static_cast<std::ptrdiff_t>(ab->rank));
        tr.insert(tr.end(), parts[i].begin() + static_cast<std::ptrdiff_t>(ab->rank), parts[i].end());
      } else if (std::get<FreeFactor>(factors_[i]).names.size() == 1) {
        Int e = 0;
        for (Int x : parts[i]) e += x > 0 ? 1 : -1;
        fr.push_back(e);
      }
    }
    out.free.push_back(std::move(fr));
    out.torsion.push_back(std::move(tr));
  }
  return out;
}

Element Group::from_center_coordinates(const lattice::Vec& fr, const lattice::Vec& tr) const {
  if (fr.size() != center_free_rank() || tr.size() != center_moduli().size())
    fail(ErrorKind::Input, "center coordinate vector has the wrong shape");
  std::vector<std::vector<Int>> parts;
  std::size_t pf = 0, pt = 0;
  for (const auto& f : factors_) {
    if (auto* ab = std::get_if<AbelianFactor>(&f)) {
      std::vector<Int> p(fr.begin() + static_cast<std::ptrdiff_t>(pf),
                         fr.begin() + static_cast<std::ptrdiff_t>(pf + ab->rank));
      for (std::size_t k = 0; k < ab->torsion.size(); ++k) p.push_back(mod(tr[pt + k], ab->torsion[k]));
      pf += ab->rank;
      pt += ab->torsion.size();
      parts.push_back(std::move(p));
    } else if (std::get<FreeFactor>(f).names.size() == 1) {
      Int e = fr[pf++];
      parts.emplace_back(static_cast<std::size_t>(e < 0 ? -e : e), e < 0 ? -1 : 1);
    } else {
      parts.emplace_back();
    }
  }
  return join(parts);
}

std::string Group::format(const Element& a) const {
  auto parts = split(a);
  std::vector<std::string> rendered;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    std::ostringstream os;
    if (auto* ab = std::get_if<AbelianFactor>(&factors_[i])) {
      os << '(';
      for (std::size_t k = 0; k < ab->rank; ++k) os << (k ? "," : "") << parts[i][k];
      if (!ab->torsion.empty()) {
        os << ';';
        for (std::size_t k = 0; k < ab->torsion.size(); ++k) os << (k ? "," : "") << parts[i][ab->rank + k];
      }
      os << ')';
    } else {
      const auto& names = std::get<FreeFactor>(factors_[i]).names;
      if (parts[i].empty()) os << 'e';
      for (std::size_t k = 0; k < parts[i].size(); ++k) {
        Int x = parts[i][k];
        os << (k ? " " : "") << names[static_cast<std::size_t>(x < 0 ? -x : x) - 1] << (x < 0 ? "^-1" : "");
      }
    }
    rendered.push_back(os.str());
  }
  if (rendered.size() == 1) return rendered[0];
  std::string out = "[";
  for (std::size_t i = 0; i < rendered.size(); ++i) out += (i ? " | " : "") + rendered[i];
  return out + "]";
}

Element Group::parse(std::string_view text) const {
  Cursor cur(text);
  auto parse_factor = [&](const Factor& f) -> std::vector<Int> {
    if (auto* ab = std::get_if<AbelianFactor>(&f)) {
      std::vector<Int> p;
      cur.expect('(');
      if (ab->rank > 0) {
        for (std::size_t k = 0; k < ab->rank; ++k) {
          if (k) cur.expect(',');
          p.push_back(cur.integer());
        }
      }
      if (!ab->torsion.empty()) {
        cur.expect(';');
        for (std::size_t k = 0; k < ab->torsion.size(); ++k) {
          if (k) cur.expect(',');
          p.push_back(mod(cur.integer(), ab->torsion[k]));
        }
      }
      cur.expect(')');
      return p;
    }
    const auto& names = std::get<FreeFactor>(f).names;
    std::vector<Int> w;
    bool any = false;
    while (true) {
      char c = cur.peek();
      if (c == '\0' || c == '|' || c == ']') break;
      std::string_view rest = cur.rest();
      if (c == 'e' && (rest.size() == 1 || !std::isalnum(static_cast<unsigned char>(rest[1])))) {
        cur.advance(1);
        any = true;
        continue;
      }
      std::size_t best = 0, best_len = 0;
      for (std::size_t k = 0; k < names.size(); ++k)
        if (names[k].size() > best_len && rest.substr(0, names[k].size()) == names[k]) {
          best = k;
          best_len = names[k].size();
        }
      if (best_len == 0) cur.error("unknown free generator");
      cur.advance(best_len);
      Int e = 1;
      if (cur.eat('^')) e = cur.integer();
      std::vector<Int> letter{static_cast<Int>(best + 1)};
      w = free_mul(w, free_power(letter, e));
      any = true;
    }
    if (!any) cur.error("expected a free word or 'e'");
    return w;
  };

  std::vector<std::vector<Int>> parts;
  if (factors_.size() == 1) {
    parts.push_back(parse_factor(factors_[0]));
  } else {
    cur.expect('[');
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) cur.expect('|');
      parts.push_back(parse_factor(factors_[i]));
    }
    cur.expect(']');
  }
  if (!cur.done()) cur.error("trailing characters");
  return join(parts);
}

std::string Group::describe() const {
  std::vector<std::string> out;
  for (const auto& f : factors_) {
    std::ostringstream os;
    if (auto* ab = std::get_if<AbelianFactor>(&f)) {
      if (ab->rank == 0 && ab->torsion.empty()) {
        os << "1";
      } else {
        std::vector<std::string> bits;
        if (ab->rank > 0) bits.push_back(ab->rank == 1 ? "Z" : "Z^" + std::to_string(ab->rank));
        for (Int m : ab->torsion) bits.push_back("Z/" + std::to_string(m));
        for (std::size_t k = 0; k < bits.size(); ++k) os << (k ? " + " : "") << bits[k];
      }
    } else {
      os << "F" << std::get<FreeFactor>(f).names.size();
    }
    out.push_back(os.str());
  }
  std::string s;
  for (std::size_t i = 0; i < out.size(); ++i) s += (i ? " x " : "") + out[i];
  return s;
}

GroupModel::GroupModel(Group group, Alphabet alphabet, std::vector<Element> images)
    : group_(std::move(group)), alphabet_(std::move(alphabet)), images_(std::move(images)) {
  if (images_.size() != alphabet_.size())
    fail(ErrorKind::Input, "generator map must assign an element to every letter");
  for (const auto& g : images_) group_.validate(g);
  std::set<Element> seen;
  for (const auto& g : images_)
    if (!group_.is_identity(g) && seen.insert(g).second) steps_.push_back(g);
}

Element GroupModel::evaluate(const Word& w) const {
  Element acc = group_.identity();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= images_.size())
      fail(ErrorKind::Input, "unmapped letter index " + std::to_string(w[i]) + " at position " + std::to_string(i));
    acc = group_.multiply(acc, images_[w[i]]);
  }
  return acc;
}

std::vector<Element> GroupModel::prefixes(const Word& w) const {
  std::vector<Element> out;
  out.reserve(w.size() + 1);
  out.push_back(group_.identity());
  for (Letter x : w) out.push_back(group_.multiply(out.back(), images_.at(x)));
  return out;
}

bool GroupModel::is_central(const Element& g) const {
  return std::all_of(images_.begin(), images_.end(), [&](const Element& a) { return group_.commute(a, g); });
}

bool GroupModel::is_symmetric() const {
  std::set<Element> imgs(images_.begin(), images_.end());
  return std::all_of(images_.begin(), images_.end(),
                     [&](const Element& a) { return imgs.count(group_.inverse(a)) != 0; });
}

CenterCoordinates central_coordinates(const GroupModel& model, const std::vector<Element>& gs) {
  for (const auto& g : gs)
    if (!model.is_central(g))
      fail(ErrorKind::Precondition, "central_coordinates: " + model.group().format(g) + " is not central");
  return model.group().center_coordinates(gs);
}

std::optional<Int> cyclic_exponent(const GroupModel& model, const Element& z, const Element& g) {
  return model.group().cyclic_exponent(z, g);
}

Ball ball(const GroupModel& model, std::size_t radius, const BallOptions& options) {
  Ball b;
  b.radius = radius;
  const auto& G = model.group();
  b.members.push_back(G.identity());
  b.length.emplace(G.identity(), 0);
  std::size_t begin = 0;
  for (std::size_t r = 1; r <= radius; ++r) {
    std::size_t end = b.members.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (const auto& s : model.steps()) {
        Element h = G.multiply(b.members[i], s);
        if (b.length.emplace(h, r).second) {
          b.members.push_back(h);
          if (b.members.size() > options.max_elements)
            fail(ErrorKind::Resource, "ball of radius " + std::to_string(radius) + " exceeds the cap of " +
                                          std::to_string(options.max_elements) + " elements");
        }
      }
    }
    if (end == b.members.size()) break;
    begin = end;
  }
  return b;
}

WordMetric::WordMetric(const GroupModel& model, std::size_t search_radius)
    : model_(&model), search_radius_(search_radius) {}

std::size_t WordMetric::length(const Element& g) {
  if (auto it = memo_.find(g); it != memo_.end()) return it->second;
  const auto& G = model_->group();
  const auto& steps = model_->steps();
  std::size_t result = 0;
  if (!G.is_identity(g)) {
    // Bidirectional BFS: forward from the identity, backward from g. The
    // generating set is symmetric, so both sides use the same steps.
    using Layer = std::unordered_map<Element, std::size_t, ElementHash>;
    Layer fwd{{G.identity(), 0}}, bwd{{g, 0}};
    std::vector<Element> ff{G.identity()}, bf{g};
    std::size_t fd = 0, bd = 0;
    std::optional<std::size_t> found;
    while (!found) {
      if (fd + bd >= search_radius_ || (ff.empty() && bf.empty()))
        fail(ErrorKind::Resource, "distance overflow: word length exceeds the search radius " +
                                      std::to_string(search_radius_));
      bool forward = ff.size() <= bf.size();
      auto& frontier = forward ? ff : bf;
      auto& mine = forward ? fwd : bwd;
      auto& other = forward ? bwd : fwd;
      std::size_t& depth = forward ? fd : bd;
      std::vector<Element> next;
      std::size_t best = SIZE_MAX;
      for (const auto& x : frontier) {
        for (const auto& s : steps) {
          Element y = G.multiply(x, s);
          if (mine.count(y)) continue;
          if (auto it = other.find(y); it != other.end()) best = std::min(best, depth + 1 + it->second);
          mine.emplace(y, depth + 1);
          next.push_back(std::move(y));
        }
      }
      ++depth;
      frontier = std::move(next);
      if (best != SIZE_MAX) found = best;
    }
    result = *found;
  }
  memo_.emplace(g, result);
  return result;
}

std::size_t WordMetric::distance(const Element& g, const Element& h) {
  const auto& G = model_->group();
  return length(G.multiply(G.inverse(g), h));
}

std::size_t distance(const GroupModel& model, const Element& g, const Element& h, std::size_t search_radius) {
  WordMetric m(model, search_radius);
  return m.distance(g, h);
}

}  // namespace biauto
