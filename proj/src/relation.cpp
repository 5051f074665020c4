#include "pint/relation.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace pint {

namespace {

constexpr std::array<std::pair<int, int>, 13> kIIPairs = {{{0, 0}, {0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3},
                                                           {1, 4}, {2, 2}, {2, 3}, {2, 4}, {3, 4}, {4, 4}}};
constexpr std::array<std::pair<int, int>, 5> kPIPairs = {{{0, 0}, {0, 2}, {0, 4}, {2, 4}, {4, 4}}};

constexpr std::array<Relation, kCanonical> kCanon = {rel::eq_p, rel::eq_i, rel::lt,   rel::ip0,  rel::ip1,
                                                     rel::ip2,  rel::ip3,  rel::ip4,  rel::ii34, rel::ii14,
                                                     rel::ii03, rel::ii24, rel::ii04, rel::ii44};

// Sample positions inside each region of the interval [10,20].
int region_pos(int region, int nth) {
  switch (region) {
    case 0: return 1 + nth;
    case 1: return 10;
    case 2: return 14 + nth;
    case 3: return 20;
    default: return 25 + nth;
  }
}

}  // namespace

Sort lhs_sort(Kind k) { return (k == Kind::PP || k == Kind::PI) ? Sort::Point : Sort::Interval; }
Sort rhs_sort(Kind k) { return (k == Kind::PP || k == Kind::IP) ? Sort::Point : Sort::Interval; }

bool Relation::valid(Kind kind, int k, int k2) {
  switch (kind) {
    case Kind::PP: return (k == 0 || k == 2 || k == 4) && k2 == 0;
    case Kind::IP: return k >= 0 && k <= 4 && k2 == 0;
    case Kind::PI:
      return std::find(kPIPairs.begin(), kPIPairs.end(), std::pair{k, k2}) != kPIPairs.end();
    case Kind::II:
      return std::find(kIIPairs.begin(), kIIPairs.end(), std::pair{k, k2}) != kIIPairs.end();
  }
  return false;
}

int Relation::id() const {
  switch (kind) {
    case Kind::PP: return k / 2;
    case Kind::IP: return 3 + k;
    case Kind::PI: return 8 + int(std::find(kPIPairs.begin(), kPIPairs.end(), std::pair<int, int>{k, k2}) - kPIPairs.begin());
    case Kind::II: return 13 + int(std::find(kIIPairs.begin(), kIIPairs.end(), std::pair<int, int>{k, k2}) - kIIPairs.begin());
  }
  return -1;
}

Relation Relation::from_id(int id) {
  if (id < 0 || id >= 26) throw DomainError("relation id out of range: " + std::to_string(id));
  if (id < 3) return {Kind::PP, std::uint8_t(id * 2), 0};
  if (id < 8) return {Kind::IP, std::uint8_t(id - 3), 0};
  if (id < 13) {
    auto [a, b] = kPIPairs[id - 8];
    return {Kind::PI, std::uint8_t(a), std::uint8_t(b)};
  }
  auto [a, b] = kIIPairs[id - 13];
  return {Kind::II, std::uint8_t(a), std::uint8_t(b)};
}

const std::vector<Relation>& all_relations() {
  static const std::vector<Relation> all = [] {
    std::vector<Relation> v;
    for (int i = 0; i < 26; ++i) v.push_back(Relation::from_id(i));
    return v;
  }();
  return all;
}

std::string Relation::token() const {
  switch (kind) {
    case Kind::PP: return k == 0 ? ">" : k == 2 ? "=p" : "<";
    case Kind::IP: return "ip" + std::to_string(k);
    case Kind::PI: return "pi" + std::to_string(k) + std::to_string(k2);
    case Kind::II:
      if (k == 1 && k2 == 3) return "=i";
      return "ii" + std::to_string(k) + std::to_string(k2);
  }
  return "?";
}

Relation Relation::parse(std::string_view tok) {
  if (tok == "=p" || tok == "pp2") return rel::eq_p;
  if (tok == "<" || tok == "pp4") return rel::lt;
  if (tok == ">" || tok == "pp0") return rel::gt;
  if (tok == "=i") return rel::eq_i;
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (tok.size() == 3 && tok.substr(0, 2) == "ip" && digit(tok[2])) {
    int k = tok[2] - '0';
    if (valid(Kind::IP, k, 0)) return {Kind::IP, std::uint8_t(k), 0};
  }
  if (tok.size() == 4 && (tok.substr(0, 2) == "ii" || tok.substr(0, 2) == "pi") && digit(tok[2]) && digit(tok[3])) {
    Kind kind = tok[0] == 'i' ? Kind::II : Kind::PI;
    int k = tok[2] - '0', k2 = tok[3] - '0';
    if (valid(kind, k, k2)) return {kind, std::uint8_t(k), std::uint8_t(k2)};
  }
  throw DomainError("unknown relation token '" + std::string(tok) + "'");
}

int region_of_point(int a, int b, int p) {
  if (!(a < b)) throw DomainError("interval endpoints not ordered");
  if (p < a) return 0;
  if (p == a) return 1;
  if (p < b) return 2;
  if (p == b) return 3;
  return 4;
}

int region_of_point(int c, int p) { return p < c ? 0 : p == c ? 2 : 4; }

bool holds(Relation r, const Element& lhs, const Element& rhs) {
  if (lhs.sort != lhs_sort(r.kind) || rhs.sort != rhs_sort(r.kind))
    throw SortError("argument sorts do not match relation " + r.token());
  switch (r.kind) {
    case Kind::PP: return region_of_point(lhs.a, rhs.a) == r.k;
    case Kind::IP: return region_of_point(lhs.a, lhs.b, rhs.a) == r.k;
    case Kind::PI: return region_of_point(lhs.a, rhs.a) == r.k && region_of_point(lhs.a, rhs.b) == r.k2;
    case Kind::II: return region_of_point(lhs.a, lhs.b, rhs.a) == r.k && region_of_point(lhs.a, lhs.b, rhs.b) == r.k2;
  }
  return false;
}

Relation inverse(Relation r) {
  switch (r.kind) {
    case Kind::PP: return {Kind::PP, std::uint8_t(4 - r.k), 0};
    case Kind::IP: {
      int c = region_pos(r.k, 0);
      return {Kind::PI, std::uint8_t(region_of_point(c, 10)), std::uint8_t(region_of_point(c, 20))};
    }
    case Kind::PI:
      for (int k = 0; k <= 4; ++k)
        if (inverse(Relation{Kind::IP, std::uint8_t(k), 0}) == r) return {Kind::IP, std::uint8_t(k), 0};
      break;
    case Kind::II: {
      int c = region_pos(r.k, 0);
      int d = region_pos(r.k2, r.k == r.k2 ? 1 : 0);
      return {Kind::II, std::uint8_t(region_of_point(c, d, 10)), std::uint8_t(region_of_point(c, d, 20))};
    }
  }
  throw DomainError("no inverse for " + r.token());
}

const std::array<Relation, kCanonical>& canonical() { return kCanon; }

int canonical_index(Relation r) {
  for (int i = 0; i < kCanonical; ++i)
    if (kCanon[i] == r) return i;
  return -1;
}

bool is_canonical(Relation r) { return canonical_index(r) >= 0; }

Symmetry classify(Relation r) {
  if (!is_canonical(r)) throw DomainError(r.token() + " is not one of the 14 canonical relations");
  if (r == rel::ip0 || r == rel::ip1 || r == rel::ip3 || r == rel::ip4 || r == rel::ii14 || r == rel::ii03)
    return Symmetry::Reversible;
  if (r == rel::ip2 || r == rel::ii04) return Symmetry::SelfSymmetric;
  return Symmetry::SymmetricNonSelf;
}

Relation reverse(Relation r) {
  if (r == rel::ip0) return rel::ip4;
  if (r == rel::ip4) return rel::ip0;
  if (r == rel::ip1) return rel::ip3;
  if (r == rel::ip3) return rel::ip1;
  if (r == rel::ii14) return rel::ii03;
  if (r == rel::ii03) return rel::ii14;
  throw DomainError(r.token() + " is not reversible");
}

std::uint16_t universe_mask(Universe u) {
  switch (u) {
    case Universe::Rplus: return 0x3fff;
    case Universe::Pplus: return RelationSet{rel::eq_p, rel::lt}.bits();
    case Universe::Mplus: return RelationSet{rel::ip0, rel::ip1, rel::ip2, rel::ip3, rel::ip4}.bits();
    case Universe::Iplus:
      return RelationSet{rel::eq_i, rel::ii34, rel::ii14, rel::ii03, rel::ii24, rel::ii04, rel::ii44}.bits();
  }
  return 0;
}

std::string universe_name(Universe u) {
  switch (u) {
    case Universe::Rplus: return "Rplus";
    case Universe::Iplus: return "Iplus";
    case Universe::Mplus: return "Mplus";
    case Universe::Pplus: return "Pplus";
  }
  return "?";
}

Universe parse_universe(std::string_view s) {
  if (s == "Rplus") return Universe::Rplus;
  if (s == "Iplus") return Universe::Iplus;
  if (s == "Mplus") return Universe::Mplus;
  if (s == "Pplus") return Universe::Pplus;
  throw DomainError("unknown universe '" + std::string(s) + "'");
}

RelationSet::RelationSet(std::initializer_list<Relation> rs) {
  for (auto r : rs) insert(r);
}

RelationSet RelationSet::parse(std::string_view csv) {
  RelationSet s;
  std::string cur;
  auto flush = [&] {
    std::string t;
    for (char c : cur)
      if (c != ' ' && c != '{' && c != '}') t += c;
    if (!t.empty()) s.insert(Relation::parse(t));
    cur.clear();
  };
  for (char c : csv) {
    if (c == ',') flush();
    else cur += c;
  }
  flush();
  return s;
}

bool RelationSet::contains(Relation r) const {
  int i = canonical_index(r);
  return i >= 0 && (bits_ >> i & 1);
}

void RelationSet::insert(Relation r) {
  int i = canonical_index(r);
  if (i < 0) throw DomainError(r.token() + " is not one of the 14 canonical relations");
  bits_ |= std::uint16_t(1u << i);
}

void RelationSet::erase(Relation r) {
  int i = canonical_index(r);
  if (i >= 0) bits_ &= std::uint16_t(~(1u << i));
}

int RelationSet::size() const { return std::popcount(bits_); }

std::vector<Relation> RelationSet::members() const {
  std::vector<Relation> v;
  for (int i = 0; i < kCanonical; ++i)
    if (bits_ >> i & 1) v.push_back(kCanon[i]);
  return v;
}

std::vector<std::string> RelationSet::tokens() const {
  std::vector<std::string> v;
  for (auto r : members()) v.push_back(r.token());
  return v;
}

std::string RelationSet::str() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto& t : tokens()) {
    if (!first) os << ',';
    os << t;
    first = false;
  }
  os << '}';
  return os.str();
}

RelationSet symmetric_set(RelationSet s) {
  RelationSet out;
  for (auto r : s.members()) out.insert(classify(r) == Symmetry::Reversible ? reverse(r) : r);
  return out;
}

bool canonical_less(RelationSet x, RelationSet y) {
  if (x.size() != y.size()) return x.size() < y.size();
  return x.bits() < y.bits();
}

}  // namespace pint
