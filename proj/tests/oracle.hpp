#pragma once

// Independent reference implementations used by the tests.

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "pint/relation.hpp"
#include "pint/rulebase.hpp"

namespace oracle {

// Where p falls with respect to [a,b]: before, at a, inside, at b, after.
inline int region(int a, int b, int p) {
  if (p < a) return 0;
  if (p == a) return 1;
  if (p < b) return 2;
  if (p == b) return 3;
  return 4;
}

// Relative to a single point c: below, equal, above.
inline int region(int c, int p) { return p < c ? 0 : p == c ? 2 : 4; }

inline bool holds(pint::Relation r, const pint::Element& x, const pint::Element& y) {
  using pint::Kind;
  switch (r.kind) {
    case Kind::PP: return region(x.a, y.a) == r.k;
    case Kind::IP: return region(x.a, x.b, y.a) == r.k;
    case Kind::PI: return region(x.a, y.a) == r.k && region(x.a, y.b) == r.k2;
    case Kind::II: return region(x.a, x.b, y.a) == r.k && region(x.a, x.b, y.b) == r.k2;
  }
  return false;
}

struct Rule {
  std::uint16_t premises;
  int conclusion;  // canonical index
};

// Proved, Symmetric and trivial rows of the catalog and their images under symmetry.
inline std::vector<Rule> closure_rules(const pint::RuleBase& rb) {
  std::set<std::pair<std::uint16_t, int>> seen;
  std::vector<Rule> out;
  auto add = [&](pint::RelationSet p, pint::Relation c) {
    if (seen.insert({p.bits(), pint::canonical_index(c)}).second) out.push_back({p.bits(), pint::canonical_index(c)});
  };
  for (const auto& r : rb.rules) {
    if (r.column == pint::Column::Implied) continue;
    add(r.premises, r.conclusion);
    auto c = pint::classify(r.conclusion) == pint::Symmetry::Reversible ? pint::reverse(r.conclusion) : r.conclusion;
    add(pint::symmetric_set(r.premises), c);
  }
  return out;
}

inline std::uint16_t closure(const std::vector<Rule>& rules, std::uint16_t s, std::uint16_t mask = 0x3fff) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : rules) {
      std::uint16_t c = std::uint16_t(1u << r.conclusion);
      if ((r.premises & ~mask) || !(c & mask)) continue;
      if ((r.premises & ~s) == 0 && !(s & c)) {
        s |= c;
        changed = true;
      }
    }
  }
  return s;
}


// (respected, broken) relation masks of every total and surjective pairing of the n-point order with itself.
// A break means r holds on the left and fails on the right.
inline std::vector<std::pair<std::uint16_t, std::uint16_t>> witness_profiles(int n) {
  using namespace pint;
  std::vector<Element> pts, ivs;
  for (int a = 0; a < n; ++a) pts.push_back(Element::point(a));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) ivs.push_back(Element::interval(a, b));

  auto pairings = [](int m) {
    std::vector<std::vector<std::pair<int, int>>> out;
    for (std::uint32_t mask = 0; mask < (1u << (m * m)); ++mask) {
      std::vector<std::pair<int, int>> z;
      std::uint32_t left = 0, right = 0;
      for (int k = 0; k < m * m; ++k)
        if (mask >> k & 1) {
          z.push_back({k / m, k % m});
          left |= 1u << (k / m);
          right |= 1u << (k % m);
        }
      if (left == (1u << m) - 1 && right == (1u << m) - 1) out.push_back(z);
    }
    return out;
  };

  struct Profile {
    std::uint16_t respected = 0x3fff, broken = 0;
  };
  auto profile = [&](const std::vector<std::pair<int, int>>& zx, const std::vector<Element>& ex,
                     const std::vector<std::pair<int, int>>& zy, const std::vector<Element>& ey, Kind kind) {
    Profile p;
    for (int i = 0; i < kCanonical; ++i) {
      auto r = canonical()[i];
      if (r.kind != kind) continue;
      for (auto [x, x2] : zx)
        for (auto [y, y2] : zy) {
          bool l = oracle::holds(r, ex[x], ey[y]), rr = oracle::holds(r, ex[x2], ey[y2]);
          if (l != rr) p.respected &= std::uint16_t(~(1u << i));
          if (l && !rr) p.broken |= std::uint16_t(1u << i);
        }
    }
    return p;
  };

  auto zp = pairings(n), zi = pairings(int(ivs.size()));
  std::vector<Profile> pp, ii;
  for (const auto& z : zp) pp.push_back(profile(z, pts, z, pts, Kind::PP));
  for (const auto& z : zi) ii.push_back(profile(z, ivs, z, ivs, Kind::II));
  std::set<std::pair<std::uint16_t, std::uint16_t>> seen;
  for (std::size_t a = 0; a < zp.size(); ++a)
    for (std::size_t b = 0; b < zi.size(); ++b) {
      auto ip = profile(zi[b], ivs, zp[a], pts, Kind::IP);
      seen.insert({std::uint16_t(pp[a].respected & ii[b].respected & ip.respected),
                   std::uint16_t(pp[a].broken | ii[b].broken | ip.broken)});
    }
  return {seen.begin(), seen.end()};
}

inline bool witness_exists(const std::vector<std::pair<std::uint16_t, std::uint16_t>>& profiles, std::uint16_t s,
                           int r) {
  for (auto [resp, br] : profiles)
    if ((s & ~resp) == 0 && (br >> r & 1)) return true;
  return false;
}

}  // namespace oracle
