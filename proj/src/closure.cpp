#include "pint/closure.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace pint {

std::string comparison_name(Comparison c) {
  switch (c) {
    case Comparison::Equal: return "equal";
    case Comparison::LeftStronger: return "left-strictly-stronger";
    case Comparison::RightStronger: return "right-strictly-stronger";
    case Comparison::Incomparable: return "incomparable";
  }
  return "?";
}

ClosureEngine::ClosureEngine(const RuleBase& rb) {
  std::set<std::pair<std::uint16_t, int>> seen;
  auto add = [&](ClosureRule r) {
    if (seen.insert({r.premises.bits(), canonical_index(r.conclusion)}).second) rules_.push_back(std::move(r));
  };
  for (const auto& r : rb.rules) {
    if (r.column == Column::Implied) continue;
    add({r.id, r.premises, r.conclusion});
  }
  for (const auto& r : rb.rules) {
    if (r.column == Column::Implied) continue;
    add({r.id + "~", symmetric_set(r.premises), symmetric_conclusion(r.conclusion)});
  }
}

ClosureResult ClosureEngine::closure(RelationSet s, Universe u) const { return closure_in(s, universe_mask(u)); }

ClosureResult ClosureEngine::closure_in(RelationSet s, std::uint16_t mask) const {
  ClosureResult res;
  res.closed = RelationSet(std::uint16_t(s.bits() & mask));
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : rules_) {
      std::uint16_t c = std::uint16_t(1u << canonical_index(r.conclusion));
      if ((r.premises.bits() | c) & ~mask) continue;
      if (res.closed.bits() & c) continue;
      if (!r.premises.subset_of(res.closed)) continue;
      res.closed = RelationSet(std::uint16_t(res.closed.bits() | c));
      res.derivation[canonical_index(r.conclusion)] = {r.id, r.premises};
      res.order.push_back(r.conclusion);
      changed = true;
    }
  }
  return res;
}

const std::vector<std::uint16_t>& ClosureEngine::table(Universe u) const {
  std::lock_guard lock(mu_);
  auto it = tables_.find(u);
  if (it != tables_.end()) return it->second;
  std::uint16_t mask = universe_mask(u);
  std::vector<std::uint16_t> t(1u << kCanonical, 0);
  for (std::uint32_t s = mask;; s = (s - 1) & mask) {
    t[s] = closure(RelationSet(std::uint16_t(s)), u).closed.bits();
    if (s == 0) break;
  }
  return tables_.emplace(u, std::move(t)).first->second;
}

RelationSet ClosureEngine::closed(RelationSet s, Universe u) const {
  return RelationSet(table(u)[s.bits() & universe_mask(u)]);
}

std::optional<std::vector<Derivation>> ClosureEngine::defines_rel(RelationSet s, Relation r, Universe u) const {
  auto res = closure(s, u);
  if (!res.closed.contains(r)) return std::nullopt;
  std::vector<Derivation> chain;
  if (s.contains(r)) return chain;
  // Keep only the firings needed for r, in derivation order.
  std::set<int> need{canonical_index(r)};
  for (auto it = res.order.rbegin(); it != res.order.rend(); ++it) {
    int k = canonical_index(*it);
    if (!need.count(k)) continue;
    for (auto p : res.derivation[k].premises.members())
      if (!s.contains(p)) need.insert(canonical_index(p));
  }
  for (auto rel : res.order)
    if (need.count(canonical_index(rel))) chain.push_back(res.derivation[canonical_index(rel)]);
  return chain;
}

std::vector<std::uint16_t> subsets_canonical(std::uint16_t mask) {
  std::vector<std::uint16_t> v;
  for (std::uint32_t s = mask;; s = (s - 1) & mask) {
    v.push_back(std::uint16_t(s));
    if (s == 0) break;
  }
  std::sort(v.begin(), v.end(), [](std::uint16_t a, std::uint16_t b) {
    return canonical_less(RelationSet(a), RelationSet(b));
  });
  return v;
}

namespace {

template <class Pred>
std::vector<RelationSet> collect(std::uint16_t mask, Pred pred) {
  std::vector<RelationSet> out;
  for (auto s : subsets_canonical(mask))
    if (pred(s)) out.push_back(RelationSet(s));
  return out;
}

}  // namespace

std::vector<RelationSet> ClosureEngine::mcs(Relation r, Universe u) const {
  const auto& t = table(u);
  std::uint16_t mask = universe_mask(u);
  std::uint16_t bit = std::uint16_t(1u << canonical_index(r));
  if (!(mask & bit)) return {};
  return collect(mask, [&](std::uint16_t s) {
    if (!(t[s] & bit)) return false;
    for (std::uint16_t m = s; m; m &= m - 1)
      if (t[s & ~(m & -m)] & bit) return false;
    return true;
  });
}

std::vector<RelationSet> ClosureEngine::mis(Relation r, Universe u) const {
  const auto& t = table(u);
  std::uint16_t mask = universe_mask(u);
  std::uint16_t bit = std::uint16_t(1u << canonical_index(r));
  if (!(mask & bit)) return {};
  return collect(mask, [&](std::uint16_t s) {
    if (t[s] & bit) return false;
    for (std::uint16_t m = mask & ~s; m; m &= m - 1)
      if (!(t[s | (m & -m)] & bit)) return false;
    return true;
  });
}

std::vector<RelationSet> ClosureEngine::min_complete_sets(Universe u) const {
  const auto& t = table(u);
  std::uint16_t mask = universe_mask(u);
  return collect(mask, [&](std::uint16_t s) {
    if (t[s] != mask) return false;
    for (std::uint16_t m = s; m; m &= m - 1)
      if (t[s & ~(m & -m)] == mask) return false;
    return true;
  });
}

std::vector<RelationSet> ClosureEngine::max_incomplete_sets(Universe u) const {
  const auto& t = table(u);
  std::uint16_t mask = universe_mask(u);
  return collect(mask, [&](std::uint16_t s) {
    if (t[s] == mask) return false;
    for (std::uint16_t m = mask & ~s; m; m &= m - 1)
      if (t[s | (m & -m)] != mask) return false;
    return true;
  });
}

Comparison ClosureEngine::is_expressive_as(RelationSet a, RelationSet b, Universe u) const {
  auto ca = closed(a, u), cb = closed(b, u);
  if (ca == cb) return Comparison::Equal;
  if (cb.subset_of(ca)) return Comparison::LeftStronger;
  if (ca.subset_of(cb)) return Comparison::RightStronger;
  return Comparison::Incomparable;
}

nlohmann::json sets_to_json(const std::vector<RelationSet>& sets) {
  nlohmann::json j = nlohmann::json::array();
  for (auto s : sets) j.push_back(s.tokens());
  return j;
}

nlohmann::json to_json(const ClosureResult& r) {
  nlohmann::json d = nlohmann::json::array();
  for (auto rel : r.order) {
    const auto& der = r.derivation.at(canonical_index(rel));
    d.push_back({{"relation", rel.token()}, {"rule", der.rule}, {"premises", der.premises.tokens()}});
  }
  return {{"closure", r.closed.tokens()}, {"derivation", d}};
}

}  // namespace pint
