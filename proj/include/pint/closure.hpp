#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pint/relation.hpp"
#include "pint/rulebase.hpp"

namespace pint {

// A rule of the closure database: premises |- conclusion.
struct ClosureRule {
  std::string id;  // source rule id; images under symmetry carry a trailing "~"
  RelationSet premises;
  Relation conclusion{};
};

struct Derivation {
  std::string rule;
  RelationSet premises;
};

struct ClosureResult {
  RelationSet closed;
  std::map<int, Derivation> derivation;  // canonical index -> firing rule
  std::vector<Relation> order;           // relations in the order they were derived
};

enum class Comparison { Equal, LeftStronger, RightStronger, Incomparable };
std::string comparison_name(Comparison c);

class ClosureEngine {
 public:
  // Proved, Symmetric and Trivial rows plus their symmetric images.
  explicit ClosureEngine(const RuleBase& rb);

  const std::vector<ClosureRule>& rules() const { return rules_; }

  ClosureResult closure(RelationSet s, Universe u = Universe::Rplus) const;
  ClosureResult closure_in(RelationSet s, std::uint16_t mask) const;
  RelationSet closed(RelationSet s, Universe u = Universe::Rplus) const;  // cached, bitmask only

  // Rules in firing order when r is derivable from s.
  std::optional<std::vector<Derivation>> defines_rel(RelationSet s, Relation r, Universe u = Universe::Rplus) const;

  std::vector<RelationSet> mcs(Relation r, Universe u = Universe::Rplus) const;
  std::vector<RelationSet> mis(Relation r, Universe u = Universe::Rplus) const;
  std::vector<RelationSet> min_complete_sets(Universe u) const;
  std::vector<RelationSet> max_incomplete_sets(Universe u) const;

  Comparison is_expressive_as(RelationSet a, RelationSet b, Universe u = Universe::Rplus) const;

  // Closure of every subset of the universe, indexed by bitmask over ℜ⁺ (entries outside the universe unused).
  const std::vector<std::uint16_t>& table(Universe u) const;

 private:
  std::vector<ClosureRule> rules_;
  mutable std::mutex mu_;
  mutable std::map<Universe, std::vector<std::uint16_t>> tables_;
};

// Subsets of mask in canonical order (cardinality, then bitmask).
std::vector<std::uint16_t> subsets_canonical(std::uint16_t mask);

nlohmann::json sets_to_json(const std::vector<RelationSet>& sets);
nlohmann::json to_json(const ClosureResult& r);

}  // namespace pint
