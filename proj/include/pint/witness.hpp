#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pint/relation.hpp"
#include "pint/rulebase.hpp"
#include "pint/structure.hpp"

namespace pint {

enum class WitnessKind { FiniteExact, InfiniteSampled };

// Symbolic maps for constructions over infinite domains.
//   Doubling / Halving: on the iterated discrete order, infinite intervals keep their end point
//   and get twice / half the rational length; finite intervals and points are fixed.
//   Negation: on a window of the integers, a -> -a and [a,b] -> [-a, -a+(b-a)].
//   Shift: on a window of the integers, n -> n+1 and intervals are fixed.
enum class SampledMap { None, Doubling, Halving, Negation, Shift };

std::string kind_name(WitnessKind k);
std::string map_name(SampledMap m);

struct SampleBounds {
  int int_bound = 1;
  int denom_bound = 2;
  int numer_bound = 4;
  int window = 8;
};

struct Witness {
  std::string id;
  std::string provenance;
  WitnessKind kind = WitnessKind::FiniteExact;
  SampledMap map = SampledMap::None;
  bool dual = false;  // order dual of the described construction
  RelationSet respects;
  RelationSet breaks;
  PointIntervalStructure source;
  PointIntervalStructure target;
  std::vector<std::pair<int, int>> zeta_p;  // point positions
  std::vector<std::pair<int, int>> zeta_i;  // interval indices
};

// Elements related on both sides, by label.
struct PairExample {
  std::string x, y;        // source side
  std::string x2, y2;      // target side
};

struct RelationCheck {
  Relation rel;
  bool ok = true;
  std::optional<PairExample> example;  // violation for respects, exhibit for breaks
  // Break shown by the converse relation, which is an S-relation whenever the witness is one:
  // r fails on the source side and holds on the target side.
  bool converse = false;
};

struct WitnessReport {
  std::string id;
  bool partial = false;  // sampled: totality and surjectivity are proof-level properties
  bool sorts = true;
  std::vector<RelationCheck> respects;
  bool total = true;
  bool surjective = true;
  std::vector<RelationCheck> breaks;
  bool inconclusive = false;
  std::size_t zeta_p_size = 0;
  std::size_t zeta_i_size = 0;

  bool ok() const;
};

// Structures default to the same order on both sides; zeta_p defaults to the identity.
Witness witness_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const WitnessReport& r);

// Clauses (i)-(iii) and the claimed breaks, checked exhaustively.
WitnessReport check_witness(const Witness& w);
// Builds the map on a sample of its domain and checks it on every pair kept in the sample.
WitnessReport check_sampled(const Witness& w, const SampleBounds& bounds = {});

// Fills source, target and the pairs of a sampled witness from its map descriptor.
Witness materialize(const Witness& w, const SampleBounds& bounds = {});

// Same construction over the reversed orders; respects and breaks go through symmetric_set.
Witness dual_witness(const Witness& w);

// Constructions from the data file, plus the symmetric image of every one whose
// respected set is not self-symmetric. Sampled entries are materialized at default bounds.
std::vector<Witness> load_witnesses(const nlohmann::json& j, const SampleBounds& bounds = {});
std::vector<Witness> load_witnesses_file(const std::string& path, const SampleBounds& bounds = {});
const std::vector<Witness>& paper_catalog();
const std::string& embedded_witnesses_json();

// Smallest equal-size construction over canonical orders of 2..max_points points.
std::optional<Witness> search_witness(RelationSet s, Relation r, int max_points);

}  // namespace pint
