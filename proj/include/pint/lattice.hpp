#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pint/closure.hpp"

namespace pint {

struct ExpressivenessLattice {
  std::uint16_t universe = 0;  // mask over ℜ⁺
  std::vector<RelationSet> nodes;   // closed sets in canonical order
  std::vector<RelationSet> labels;  // least minimal generator of each node
  std::vector<std::pair<int, int>> edges;  // (covered, covering)

  int index_of(RelationSet closed) const;
  int top() const;
  int bottom() const;
};

ExpressivenessLattice build_lattice(const ClosureEngine& engine, Universe u);
// Any sub-universe given as a mask; rules must lie entirely inside it.
ExpressivenessLattice build_lattice(const ClosureEngine& engine, std::uint16_t mask);

std::string to_dot(const ExpressivenessLattice& l);
nlohmann::json to_json(const ExpressivenessLattice& l);

// True when symmetric_set maps nodes to nodes and cover edges to cover edges.
bool symmetric_automorphism(const ExpressivenessLattice& l);

}  // namespace pint
