#include "pint/lattice.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace pint {

int ExpressivenessLattice::index_of(RelationSet closed) const {
  auto it = std::find(nodes.begin(), nodes.end(), closed);
  return it == nodes.end() ? -1 : int(it - nodes.begin());
}

int ExpressivenessLattice::top() const { return int(nodes.size()) - 1; }
int ExpressivenessLattice::bottom() const { return 0; }

ExpressivenessLattice build_lattice(const ClosureEngine& engine, Universe u) {
  return build_lattice(engine, universe_mask(u));
}

ExpressivenessLattice build_lattice(const ClosureEngine& engine, std::uint16_t mask) {
  ExpressivenessLattice l;
  l.universe = mask;
  // Subsets come in canonical order, so the first generator seen for a node is its label
  // and is minimal: any proper subset is visited earlier and would have a smaller closure.
  std::map<std::uint16_t, std::uint16_t> label;
  for (auto s : subsets_canonical(mask)) {
    auto c = engine.closure_in(RelationSet(s), mask).closed.bits();
    label.emplace(c, s);
  }
  for (auto& [c, g] : label) l.nodes.push_back(RelationSet(c));
  std::sort(l.nodes.begin(), l.nodes.end(), canonical_less);
  for (auto n : l.nodes) l.labels.push_back(RelationSet(label[n.bits()]));

  int n = int(l.nodes.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || !l.nodes[a].subset_of(l.nodes[b])) continue;
      bool cover = true;
      for (int c = 0; c < n && cover; ++c)
        if (c != a && c != b && l.nodes[a].subset_of(l.nodes[c]) && l.nodes[c].subset_of(l.nodes[b])) cover = false;
      if (cover) l.edges.push_back({a, b});
    }
  return l;
}

namespace {

std::string set_text(RelationSet s) {
  std::string out = "{";
  bool first = true;
  for (auto& t : s.tokens()) {
    if (!first) out += ", ";
    out += t;
    first = false;
  }
  return out + "}";
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_dot(const ExpressivenessLattice& l) {
  std::ostringstream os;
  os << "digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < l.nodes.size(); ++i)
    os << "  n" << i << " [label=\"" << escape(set_text(l.labels[i])) << "\\n" << escape(set_text(l.nodes[i]))
       << "\"];\n";
  for (auto [a, b] : l.edges) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

nlohmann::json to_json(const ExpressivenessLattice& l) {
  nlohmann::json nodes = nlohmann::json::array(), edges = nlohmann::json::array();
  for (std::size_t i = 0; i < l.nodes.size(); ++i)
    nodes.push_back({{"id", i}, {"closure", l.nodes[i].tokens()}, {"label", l.labels[i].tokens()}});
  for (auto [a, b] : l.edges) edges.push_back({a, b});
  return {{"universe", RelationSet(l.universe).tokens()},
          {"node_count", l.nodes.size()},
          {"edge_count", l.edges.size()},
          {"nodes", nodes},
          {"edges", edges}};
}

bool symmetric_automorphism(const ExpressivenessLattice& l) {
  std::vector<int> image;
  for (auto n : l.nodes) {
    int k = l.index_of(symmetric_set(n));
    if (k < 0) return false;
    image.push_back(k);
  }
  auto edges = l.edges;
  std::sort(edges.begin(), edges.end());
  for (auto [a, b] : l.edges)
    if (!std::binary_search(edges.begin(), edges.end(), std::pair{image[a], image[b]})) return false;
  return true;
}

}  // namespace pint
