#include "doctest.h"
#include "pint/lattice.hpp"

using namespace pint;

namespace {

const ClosureEngine& engine() {
  static const ClosureEngine e(catalog());
  return e;
}

int count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("node counts") {
    auto m = build_lattice(engine(), Universe::Mplus);
    CHECK(m.nodes.size() == 10);
    CHECK(m.edges.size() == 15);
    auto i = build_lattice(engine(), Universe::Iplus);
    CHECK(i.nodes.size() == 19);
    CHECK(i.edges.size() == 37);
    auto p = build_lattice(engine(), Universe::Pplus);
    CHECK(p.nodes.size() == 3);
    CHECK(p.nodes[p.top()] == RelationSet::parse("=p,<"));
    CHECK(p.labels[p.top()] == RelationSet{rel::lt});
  }

  TEST_CASE("mixed lattice nodes") {
    auto m = build_lattice(engine(), Universe::Mplus);
    for (const char* s : {"", "ip0", "ip1", "ip2", "ip3", "ip4", "ip0,ip1", "ip3,ip4", "ip0,ip2,ip4",
                          "ip0,ip1,ip2,ip3,ip4"})
      CHECK_MESSAGE(m.index_of(RelationSet::parse(s)) >= 0, s);
    CHECK(m.bottom() == 0);
    CHECK(m.nodes[m.bottom()].empty());
  }

  TEST_CASE("symmetric automorphism") {
    for (auto u : {Universe::Mplus, Universe::Iplus, Universe::Pplus, Universe::Rplus})
      CHECK(symmetric_automorphism(build_lattice(engine(), u)));
  }

  TEST_CASE("full lattice regression") {
    auto r = build_lattice(engine(), Universe::Rplus);
    CHECK(r.nodes.size() == 180);
    CHECK(r.edges.size() == 555);
  }

  TEST_CASE("dot and json output") {
    auto m = build_lattice(engine(), Universe::Mplus);
    auto dot = to_dot(m);
    CHECK(count(dot, "[label=") == 10);
    CHECK(count(dot, " -> ") == int(m.edges.size()));
    CHECK(dot == to_dot(build_lattice(engine(), Universe::Mplus)));
    auto empty = to_dot(build_lattice(engine(), std::uint16_t(0)));
    CHECK(count(empty, "[label=") == 1);
    CHECK(count(empty, " -> ") == 0);
    auto j = to_json(m);
    CHECK(j["node_count"] == 10);
    CHECK(j["nodes"].size() == 10);
    CHECK(j["edges"].size() == m.edges.size());
  }
}
