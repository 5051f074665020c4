#include <algorithm>
#include <tuple>

#include "doctest.h"
#include "pint/structure.hpp"

using namespace pint;

TEST_SUITE("structures") {
  TEST_CASE("finite linear orders") {
    CHECK(finite_linear_order(3).size() == 3);
    CHECK(finite_linear_order(3).interval_count() == 3);
    CHECK(finite_linear_order(1).interval_count() == 0);
    CHECK(finite_linear_order(5).interval_count() == 10);
    auto s = finite_linear_order(4);
    for (int i = 0; i < s.interval_count(); ++i) {
      auto v = s.interval(i);
      CHECK(v.a < v.b);
      CHECK(s.interval_index(v.a, v.b) == i);
    }
    CHECK_THROWS(s.interval_index(2, 1));
    CHECK(s.interval_label(s.interval_index(0, 3)) == "[0,3]");
    CHECK(is_discrete(s));
    CHECK(s.has(ClassTag::Lin));
    CHECK(s.has(ClassTag::Dis));
  }

  TEST_CASE("labels must be distinct") {
    CHECK_THROWS(PointIntervalStructure({"a", "b", "a"}));
  }

  TEST_CASE("order dual") {
    PointIntervalStructure s({"a", "b", "c"});
    auto d = order_dual(s);
    CHECK(d.labels() == std::vector<std::string>{"c", "b", "a"});
    CHECK(order_dual(d) == s);
    int ab = s.interval_index(0, 1);
    int k = dual_interval(s, ab);
    CHECK(d.label(d.interval(k).a) == "b");
    CHECK(d.label(d.interval(k).b) == "a");
  }

  TEST_CASE("json round trip") {
    PointIntervalStructure s({"x", "y", "z"});
    auto j = to_json(s);
    CHECK(j.dump() == R"({"points":["x","y","z"]})");
    CHECK(structure_from_json(j) == s);
    CHECK_THROWS(structure_from_json(nlohmann::json::array()));
    auto id = structure_from_json(nlohmann::json::parse(R"({"points":[[0,"1/2"],[1,"1/2"]]})"));
    CHECK(id.label(0) == "(0,1/2)");
  }

  TEST_CASE("iterated discrete sample (1,1,1)") {
    auto pts = iterated_discrete_sample(1, 1, 1);
    // Reference: every (n, q) with |n| <= 1 and q in {-1, 0, 1}, sorted by q then n.
    std::vector<std::pair<int, int>> want;
    for (int n = -1; n <= 1; ++n)
      for (int q = -1; q <= 1; ++q) want.push_back({q, n});
    std::sort(want.begin(), want.end());
    REQUIRE(pts.size() == want.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CHECK(pts[i].q == Rational(want[i].first));
      CHECK(pts[i].n == want[i].second);
    }
    CHECK(is_discrete_sample(pts));
  }

  TEST_CASE("iterated discrete order") {
    IteratedDiscretePoint a{0, Rational(0)}, b{1, Rational(0)}, c{1, Rational(-1)}, d{-1, Rational(0)};
    CHECK(a < b);
    CHECK(c < d);
    CHECK(a.successor() == b);
    CHECK(b.predecessor() == a);
    auto pts = iterated_discrete_sample(1, 2, 4);
    CHECK(pts.size() == 39);
    CHECK(is_discrete_sample(pts));
    CHECK(std::is_sorted(pts.begin(), pts.end()));
  }

  TEST_CASE("rationals") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK((Rational(1, 2) + Rational(1, 3)).str() == "5/6");
    CHECK(Rational::parse("-3/6") == Rational(-1, 2));
    CHECK(Rational::parse("4") == Rational(4));
    CHECK(Rational(-2).str() == "-2");
    CHECK(IteratedDiscretePoint{0, Rational(1, 2)}.label() == "(0,1/2)");
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS(Rational(1, 0));
  }

  TEST_CASE("relation tables agree with holds") {
    auto s = finite_linear_order(4);
    RelationTables t(s);
    for (const auto& r : all_relations()) {
      Sort ls = lhs_sort(r.kind), rs = rhs_sort(r.kind);
      for (int i = 0; i < s.element_count(ls); ++i)
        for (int j = 0; j < s.element_count(rs); ++j)
          CHECK(t.get(r, i, j) == holds(r, s.element(ls, i), s.element(rs, j)));
    }
  }
}
