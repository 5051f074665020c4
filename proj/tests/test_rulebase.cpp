#include <algorithm>

#include "doctest.h"
#include "pint/formula.hpp"
#include "pint/rulebase.hpp"

using namespace pint;

namespace {

const DefinabilityRule* find_rule(RelationSet premises, Relation conclusion, Column col) {
  for (const auto& r : catalog().rules)
    if (r.premises == premises && r.conclusion == conclusion && r.column == col) return &r;
  return nullptr;
}

}  // namespace

TEST_SUITE("rulebase") {
  TEST_CASE("catalog contents") {
    auto* r = find_rule(RelationSet::parse("ip1,ip3"), rel::ii34, Column::Proved);
    REQUIRE(r);
    auto expected = parse("E z_p (ip3(x_i,z_p) & ip1(y_i,z_p))");
    CHECK(defines_on(finite_linear_order(4), r->formula, rel::ii34, "x_i", "y_i"));
    CHECK(defines_on(finite_linear_order(4), expected, rel::ii34, "x_i", "y_i"));
    CHECK(find_rule(RelationSet{rel::ip1}, rel::eq_p, Column::Proved));
    auto* lt = find_rule(RelationSet{rel::lt}, rel::eq_p, Column::Proved);
    REQUIRE(lt);
    CHECK(equal(lt->formula, parse("~<(x_p,y_p) & ~<(y_p,x_p)")));
  }

  TEST_CASE("row counts") {
    int proved = 0, symmetric = 0, trivial = 0;
    for (const auto& r : catalog().rules) {
      proved += r.column == Column::Proved;
      symmetric += r.column == Column::Symmetric;
      trivial += r.column == Column::Trivial;
      if (r.column == Column::Proved || r.column == Column::Symmetric) CHECK(r.has_formula());
    }
    CHECK(proved == 58);
    CHECK(symmetric == 27);
    CHECK(trivial == 14);
  }

  TEST_CASE("symmetric rows mirror their pair") {
    for (const auto& r : catalog().rules) {
      if (r.column != Column::Symmetric) continue;
      auto* p = catalog().find(r.pair);
      REQUIRE(p);
      CHECK(symmetric_set(p->premises) == r.premises);
      CHECK(symmetric_conclusion(p->conclusion) == r.conclusion);
    }
  }

  TEST_CASE("rule variables") {
    CHECK(rule_vars(rel::lt) == std::pair<std::string, std::string>{"x_p", "y_p"});
    CHECK(rule_vars(rel::ip2) == std::pair<std::string, std::string>{"x_i", "y_p"});
    CHECK(rule_vars(rel::ii04) == std::pair<std::string, std::string>{"x_i", "y_i"});
  }

  TEST_CASE("verification of single rules") {
    auto rep = verify_formula("ii44", parse("E z_i (ii34(x_i,z_i) & ii34(z_i,y_i))"), rel::ii44, 5);
    CHECK(rep.ok);
    CHECK_FALSE(rep.counterexample);
    auto eqp = verify_formula("eqp", parse("A x_i (ip1(x_i,x_p) <-> ip1(x_i,y_p))"), rel::eq_p, 5);
    CHECK(eqp.ok);
    // Arguments of the second conjunct swapped.
    auto bad = verify_formula("bad", parse("E z_i (ii34(x_i,z_i) & ii34(y_i,z_i))"), rel::ii44, 5);
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.counterexample);
    CHECK(bad.counterexample->points >= 2);
  }

  TEST_CASE("whole catalog up to four points") {
    auto sum = verify_all(catalog(), 4, 2);
    CHECK(sum.failures == 0);
    CHECK(sum.formula_bearing() == 85);
    CHECK(sum.macros > 0);
  }

  TEST_CASE("malformed rule files") {
    using nlohmann::json;
    CHECK_THROWS_AS(load_rules(json::parse(R"({"nope":[]})")), DataError);
    CHECK_THROWS_AS(load_rules(json::parse(R"([{"premises":["ip1"],"conclusion":"=p","column":"Proved"}])")),
                    DataError);
    CHECK_THROWS_AS(
        load_rules(json::parse(R"J([{"premises":["ip1"],"conclusion":"=p","formula":"<(x_p,y_p)"}])J")), DataError);
    CHECK_THROWS_AS(load_rules_file("/nonexistent/rules.json"), DataError);
    auto rb = load_rules(json::parse(
        R"J([{"id":"t","premises":["<"],"conclusion":"=p","formula":"~<(x_p,y_p) & ~<(y_p,x_p)"}])J"));
    REQUIRE(rb.rules.size() == 1);
    CHECK(verify_rule(rb.rules[0], 4).ok);
  }
}
