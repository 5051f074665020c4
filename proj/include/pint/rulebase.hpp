#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pint/formula.hpp"
#include "pint/relation.hpp"
#include "pint/structure.hpp"

namespace pint {

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Column { Proved, Symmetric, Implied, Trivial };
std::string column_name(Column c);

struct DefinabilityRule {
  std::string id;
  std::string table;
  int row = 0;
  RelationSet premises;
  Relation conclusion{};
  Column column = Column::Proved;
  std::string formula_text;  // as written in the data file; empty when absent
  Formula formula;           // macro-expanded; null when the row has none
  std::vector<std::string> chain;
  std::string pair;  // Symmetric rows: id of the Proved row they mirror

  bool has_formula() const { return formula != nullptr; }
};

struct MacroInfo {
  std::string name;
  std::vector<std::string> params;
  std::vector<Relation> defines;  // union of relations the macro should define, if declared
};

struct RuleBase {
  MacroTable macros;
  std::vector<MacroInfo> macro_info;
  std::vector<DefinabilityRule> rules;

  const DefinabilityRule* find(const std::string& id) const;
};

// Free variable names of a rule for the given conclusion: x_p/y_p, x_i/y_p or x_i/y_i.
std::pair<std::string, std::string> rule_vars(Relation conclusion);

// Formula of the mirrored row: dual transform, plus a swap of the free
// variables when the conclusion is symmetric but not self-symmetric.
Formula symmetric_formula(const Formula& proved, Relation conclusion);
Relation symmetric_conclusion(Relation r);

RuleBase load_rules(const nlohmann::json& j);
RuleBase load_rules_file(const std::string& path);
// The built-in catalog, including generated formulas for Symmetric rows and trivial {r} |- r rules.
const RuleBase& catalog();
const std::string& embedded_rules_json();

struct RuleCounterexample {
  int points = 0;
  std::string lhs, rhs;  // element labels
  bool formula_value = false;
};

struct VerifyReport {
  std::string id;
  bool applicable = true;  // false when the rule has no formula
  bool ok = true;
  int max_points = 0;
  std::optional<RuleCounterexample> counterexample;
};

VerifyReport verify_formula(const std::string& id, const Formula& f, Relation r, int max_points);
VerifyReport verify_rule(const DefinabilityRule& rule, int max_points);
// Checks that a macro with declared "defines" relations defines their union.
VerifyReport verify_macro(const RuleBase& rb, const MacroInfo& m, int max_points);

struct VerifySummary {
  std::vector<VerifyReport> reports;
  int proved = 0, symmetric = 0, implied = 0, trivial = 0, macros = 0;
  int failures = 0;
  int formula_bearing() const { return proved + symmetric; }
};

VerifySummary verify_all(const RuleBase& rb, int max_points, int jobs = 1);

nlohmann::json to_json(const VerifyReport& r);
nlohmann::json to_json(const VerifySummary& s);

}  // namespace pint
