#include "pint/rulebase.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace pint {

extern const char* const kEmbeddedRules;

std::string column_name(Column c) {
  switch (c) {
    case Column::Proved: return "Proved";
    case Column::Symmetric: return "Symmetric";
    case Column::Implied: return "Implied";
    case Column::Trivial: return "Trivial";
  }
  return "?";
}

namespace {

Column parse_column(const std::string& s) {
  if (s == "Proved") return Column::Proved;
  if (s == "Symmetric") return Column::Symmetric;
  if (s == "Implied") return Column::Implied;
  if (s == "Trivial") return Column::Trivial;
  throw DataError("unknown column '" + s + "'");
}

std::string element_label(const PointIntervalStructure& s, Sort sort, int idx) {
  return sort == Sort::Point ? s.label(idx) : s.interval_label(idx);
}

void check_free_vars(const DefinabilityRule& r) {
  auto [x, y] = rule_vars(r.conclusion);
  for (const auto& v : free_vars(r.formula))
    if (v != x && v != y) throw DataError(r.id + ": unexpected free variable " + v);
}

}  // namespace

const DefinabilityRule* RuleBase::find(const std::string& id) const {
  for (const auto& r : rules)
    if (r.id == id) return &r;
  return nullptr;
}

std::pair<std::string, std::string> rule_vars(Relation conclusion) {
  std::string x = lhs_sort(conclusion.kind) == Sort::Point ? "x_p" : "x_i";
  std::string y = rhs_sort(conclusion.kind) == Sort::Point ? "y_p" : "y_i";
  return {x, y};
}

Relation symmetric_conclusion(Relation r) { return classify(r) == Symmetry::Reversible ? reverse(r) : r; }

Formula symmetric_formula(const Formula& proved, Relation conclusion) {
  auto d = dual_transform(proved);
  if (classify(conclusion) != Symmetry::SymmetricNonSelf) return d;
  auto [x, y] = rule_vars(conclusion);
  return substitute(d, {{x, y}, {y, x}});
}

RuleBase load_rules(const nlohmann::json& j) {
  RuleBase rb;
  const nlohmann::json* rules = &j;
  if (j.is_object()) {
    if (j.contains("macros")) {
      for (const auto& m : j["macros"]) {
        MacroInfo info;
        info.name = m.at("name").get<std::string>();
        info.params = m.at("params").get<std::vector<std::string>>();
        for (const auto& p : info.params) var_sort(p);
        if (m.contains("defines"))
          for (const auto& t : m["defines"]) info.defines.push_back(Relation::parse(t.get<std::string>()));
        if (rb.macros.count(info.name)) throw DataError("duplicate macro '" + info.name + "'");
        rb.macros[info.name] = Macro{info.params, parse(m.at("body").get<std::string>())};
        rb.macro_info.push_back(std::move(info));
      }
    }
    if (!j.contains("rules")) throw DataError("rule file has no \"rules\" array");
    rules = &j["rules"];
  }
  if (!rules->is_array()) throw DataError("rules must be an array");

  int auto_id = 0;
  for (const auto& e : *rules) {
    DefinabilityRule r;
    r.table = e.value("table", std::string());
    r.row = e.value("row", 0);
    r.id = e.contains("id") ? e["id"].get<std::string>() : "rule" + std::to_string(++auto_id);
    for (const auto& p : e.at("premises")) r.premises.insert(Relation::parse(p.get<std::string>()));
    r.conclusion = Relation::parse(e.at("conclusion").get<std::string>());
    if (!is_canonical(r.conclusion)) throw DataError(r.id + ": conclusion outside the canonical relations");
    r.column = parse_column(e.value("column", std::string("Proved")));
    if (e.contains("chain"))
      for (const auto& c : e["chain"]) r.chain.push_back(c.get<std::string>());
    r.pair = e.value("pair", std::string());
    if (e.contains("formula")) {
      r.formula_text = e["formula"].get<std::string>();
      try {
        r.formula = expand(parse(r.formula_text), rb.macros);
      } catch (const std::exception& ex) {
        throw DataError(r.id + ": " + ex.what());
      }
      check_free_vars(r);
    }
    if (r.column == Column::Proved) {
      if (!r.formula) throw DataError(r.id + ": Proved rows need a formula");
      if (!signature(r.formula).subset_of(r.premises))
        throw DataError(r.id + ": formula uses relations outside its premises");
    }
    if (rb.find(r.id)) throw DataError("duplicate rule id '" + r.id + "'");
    rb.rules.push_back(std::move(r));
  }

  for (auto& r : rb.rules) {
    if (r.column != Column::Symmetric || r.formula) continue;
    const DefinabilityRule* p = rb.find(r.pair);
    if (!p || !p->formula) throw DataError(r.id + ": Symmetric row without a formula-bearing pair");
    if (symmetric_set(p->premises) != r.premises || symmetric_conclusion(p->conclusion) != r.conclusion)
      throw DataError(r.id + ": not the symmetric image of " + p->id);
    r.formula = symmetric_formula(p->formula, p->conclusion);
    r.formula_text = print(r.formula);
  }
  return rb;
}

RuleBase load_rules_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(path + ": " + ex.what());
  }
  return load_rules(j);
}

const std::string& embedded_rules_json() {
  static const std::string s = kEmbeddedRules;
  return s;
}

const RuleBase& catalog() {
  static const RuleBase rb = [] {
    auto b = load_rules(nlohmann::json::parse(embedded_rules_json()));
    for (auto r : canonical()) {
      DefinabilityRule t;
      t.id = "trivial/" + r.token();
      t.premises = RelationSet{r};
      t.conclusion = r;
      t.column = Column::Trivial;
      auto [x, y] = rule_vars(r);
      t.formula = make_atom(r, x, y);
      t.formula_text = print(t.formula);
      b.rules.push_back(std::move(t));
    }
    return b;
  }();
  return rb;
}

VerifyReport verify_formula(const std::string& id, const Formula& f, Relation r, int max_points) {
  VerifyReport rep;
  rep.id = id;
  rep.max_points = max_points;
  auto [x, y] = rule_vars(r);
  for (int n = 2; n <= max_points; ++n) {
    auto s = finite_linear_order(n);
    RelationTables t(s);
    if (auto ce = find_counterexample(t, f, r, x, y)) {
      rep.ok = false;
      rep.counterexample = RuleCounterexample{n, element_label(s, lhs_sort(r.kind), ce->lhs),
                                              element_label(s, rhs_sort(r.kind), ce->rhs), ce->formula_value};
      break;
    }
  }
  return rep;
}

VerifyReport verify_rule(const DefinabilityRule& rule, int max_points) {
  if (!rule.formula) {
    VerifyReport rep;
    rep.id = rule.id;
    rep.applicable = false;
    rep.max_points = max_points;
    return rep;
  }
  return verify_formula(rule.id, rule.formula, rule.conclusion, max_points);
}

VerifyReport verify_macro(const RuleBase& rb, const MacroInfo& m, int max_points) {
  VerifyReport rep;
  rep.id = "macro/" + m.name;
  rep.max_points = max_points;
  if (m.defines.empty() || m.params.size() != 2) {
    rep.applicable = false;
    return rep;
  }
  for (auto r : m.defines)
    if (lhs_sort(r.kind) != var_sort(m.params[0]) || rhs_sort(r.kind) != var_sort(m.params[1]))
      throw DataError(rep.id + ": declared relation " + r.token() + " does not match the parameter sorts");
  auto f = expand(rb.macros.at(m.name).body, rb.macros);
  for (int n = 2; n <= max_points && rep.ok; ++n) {
    auto s = finite_linear_order(n);
    RelationTables t(s);
    Evaluator ev(t, f);
    Sort ls = var_sort(m.params[0]), rs = var_sort(m.params[1]);
    Assignment a;
    for (int i = 0; i < s.element_count(ls) && rep.ok; ++i)
      for (int k = 0; k < s.element_count(rs); ++k) {
        a[m.params[0]] = i;
        a[m.params[1]] = k;
        bool want = std::any_of(m.defines.begin(), m.defines.end(), [&](Relation r) { return t.get(r, i, k); });
        bool got = ev.eval(a);
        if (want != got) {
          rep.ok = false;
          rep.counterexample = RuleCounterexample{n, element_label(s, ls, i), element_label(s, rs, k), got};
          break;
        }
      }
  }
  return rep;
}

VerifySummary verify_all(const RuleBase& rb, int max_points, int jobs) {
  VerifySummary sum;
  std::vector<const DefinabilityRule*> todo;
  for (const auto& r : rb.rules) {
    switch (r.column) {
      case Column::Proved: ++sum.proved; break;
      case Column::Symmetric: ++sum.symmetric; break;
      case Column::Implied:
        if (r.formula) ++sum.implied;
        break;
      case Column::Trivial: ++sum.trivial; break;
    }
    if (r.formula) todo.push_back(&r);
  }
  std::vector<const MacroInfo*> macros;
  for (const auto& m : rb.macro_info)
    if (!m.defines.empty()) macros.push_back(&m);
  sum.macros = int(macros.size());

  std::size_t total = todo.size() + macros.size();
  std::vector<VerifyReport> out(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < total;)
      out[i] = i < todo.size() ? verify_rule(*todo[i], max_points)
                               : verify_macro(rb, *macros[i - todo.size()], max_points);
  };
  jobs = std::max(1, jobs);
  std::vector<std::thread> pool;
  for (int k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (auto& r : out)
    if (!r.ok) ++sum.failures;
  sum.reports = std::move(out);
  return sum;
}

nlohmann::json to_json(const VerifyReport& r) {
  nlohmann::json j{{"id", r.id}, {"ok", r.ok}, {"max_points", r.max_points}};
  if (!r.applicable) j["applicable"] = false;
  if (r.counterexample)
    j["counterexample"] = {{"points", r.counterexample->points},
                           {"lhs", r.counterexample->lhs},
                           {"rhs", r.counterexample->rhs},
                           {"formula_value", r.counterexample->formula_value}};
  return j;
}

nlohmann::json to_json(const VerifySummary& s) {
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& r : s.reports) reports.push_back(to_json(r));
  return {{"proved", s.proved},       {"symmetric", s.symmetric},
          {"formula_bearing", s.formula_bearing()},
          {"implied_with_formula", s.implied},
          {"trivial", s.trivial},     {"macros", s.macros},
          {"failures", s.failures},   {"reports", reports}};
}

}  // namespace pint
