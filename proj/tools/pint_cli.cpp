#include <algorithm>
#include <atomic>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pint/closure.hpp"
#include "pint/formula.hpp"
#include "pint/lattice.hpp"
#include "pint/relation.hpp"
#include "pint/rulebase.hpp"
#include "pint/structure.hpp"
#include "pint/witness.hpp"

using nlohmann::json;
using namespace pint;

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kError = 2;

struct Options {
  std::string universe = "Rplus";
  std::string cls = "lin";
  int max_points = 0;
  std::string rules_file;
  std::string witnesses_file;
  std::string format = "json";
  bool human = false;
  int jobs = 0;
  std::string set;
  std::string other;
  std::string target;
  int points = 3;
  std::string formula;
  std::vector<std::string> assign;
  std::string id;
  SampleBounds bounds;
};

struct Context {
  const Options& o;
  std::unique_ptr<RuleBase> owned_rules;
  const RuleBase* rules = nullptr;
  std::unique_ptr<ClosureEngine> engine;

  explicit Context(const Options& opts) : o(opts) {}

  const RuleBase& rb() {
    if (!rules) {
      if (o.rules_file.empty()) {
        rules = &catalog();
      } else {
        owned_rules = std::make_unique<RuleBase>(load_rules_file(o.rules_file));
        rules = owned_rules.get();
      }
    }
    return *rules;
  }
  const ClosureEngine& eng() {
    if (!engine) engine = std::make_unique<ClosureEngine>(rb());
    return *engine;
  }
  Universe universe() const { return parse_universe(o.universe); }
  bool human() const { return o.human || o.format == "human"; }
  int jobs() const {
    if (o.jobs > 0) return o.jobs;
    return std::max(1u, std::thread::hardware_concurrency());
  }
};

std::string set_text(RelationSet s) {
  std::string out = "{";
  bool first = true;
  for (const auto& t : s.tokens()) {
    out += first ? "" : ", ";
    out += t;
    first = false;
  }
  return out + "}";
}

RelationSet parse_set_flag(const std::string& text, const char* flag) {
  if (text.empty()) throw DomainError(std::string("missing ") + flag);
  return RelationSet::parse(text);
}

Relation parse_target(const std::string& text) {
  if (text.empty()) throw DomainError("missing --target");
  auto r = Relation::parse(text);
  if (!is_canonical(r)) throw DomainError("target must be one of the 14 canonical relations");
  return r;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// Runs f(i) for i in [0, n) on up to `jobs` threads.
template <class F>
void parallel_for(int n, int jobs, F f) {
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min(jobs, n); ++t)
    pool.emplace_back([&] {
      for (int i; (i = next++) < n;) f(i);
    });
  for (auto& th : pool) th.join();
}

std::string conclusion_of(const ClosureEngine& e, const std::string& rule) {
  for (const auto& r : e.rules())
    if (r.id == rule) return r.conclusion.token();
  return "";
}

int cmd_closure(Context& c) {
  auto s = parse_set_flag(c.o.set, "--set");
  auto u = c.universe();
  auto res = c.eng().closure(s, u);
  if (c.human()) {
    std::cout << set_text(s) << " -> " << set_text(res.closed) << "\n";
    for (auto rel : res.order) {
      const auto& d = res.derivation.at(canonical_index(rel));
      std::cout << "  " << rel.token() << " by " << d.rule << " from " << set_text(d.premises) << "\n";
    }
    return kYes;
  }
  json j = to_json(res);
  j["set"] = s.tokens();
  j["universe"] = universe_name(u);
  emit(j);
  return kYes;
}

int cmd_defines(Context& c) {
  auto s = parse_set_flag(c.o.set, "--set");
  auto r = parse_target(c.o.target);
  auto chain = c.eng().defines_rel(s, r, c.universe());
  if (c.human()) {
    std::cout << (chain ? "yes" : "no") << "\n";
    if (chain)
      for (const auto& d : *chain)
        std::cout << "  " << set_text(d.premises) << " |- " << conclusion_of(c.eng(), d.rule) << "  [" << d.rule
                  << "]\n";
    return chain ? kYes : kNo;
  }
  json steps = json::array();
  if (chain)
    for (const auto& d : *chain)
      steps.push_back({{"rule", d.rule}, {"premises", d.premises.tokens()}, {"conclusion", conclusion_of(c.eng(), d.rule)}});
  emit({{"set", s.tokens()}, {"target", r.token()}, {"answer", chain ? "yes" : "no"}, {"chain", steps}});
  return chain ? kYes : kNo;
}

void print_sets(const std::string& title, const std::vector<RelationSet>& sets) {
  std::cout << title << " (" << sets.size() << ")\n";
  for (auto s : sets) std::cout << "  " << set_text(s) << "\n";
}

int cmd_spectrum(Context& c, bool complete) {
  auto r = parse_target(c.o.target);
  auto u = c.universe();
  if (!RelationSet(universe_mask(u)).contains(r)) throw DomainError("target outside the universe");
  auto sets = complete ? c.eng().mcs(r, u) : c.eng().mis(r, u);
  const char* key = complete ? "mcs" : "mis";
  if (c.human()) {
    print_sets(std::string(key) + " " + r.token() + " in " + universe_name(u), sets);
    return kYes;
  }
  emit({{"target", r.token()}, {"universe", universe_name(u)}, {key, sets_to_json(sets)}});
  return kYes;
}

int cmd_harvest(Context& c) {
  auto u = c.universe();
  auto mcs = c.eng().min_complete_sets(u);
  auto mis = c.eng().max_incomplete_sets(u);
  if (c.human()) {
    print_sets("minimally complete", mcs);
    print_sets("maximally incomplete", mis);
    return kYes;
  }
  emit({{"universe", universe_name(u)}, {"class", c.o.cls}, {"mcs", sets_to_json(mcs)}, {"mis", sets_to_json(mis)}});
  return kYes;
}

int cmd_equiv(Context& c) {
  auto a = parse_set_flag(c.o.set, "--set");
  auto b = parse_set_flag(c.o.other, "--other");
  auto cmp = c.eng().is_expressive_as(a, b, c.universe());
  if (c.human())
    std::cout << set_text(a) << " vs " << set_text(b) << ": " << comparison_name(cmp) << "\n";
  else
    emit({{"set", a.tokens()}, {"other", b.tokens()}, {"comparison", comparison_name(cmp)}});
  return cmp == Comparison::Equal ? kYes : kNo;
}

int cmd_verify_definitions(Context& c) {
  int n = c.o.max_points > 0 ? c.o.max_points : 5;
  auto sum = verify_all(c.rb(), n, c.jobs());
  if (c.human()) {
    for (const auto& r : sum.reports) {
      std::cout << (r.applicable ? (r.ok ? "ok   " : "FAIL ") : "n/a  ") << r.id;
      if (r.counterexample)
        std::cout << "  (" << r.counterexample->points << " points: " << r.counterexample->lhs << ", "
                  << r.counterexample->rhs << ")";
      std::cout << "\n";
    }
    std::cout << sum.failures << " failure(s)\n";
  } else {
    emit(to_json(sum));
  }
  return sum.failures == 0 ? kYes : kNo;
}

int cmd_verify_witnesses(Context& c) {
  const auto& b = c.o.bounds;
  auto ws = c.o.witnesses_file.empty() ? load_witnesses(nlohmann::json::parse(embedded_witnesses_json()), b)
                                       : load_witnesses_file(c.o.witnesses_file, b);
  if (!c.o.id.empty()) {
    std::erase_if(ws, [&](const Witness& w) { return w.id != c.o.id; });
    if (ws.empty()) throw DomainError("no witness with id '" + c.o.id + "'");
  }
  std::vector<WitnessReport> reps(ws.size());
  parallel_for(int(ws.size()), c.jobs(), [&](int i) { reps[i] = check_sampled(ws[i], b); });

  bool all = true;
  json out = json::array();
  for (std::size_t i = 0; i < ws.size(); ++i) {
    auto clash = ws[i].breaks & c.eng().closed(ws[i].respects);
    bool ok = reps[i].ok() && clash.empty();
    all = all && ok;
    if (c.human()) {
      std::cout << (ok ? "ok   " : "FAIL ") << ws[i].id;
      for (const auto& r : reps[i].respects)
        if (!r.ok) std::cout << "  violates " << r.rel.token();
      for (const auto& r : reps[i].breaks)
        if (!r.ok) std::cout << "  no break for " << r.rel.token();
      if (!clash.empty()) std::cout << "  derivable " << set_text(clash);
      std::cout << "\n";
      continue;
    }
    json j = to_json(reps[i]);
    j["derivable_breaks"] = clash.tokens();
    j["ok"] = ok;
    out.push_back(j);
  }
  if (!c.human()) emit({{"witnesses", out}, {"ok", all}});
  return all ? kYes : kNo;
}

int cmd_search_witness(Context& c) {
  auto s = parse_set_flag(c.o.set, "--set");
  auto r = parse_target(c.o.target);
  int n = c.o.max_points > 0 ? c.o.max_points : 3;
  auto w = search_witness(s, r, n);
  if (c.human()) {
    std::cout << (w ? "found " + w->id : std::string("none")) << "\n";
    if (w) std::cout << to_json(*w).dump() << "\n";
    return w ? kYes : kNo;
  }
  json j = {{"set", s.tokens()}, {"target", r.token()}, {"max_points", n}, {"found", bool(w)}};
  if (w) j["witness"] = to_json(*w);
  emit(j);
  return w ? kYes : kNo;
}

int parse_position(const std::string& t, int n) {
  std::size_t used = 0;
  int v = std::stoi(t, &used);
  if (used != t.size() || v < 0 || v >= n) throw DomainError("bad position '" + t + "'");
  return v;
}

int cmd_eval(Context& c) {
  if (c.o.formula.empty()) throw DomainError("missing --formula");
  if (c.o.points < 1) throw DomainError("--points must be positive");
  auto s = finite_linear_order(c.o.points);
  auto f = expand(parse(c.o.formula), c.rb().macros);
  Assignment a;
  json shown = json::object();
  for (const auto& item : c.o.assign) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw DomainError("assignment '" + item + "' needs var=value");
    std::string var = item.substr(0, eq), val = item.substr(eq + 1);
    if (!is_var(var)) throw DomainError("bad variable '" + var + "'");
    if (var_sort(var) == Sort::Point) {
      a[var] = parse_position(val, s.size());
    } else {
      if (val.size() < 5 || val.front() != '[' || val.back() != ']' || val.find(',') == std::string::npos)
        throw DomainError("interval value '" + val + "' must look like [a,b]");
      auto comma = val.find(',');
      int l = parse_position(val.substr(1, comma - 1), s.size());
      int r = parse_position(val.substr(comma + 1, val.size() - comma - 2), s.size());
      int idx = s.interval_index(l, r);
      if (idx < 0) throw DomainError("no interval " + val);
      a[var] = idx;
    }
    shown[var] = val;
  }
  for (const auto& v : free_vars(f))
    if (!a.count(v)) throw DomainError("free variable '" + v + "' is not assigned");
  bool value = eval(s, f, a);
  if (c.human())
    std::cout << (value ? "true" : "false") << "\n";
  else
    emit({{"points", c.o.points}, {"formula", print(f)}, {"assignment", shown}, {"value", value}});
  return value ? kYes : kNo;
}

int cmd_lattice(Context& c) {
  auto l = build_lattice(c.eng(), c.universe());
  if (c.o.format == "dot") {
    std::cout << to_dot(l);
  } else if (c.human()) {
    std::cout << l.nodes.size() << " nodes, " << l.edges.size() << " cover edges\n";
    for (std::size_t i = 0; i < l.nodes.size(); ++i)
      std::cout << "  " << i << "  " << set_text(l.labels[i]) << "  " << set_text(l.nodes[i]) << "\n";
  } else {
    emit(to_json(l));
  }
  return kYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Definability and expressiveness of point/interval relations"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--universe", o.universe, "Rplus|Iplus|Mplus|Pplus")
        ->check(CLI::IsMember({"Rplus", "Iplus", "Mplus", "Pplus"}));
    sub->add_option("--class", o.cls, "lin|dis")->check(CLI::IsMember({"lin", "dis"}));
    sub->add_option("--rules", o.rules_file, "rule file (JSON)");
    sub->add_option("--format", o.format, "json|human|dot")->check(CLI::IsMember({"json", "human", "dot"}));
    sub->add_flag("--human", o.human, "tabular text output");
    sub->add_option("--jobs", o.jobs, "worker threads");
  };

  std::map<std::string, std::function<int(Context&)>> handlers;
  auto verb = [&](const std::string& name, const std::string& help, std::function<int(Context&)> h) {
    auto* sub = app.add_subcommand(name, help);
    common(sub);
    handlers[name] = std::move(h);
    return sub;
  };

  auto* closure = verb("closure", "closure of a relation set", cmd_closure);
  closure->add_option("--set", o.set, "comma-separated relations")->required();

  auto* defines = verb("defines", "whether a set defines a relation", cmd_defines);
  defines->add_option("--set", o.set)->required();
  defines->add_option("--target", o.target)->required();

  auto* mcs = verb("mcs", "minimal sets defining a relation", [](Context& c) { return cmd_spectrum(c, true); });
  mcs->add_option("--target", o.target)->required();
  auto* mis = verb("mis", "maximal sets not defining a relation", [](Context& c) { return cmd_spectrum(c, false); });
  mis->add_option("--target", o.target)->required();

  verb("harvest", "minimally complete and maximally incomplete sets", cmd_harvest);

  auto* equiv = verb("equiv", "compare the expressive power of two sets", cmd_equiv);
  equiv->add_option("--set", o.set)->required();
  equiv->add_option("--other", o.other)->required();

  auto* vd = verb("verify-definitions", "check every rule formula on finite orders", cmd_verify_definitions);
  vd->add_option("--max-points", o.max_points, "largest order checked (default 5)");

  auto* vw = verb("verify-witnesses", "check the incompleteness constructions", cmd_verify_witnesses);
  vw->add_option("--witnesses", o.witnesses_file, "witness file (JSON)");
  vw->add_option("--id", o.id, "check a single witness");
  vw->add_option("--int-bound", o.bounds.int_bound, "iterated-discrete sample: integer coordinate bound");
  vw->add_option("--denom-bound", o.bounds.denom_bound, "iterated-discrete sample: largest denominator");
  vw->add_option("--numer-bound", o.bounds.numer_bound, "iterated-discrete sample: numerator bound");
  vw->add_option("--window", o.bounds.window, "integer window half-width");

  auto* sw = verb("search-witness", "search a finite construction", cmd_search_witness);
  sw->add_option("--set", o.set)->required();
  sw->add_option("--target", o.target)->required();
  sw->add_option("--max-points", o.max_points, "largest order searched (default 3, at most 4)");

  auto* ev = verb("eval", "evaluate a formula on a finite order", cmd_eval);
  ev->add_option("--points", o.points, "order size");
  ev->add_option("--formula", o.formula)->required();
  ev->add_option("--assign", o.assign, "var=value, e.g. x_p=1 or x_i=[0,2]");

  verb("lattice", "expressiveness lattice of a universe", cmd_lattice);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    Context ctx(o);
    for (auto* sub : app.get_subcommands()) return handlers.at(sub->get_name())(ctx);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
