// Acceptance run: one PASS/FAIL line per criterion.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracle.hpp"
#include "expected_tables.hpp"
#include "pint/closure.hpp"
#include "pint/lattice.hpp"
#include "pint/rulebase.hpp"
#include "pint/witness.hpp"
#include "properties.hpp"

using namespace pint;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void fail(const std::string& why) {
    pass = false;
    notes.push_back(why);
  }
  void note(const std::string& what) { notes.push_back(what); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << "s";
  return os.str();
}

std::string join(const std::vector<RelationSet>& v) {
  std::string out;
  for (auto s : v) out += (out.empty() ? "" : " ") + s.str();
  return out;
}

std::vector<RelationSet> parse_all(const std::vector<std::string>& v) {
  std::vector<RelationSet> out;
  for (const auto& s : v) out.push_back(RelationSet::parse(s));
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

const Witness* find_witness(const std::string& id) {
  for (const auto& w : paper_catalog())
    if (w.id == id) return &w;
  return nullptr;
}

template <class F>
void parallel_for(int n, F f) {
  int jobs = int(std::max(1u, std::thread::hardware_concurrency()));
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min(jobs, n); ++t)
    pool.emplace_back([&] {
      for (int i; (i = next++) < n;) f(i);
    });
  for (auto& th : pool) th.join();
}

Outcome harvest_tables() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  ClosureEngine e(catalog());
  for (const auto& h : expected::harvests()) {
    auto mcs = e.min_complete_sets(h.universe), mis = e.max_incomplete_sets(h.universe);
    auto want_mcs = parse_all(h.mcs), want_mis = parse_all(h.mis);
    std::string name = universe_name(h.universe);
    if (mcs != want_mcs) o.fail(name + " complete sets differ: got " + join(mcs));
    if (mis != want_mis) o.fail(name + " incomplete sets differ: got " + join(mis));
    o.note(name + " " + std::to_string(mcs.size()) + "/" + std::to_string(mis.size()));
  }
  double t = seconds_since(t0);
  if (t >= 10) o.fail("took " + fmt(t));
  o.note(fmt(t));
  return o;
}

Outcome spectra() {
  Outcome o;
  ClosureEngine e(catalog());
  // Minimally complete sets: rows of each relation's table, collapsed to minimal sets.
  std::map<int, std::vector<RelationSet>> rows;
  for (const auto& r : catalog().rules)
    if (r.column != Column::Trivial) rows[canonical_index(r.conclusion)].push_back(r.premises);
  int matched = 0;
  for (auto& [k, sets] : rows) {
    auto r = canonical()[k];
    std::set<std::uint16_t> want, got;
    for (auto s : sets)
      if (std::none_of(sets.begin(), sets.end(), [&](RelationSet t) { return t != s && t.subset_of(s); }))
        want.insert(s.bits());
    for (auto s : e.mcs(r))
      if (s != RelationSet{r}) got.insert(s.bits());
    if (want == got) {
      ++matched;
      continue;
    }
    std::string d = "mcs(" + r.token() + "):";
    for (auto b : want)
      if (!got.count(b)) d += " table-only " + RelationSet(b).str();
    for (auto b : got)
      if (!want.count(b)) d += " computed-only " + RelationSet(b).str();
    o.fail(d);
  }
  o.note(std::to_string(matched) + "/" + std::to_string(rows.size()) + " relations match their tables");

  // Maximally incomplete sets against the bullets of the incompleteness tables.
  int mis_ok = 0, mis_all = 0;
  for (auto u : {Universe::Iplus, Universe::Mplus, Universe::Rplus})
    for (auto r : RelationSet(universe_mask(u)).members()) {
      ++mis_all;
      std::set<std::uint16_t> want, got;
      for (const auto& row : expected::mis_rows())
        if (row.universe == u && RelationSet::parse(row.marked).contains(r)) want.insert(RelationSet::parse(row.set).bits());
      for (auto s : e.mis(r, u)) got.insert(s.bits());
      if (want == got) {
        ++mis_ok;
        continue;
      }
      std::string d = "mis(" + r.token() + ", " + universe_name(u) + "):";
      for (auto b : want)
        if (!got.count(b)) d += " table-only " + RelationSet(b).str();
      for (auto b : got)
        if (!want.count(b)) d += " computed-only " + RelationSet(b).str();
      o.fail(d);
    }
  o.note(std::to_string(mis_ok) + "/" + std::to_string(mis_all) + " bullet columns match");
  return o;
}

Outcome verify_definitions() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  auto sum = verify_all(catalog(), 5, 1);
  double t = seconds_since(t0);
  for (const auto& r : sum.reports)
    if (r.applicable && !r.ok) o.fail(r.id + " has a counterexample");
  int checked = 0;
  for (const auto& r : sum.reports) checked += r.applicable;
  o.note(std::to_string(sum.formula_bearing()) + " formula-bearing rules, " + std::to_string(checked) +
         " items checked at 5 points, single worker, " + fmt(t));
  if (t >= 600) o.fail("took " + fmt(t));
  return o;
}

Outcome witnesses() {
  Outcome o;
  int finite = 0;
  for (const auto& w : paper_catalog()) {
    if (w.kind != WitnessKind::FiniteExact) continue;
    ++finite;
    auto rep = check_witness(w);
    if (rep.ok()) continue;
    std::string why = w.id + " fails:";
    for (const auto& c : rep.respects)
      if (!c.ok) {
        why += " violates " + c.rel.token();
        if (c.example)
          why += " on (" + c.example->x + "," + c.example->y + ") -> (" + c.example->x2 + "," + c.example->y2 + ")";
      }
    for (const auto& c : rep.breaks)
      if (!c.ok) why += " no break of " + c.rel.token();
    if (!rep.total || !rep.surjective) why += " not total/surjective";
    o.fail(why);
  }
  // Every bullet is claimed by exactly one construction.
  for (const auto& row : expected::mis_rows())
    for (auto r : RelationSet::parse(row.marked).members()) {
      int n = 0;
      for (const auto& w : paper_catalog()) n += w.respects == RelationSet::parse(row.set) && w.breaks.contains(r);
      if (n != 1) o.fail("bullet " + row.set + " / " + r.token() + " claimed " + std::to_string(n) + " times");
    }
  auto sampled = [&](const char* id, RelationSet need) {
    const auto* w = find_witness(id);
    if (!w) return o.fail(std::string("missing ") + id);
    auto rep = check_sampled(*w);
    if (!rep.ok()) o.fail(std::string(id) + " fails at default bounds");
    RelationSet shown;
    for (const auto& c : rep.breaks)
      if (c.ok && c.example) shown.insert(c.rel);
    if (!need.subset_of(shown)) o.fail(std::string(id) + " exhibits only " + shown.str());
  };
  sampled("Iplus/3a", RelationSet::parse("ii34,ii14,ii24,ii44"));
  sampled("Iplus/3b", RelationSet{rel::ii04});
  o.note(std::to_string(finite) + " finite constructions");
  return o;
}

Outcome cross_consistency() {
  Outcome o;
  ClosureEngine e(catalog());
  long violations = 0;
  for (auto r : canonical()) {
    auto mis = e.mis(r);
    for (std::uint32_t m = 0; m < (1u << kCanonical); ++m) {
      RelationSet s{std::uint16_t(m)};
      bool derivable = e.closed(s).contains(r);
      bool covered = std::any_of(mis.begin(), mis.end(), [&](RelationSet t) { return s.subset_of(t); });
      violations += derivable == covered;
    }
  }
  if (violations) o.fail(std::to_string(violations) + " duality violations");
  o.note("duality over 16384 x 14: " + std::to_string(violations) + " violations");
  for (const auto& w : paper_catalog()) {
    auto clash = w.breaks & e.closed(w.respects);
    if (!clash.empty()) o.fail(w.id + " breaks " + clash.str() + " which is derivable from " + w.respects.str());
  }
  return o;
}

Outcome lattices() {
  Outcome o;
  ClosureEngine e(catalog());
  auto m = build_lattice(e, Universe::Mplus), i = build_lattice(e, Universe::Iplus), r = build_lattice(e, Universe::Rplus);
  if (m.nodes.size() != 10) o.fail("Mplus lattice has " + std::to_string(m.nodes.size()) + " nodes");
  if (i.nodes.size() != 19) o.fail("Iplus lattice has " + std::to_string(i.nodes.size()) + " nodes");
  if (!symmetric_automorphism(m) || !symmetric_automorphism(i)) o.fail("symmetric_set is not an automorphism");
  if (r.nodes.size() != 180) o.fail("Rplus lattice has " + std::to_string(r.nodes.size()) + " nodes, frozen value 180");
  o.note("Mplus " + std::to_string(m.nodes.size()) + " nodes, Iplus " + std::to_string(i.nodes.size()) +
         " nodes, Rplus " + std::to_string(r.nodes.size()) + " nodes");
  return o;
}

Outcome properties() {
  Outcome o;
  ClosureEngine e(catalog());
  auto report = [&](const char* name, const props::Tally& t) {
    if (t.violations) o.fail(std::string(name) + ": " + std::to_string(t.violations) + " violations");
    o.note(std::string(name) + " " + std::to_string(t.checks));
  };
  report("closure laws", props::closure_laws(e, 1000, 2024));
  report("relation laws", props::relation_laws(5));
  report("dual transform", props::dual_soundness_catalog(catalog(), 4));
  props::Tally truth;
  int used = 0;
  for (const auto& w : paper_catalog()) {
    if (w.kind != WitnessKind::FiniteExact) continue;
    // Preservation is only claimed for genuine S-relations.
    if (!check_witness(w).ok()) {
      o.note("truth preservation skips " + w.id + " (not an S-relation)");
      continue;
    }
    auto t = props::truth_preservation(w, 200, 5 + std::uint32_t(used));
    if (t.checks < 200) o.fail(w.id + ": only " + std::to_string(t.checks) + " samples");
    truth.checks += t.checks;
    truth.violations += t.violations;
    ++used;
  }
  report("truth preservation", truth);
  return o;
}

Outcome search_agreement() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  ClosureEngine e(catalog());
  e.table(Universe::Rplus);
  for (const auto& w : paper_catalog()) {
    if (w.kind != WitnessKind::FiniteExact || w.source.size() > 3 || !check_witness(w).ok()) continue;
    for (auto r : w.breaks.members())
      if (!search_witness(w.respects, r, 3)) o.fail("no witness found for " + w.respects.str() + " / " + r.token());
  }

  // Every pair against the brute-force oracle on 2 and 3 points.
  auto p2 = oracle::witness_profiles(2), p3 = oracle::witness_profiles(3);
  constexpr int kSets = 1 << kCanonical;
  std::atomic<long> derivable_found{0}, disagreements{0}, derivable{0}, open{0};
  parallel_for(kSets, [&](int m) {
    auto s = std::uint16_t(m);
    auto c = e.closed(RelationSet(s));
    for (int k = 0; k < kCanonical; ++k) {
      if (s >> k & 1) continue;
      auto r = canonical()[k];
      bool found = search_witness(RelationSet(s), r, 3).has_value();
      bool exists = oracle::witness_exists(p2, s, k) || oracle::witness_exists(p3, s, k);
      if (found != exists) ++disagreements;
      if (c.contains(r)) {
        ++derivable;
        if (found) ++derivable_found;
      } else if (!found) {
        ++open;
      }
    }
  });
  if (derivable_found) o.fail(std::to_string(derivable_found) + " witnesses for derivable relations");
  if (disagreements) o.fail(std::to_string(disagreements) + " disagreements with brute force");
  double t = seconds_since(t0);
  if (t >= 300) o.fail("took " + fmt(t));
  o.note(std::to_string(derivable) + " derivable pairs, none with a witness; " + std::to_string(open) +
         " underivable pairs without a 3-point witness; " + fmt(t));
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"1 harvest of complete and incomplete sets", harvest_tables},
      {"2 per-relation spectra", spectra},
      {"3 definition verification at 5 points", verify_definitions},
      {"4 witness verification", witnesses},
      {"5 cross-consistency", cross_consistency},
      {"6 lattice counts", lattices},
      {"7 property suites", properties},
      {"8 search oracle agreement", search_agreement},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o.fail(std::string("exception: ") + ex.what());
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << "\n";
    for (const auto& n : o.notes) std::cout << "     " << n << "\n";
    std::cout.flush();
  }
  std::cout << (criteria.size() - std::size_t(failed)) << "/" << criteria.size() << " criteria pass\n";
  return failed ? 1 : 0;
}
