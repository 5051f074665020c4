#include "pint/witness.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>

namespace pint {

extern const char* const kEmbeddedWitnesses;

std::string kind_name(WitnessKind k) {
  return k == WitnessKind::FiniteExact ? "finite-exact" : "infinite-sampled";
}

std::string map_name(SampledMap m) {
  switch (m) {
    case SampledMap::None: return "none";
    case SampledMap::Doubling: return "doubling";
    case SampledMap::Halving: return "halving";
    case SampledMap::Negation: return "negation";
    case SampledMap::Shift: return "shift";
  }
  return "?";
}

namespace {

SampledMap parse_map(const std::string& s) {
  for (auto m : {SampledMap::Doubling, SampledMap::Halving, SampledMap::Negation, SampledMap::Shift})
    if (map_name(m) == s) return m;
  throw DataError("unknown sampled map '" + s + "'");
}

RelationSet parse_set(const nlohmann::json& j) {
  RelationSet s;
  for (const auto& t : j) {
    auto r = Relation::parse(t.get<std::string>());
    if (!is_canonical(r)) throw DataError("relation " + r.token() + " is not canonical");
    s.insert(r);
  }
  return s;
}

int point_ref(const PointIntervalStructure& s, std::string label, const std::string& id) {
  if (auto p = s.find_point(label)) return *p;
  if (!label.empty() && label.back() == '\'') {
    label.pop_back();
    if (auto p = s.find_point(label)) return *p;
  }
  throw DataError(id + ": unknown point '" + label + "'");
}

int interval_ref(const PointIntervalStructure& s, const nlohmann::json& j, const std::string& id) {
  if (!j.is_array() || j.size() != 2) throw DataError(id + ": an interval is a pair of point labels");
  int a = point_ref(s, j[0].get<std::string>(), id), b = point_ref(s, j[1].get<std::string>(), id);
  if (a >= b) throw DataError(id + ": interval endpoints out of order");
  return s.interval_index(a, b);
}

// "identity": identity on every element not listed on the left; "union-identity": all of Id added.
void extend(std::vector<std::pair<int, int>>& z, const std::string& how, int count, const std::string& id) {
  if (how.empty() || how == "none") return;
  std::set<int> left;
  for (auto [x, y] : z) left.insert(x);
  if (how != "identity" && how != "union-identity") throw DataError(id + ": unknown extension '" + how + "'");
  for (int e = 0; e < count; ++e)
    if (how == "union-identity" || !left.count(e)) z.push_back({e, e});
  std::sort(z.begin(), z.end());
  z.erase(std::unique(z.begin(), z.end()), z.end());
}

std::vector<std::pair<int, int>> identity(int count) {
  std::vector<std::pair<int, int>> z;
  for (int e = 0; e < count; ++e) z.push_back({e, e});
  return z;
}

// Reverses both orders and carries the pairs along.
void dualize_structures(Witness& w) {
  int n = w.source.size(), m = w.target.size();
  for (auto& [x, y] : w.zeta_p) x = n - 1 - x, y = m - 1 - y;
  for (auto& [x, y] : w.zeta_i) x = dual_interval(w.source, x), y = dual_interval(w.target, y);
  w.source = order_dual(w.source);
  w.target = order_dual(w.target);
  std::sort(w.zeta_p.begin(), w.zeta_p.end());
  std::sort(w.zeta_i.begin(), w.zeta_i.end());
}

std::string element_label(const PointIntervalStructure& s, Sort sort, int idx) {
  return sort == Sort::Point ? s.label(idx) : s.interval_label(idx);
}

struct Checker {
  const Witness& w;
  RelationTables ts, tt;
  explicit Checker(const Witness& w) : w(w), ts(w.source), tt(w.target) {}

  const std::vector<std::pair<int, int>>& pairs(Sort s) const { return s == Sort::Point ? w.zeta_p : w.zeta_i; }

  PairExample example(Relation r, std::pair<int, int> x, std::pair<int, int> y) const {
    Sort ls = lhs_sort(r.kind), rs = rhs_sort(r.kind);
    return {element_label(w.source, ls, x.first), element_label(w.source, rs, y.first),
            element_label(w.target, ls, x.second), element_label(w.target, rs, y.second)};
  }

  RelationCheck respects(Relation r) const {
    RelationCheck c{r, true, std::nullopt};
    for (auto x : pairs(lhs_sort(r.kind)))
      for (auto y : pairs(rhs_sort(r.kind)))
        if (ts.get(r, x.first, y.first) != tt.get(r, x.second, y.second)) {
          c.ok = false;
          c.example = example(r, x, y);
          return c;
        }
    return c;
  }

  RelationCheck breaks(Relation r) const {
    RelationCheck c{r, false, std::nullopt};
    for (bool converse : {false, true})
      for (auto x : pairs(lhs_sort(r.kind)))
        for (auto y : pairs(rhs_sort(r.kind))) {
          bool left = ts.get(r, x.first, y.first), right = tt.get(r, x.second, y.second);
          if (left != right && left != converse) {
            c.ok = true;
            c.converse = converse;
            c.example = example(r, x, y);
            return c;
          }
        }
    return c;
  }
};

bool covers(const std::vector<std::pair<int, int>>& z, int count, bool left) {
  std::vector<char> seen(std::size_t(count), 0);
  for (auto [x, y] : z) seen[std::size_t(left ? x : y)] = 1;
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

WitnessReport run_checks(const Witness& w, bool partial) {
  WitnessReport rep;
  rep.id = w.id;
  rep.partial = partial;
  rep.zeta_p_size = w.zeta_p.size();
  rep.zeta_i_size = w.zeta_i.size();
  for (auto [x, y] : w.zeta_p)
    if (x < 0 || x >= w.source.size() || y < 0 || y >= w.target.size()) rep.sorts = false;
  for (auto [x, y] : w.zeta_i)
    if (x < 0 || x >= w.source.interval_count() || y < 0 || y >= w.target.interval_count()) rep.sorts = false;
  if (!rep.sorts) return rep;

  Checker ck(w);
  for (auto r : w.respects.members()) rep.respects.push_back(ck.respects(r));
  rep.total = covers(w.zeta_p, w.source.size(), true) && covers(w.zeta_i, w.source.interval_count(), true);
  rep.surjective = covers(w.zeta_p, w.target.size(), false) && covers(w.zeta_i, w.target.interval_count(), false);
  for (auto r : w.breaks.members()) rep.breaks.push_back(ck.breaks(r));
  return rep;
}

}  // namespace

bool WitnessReport::ok() const {
  if (!sorts || inconclusive) return false;
  if (!partial && !(total && surjective)) return false;
  auto good = [](const RelationCheck& c) { return c.ok; };
  return std::all_of(respects.begin(), respects.end(), good) && std::all_of(breaks.begin(), breaks.end(), good);
}

Witness witness_from_json(const nlohmann::json& j) {
  Witness w;
  w.id = j.value("id", std::string("witness"));
  w.provenance = j.value("provenance", std::string());
  auto kind = j.value("kind", std::string("finite-exact"));
  if (kind == "finite-exact") w.kind = WitnessKind::FiniteExact;
  else if (kind == "infinite-sampled") w.kind = WitnessKind::InfiniteSampled;
  else throw DataError(w.id + ": unknown kind '" + kind + "'");
  if (!j.contains("respects") || !j.contains("breaks")) throw DataError(w.id + ": needs respects and breaks");
  w.respects = parse_set(j["respects"]);
  w.breaks = parse_set(j["breaks"]);
  if ((w.respects & w.breaks) != RelationSet()) throw DataError(w.id + ": a relation is both respected and broken");
  w.dual = j.value("dual", false);

  if (w.kind == WitnessKind::InfiniteSampled) {
    w.map = parse_map(j.at("map").get<std::string>());
    return w;
  }
  if (!j.contains("source")) throw DataError(w.id + ": finite witness without a source");
  w.source = structure_from_json(j["source"]);
  w.target = j.contains("target") ? structure_from_json(j["target"]) : w.source;

  if (j.contains("zeta_p")) {
    for (const auto& p : j["zeta_p"]) {
      if (!p.is_array() || p.size() != 2) throw DataError(w.id + ": zeta_p entries are label pairs");
      w.zeta_p.push_back({point_ref(w.source, p[0].get<std::string>(), w.id),
                          point_ref(w.target, p[1].get<std::string>(), w.id)});
    }
    extend(w.zeta_p, j.value("extend_p", std::string()), std::min(w.source.size(), w.target.size()), w.id);
  } else {
    if (w.source.size() != w.target.size()) throw DataError(w.id + ": identity zeta_p needs equal domains");
    w.zeta_p = identity(w.source.size());
  }
  if (j.contains("zeta_i")) {
    for (const auto& p : j["zeta_i"]) {
      if (!p.is_array() || p.size() != 2) throw DataError(w.id + ": zeta_i entries are interval pairs");
      w.zeta_i.push_back({interval_ref(w.source, p[0], w.id), interval_ref(w.target, p[1], w.id)});
    }
    extend(w.zeta_i, j.value("extend_i", std::string()),
           std::min(w.source.interval_count(), w.target.interval_count()), w.id);
  } else {
    if (w.source.size() != w.target.size()) throw DataError(w.id + ": identity zeta_i needs equal domains");
    w.zeta_i = identity(w.source.interval_count());
  }
  std::sort(w.zeta_p.begin(), w.zeta_p.end());
  std::sort(w.zeta_i.begin(), w.zeta_i.end());
  if (w.dual) dualize_structures(w);
  return w;
}

nlohmann::json to_json(const Witness& w) {
  nlohmann::json j{{"id", w.id},
                   {"kind", kind_name(w.kind)},
                   {"respects", w.respects.tokens()},
                   {"breaks", w.breaks.tokens()}};
  if (!w.provenance.empty()) j["provenance"] = w.provenance;
  if (w.kind == WitnessKind::InfiniteSampled) {
    j["map"] = map_name(w.map);
    if (w.dual) j["dual"] = true;
    j["sample_points"] = w.source.size();
    j["zeta_p_size"] = w.zeta_p.size();
    j["zeta_i_size"] = w.zeta_i.size();
    return j;
  }
  j["source"] = to_json(w.source);
  j["target"] = to_json(w.target);
  nlohmann::json zp = nlohmann::json::array(), zi = nlohmann::json::array();
  for (auto [x, y] : w.zeta_p) zp.push_back(nlohmann::json::array({w.source.label(x), w.target.label(y) + "'"}));
  auto iv = [](const PointIntervalStructure& s, int i, const char* mark) {
    const auto& v = s.interval(i);
    return nlohmann::json::array({s.label(v.a) + mark, s.label(v.b) + mark});
  };
  for (auto [x, y] : w.zeta_i) zi.push_back(nlohmann::json::array({iv(w.source, x, ""), iv(w.target, y, "'")}));
  j["zeta_p"] = zp;
  j["zeta_i"] = zi;
  return j;
}

nlohmann::json to_json(const WitnessReport& r) {
  auto checks = [](const std::vector<RelationCheck>& cs) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& c : cs) {
      nlohmann::json e{{"relation", c.rel.token()}, {"ok", c.ok}};
      if (c.converse) e["converse"] = true;
      if (c.example)
        e["pairs"] = {{"source", {c.example->x, c.example->y}}, {"target", {c.example->x2, c.example->y2}}};
      a.push_back(e);
    }
    return a;
  };
  nlohmann::json j{{"id", r.id}, {"ok", r.ok()}, {"sorts", r.sorts}, {"respects", checks(r.respects)},
                   {"breaks", checks(r.breaks)}};
  if (r.partial) {
    j["total"] = "partial (proof-level property)";
    j["surjective"] = "partial (proof-level property)";
    j["zeta_p_size"] = r.zeta_p_size;
    j["zeta_i_size"] = r.zeta_i_size;
    if (r.inconclusive) j["inconclusive"] = true;
  } else {
    j["total"] = r.total;
    j["surjective"] = r.surjective;
  }
  return j;
}

WitnessReport check_witness(const Witness& w) {
  if (w.kind == WitnessKind::InfiniteSampled) return check_sampled(w);
  return run_checks(w, false);
}

Witness materialize(const Witness& w, const SampleBounds& b) {
  if (w.kind != WitnessKind::InfiniteSampled) return w;
  Witness m = w;
  m.zeta_p.clear();
  m.zeta_i.clear();
  if (w.map == SampledMap::Doubling || w.map == SampledMap::Halving) {
    auto pts = iterated_discrete_sample(b.int_bound, b.denom_bound, b.numer_bound);
    std::vector<std::string> labels;
    for (const auto& p : pts) labels.push_back(p.label());
    m.source = m.target = PointIntervalStructure(labels);
    m.zeta_p = identity(m.source.size());
    for (int i = 0; i < m.source.interval_count(); ++i) {
      const auto& v = m.source.interval(i);
      const auto &s = pts[std::size_t(v.a)], &e = pts[std::size_t(v.b)];
      if (s.q == e.q) {
        m.zeta_i.push_back({i, i});
        continue;
      }
      Rational len = e.q - s.q;
      IteratedDiscretePoint start{s.n, w.map == SampledMap::Doubling ? s.q - len : s.q + len / Rational(2)};
      auto it = std::lower_bound(pts.begin(), pts.end(), start);
      if (it == pts.end() || *it != start) continue;
      m.zeta_i.push_back({i, m.source.interval_index(int(it - pts.begin()), v.b)});
    }
  } else if (w.map == SampledMap::Negation || w.map == SampledMap::Shift) {
    int W = b.window;
    if (W < 1) throw DomainError("window must be positive");
    std::vector<std::string> labels;
    for (int v = -W; v <= W; ++v) labels.push_back(std::to_string(v));
    m.source = m.target = PointIntervalStructure(labels);
    auto pos = [W](int v) { return v + W; };
    if (w.map == SampledMap::Negation) {
      for (int a = -W; a <= W; ++a) m.zeta_p.push_back({pos(a), pos(-a)});
      for (int i = 0; i < m.source.interval_count(); ++i) {
        const auto& v = m.source.interval(i);
        int a = v.a - W, len = v.b - v.a;
        if (-a + len <= W) m.zeta_i.push_back({i, m.source.interval_index(pos(-a), pos(-a + len))});
      }
    } else {
      for (int a = -W; a < W; ++a) m.zeta_p.push_back({pos(a), pos(a + 1)});
      m.zeta_i = identity(m.source.interval_count());
    }
  } else {
    throw DataError(w.id + ": sampled witness without a map");
  }
  std::sort(m.zeta_p.begin(), m.zeta_p.end());
  std::sort(m.zeta_i.begin(), m.zeta_i.end());
  if (w.dual) dualize_structures(m);
  return m;
}

WitnessReport check_sampled(const Witness& w, const SampleBounds& bounds) {
  if (w.kind != WitnessKind::InfiniteSampled) return run_checks(w, false);
  auto m = materialize(w, bounds);
  auto rep = run_checks(m, true);
  // The sample must contain at least one element moved by the map.
  bool moved = std::any_of(m.zeta_i.begin(), m.zeta_i.end(), [](auto p) { return p.first != p.second; }) ||
               std::any_of(m.zeta_p.begin(), m.zeta_p.end(), [](auto p) { return p.first != p.second; });
  if (!moved) rep.inconclusive = true;
  for (const auto& c : rep.breaks)
    if (!c.ok) rep.inconclusive = true;
  return rep;
}

Witness dual_witness(const Witness& w) {
  Witness d = w;
  d.id = w.id + "~";
  if (!w.provenance.empty()) d.provenance = w.provenance + " (symmetric)";
  d.dual = !w.dual;
  d.respects = symmetric_set(w.respects);
  d.breaks = symmetric_set(w.breaks);
  if (w.source.size() > 0) dualize_structures(d);
  return d;
}

std::vector<Witness> load_witnesses(const nlohmann::json& j, const SampleBounds& bounds) {
  const nlohmann::json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("witnesses")) throw DataError("witness file has no \"witnesses\" array");
    arr = &j["witnesses"];
  }
  if (!arr->is_array()) throw DataError("witnesses must be an array");
  std::vector<Witness> base;
  std::set<std::string> ids;
  for (const auto& e : *arr) {
    auto w = witness_from_json(e);
    if (!ids.insert(w.id).second) throw DataError("duplicate witness id '" + w.id + "'");
    base.push_back(materialize(w, bounds));
  }
  std::vector<Witness> out;
  for (const auto& w : base) {
    out.push_back(w);
    if (symmetric_set(w.respects) != w.respects) out.push_back(dual_witness(w));
  }
  return out;
}

std::vector<Witness> load_witnesses_file(const std::string& path, const SampleBounds& bounds) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(path + ": " + ex.what());
  }
  return load_witnesses(j, bounds);
}

const std::string& embedded_witnesses_json() {
  static const std::string s = kEmbeddedWitnesses;
  return s;
}

const std::vector<Witness>& paper_catalog() {
  static const std::vector<Witness> c = load_witnesses(nlohmann::json::parse(embedded_witnesses_json()));
  return c;
}

namespace {

struct Node {
  Sort sort;
  int s, t;
};

bool agree(const RelationTables& ts, const RelationTables& tt, Relation r, const Node& u, const Node& v) {
  return ts.get(r, u.s, v.s) == tt.get(r, u.t, v.t);
}

class Search {
 public:
  Search(int n, RelationSet s) : st_(letters(n)), ts_(st_), tt_(st_) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) nodes_.push_back({Sort::Point, a, b});
    int m = st_.interval_count();
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) nodes_.push_back({Sort::Interval, a, b});
    int k = int(nodes_.size());
    compat_.assign(std::size_t(k), 0);
    for (int u = 0; u < k; ++u)
      for (int v = u; v < k; ++v)
        if (compatible(s, nodes_[u], nodes_[v])) {
          compat_[u] |= bit(v);
          compat_[v] |= bit(u);
        }
    for (int u = 0; u < k; ++u)
      if (compat_[u] & bit(u)) usable_ |= bit(u);
    // Elements to cover: source points, source intervals, target points, target intervals.
    cover_.assign(std::size_t(2 * (n + m)), 0);
    for (int u = 0; u < k; ++u) {
      const auto& x = nodes_[u];
      int off = x.sort == Sort::Point ? 0 : n;
      cover_[std::size_t(off + x.s)] |= bit(u);
      cover_[std::size_t(n + m + off + x.t)] |= bit(u);
    }
  }

  std::optional<std::uint64_t> find(Relation r) {
    Sort ls = lhs_sort(r.kind), rs = rhs_sort(r.kind);
    int k = int(nodes_.size());
    for (int u = 0; u < k; ++u) {
      if (nodes_[u].sort != ls || !(usable_ & bit(u))) continue;
      for (int v = 0; v < k; ++v) {
        if (nodes_[v].sort != rs || !(compat_[u] & bit(v)) || !(usable_ & bit(v))) continue;
        if (!ts_.get(r, nodes_[u].s, nodes_[v].s) || tt_.get(r, nodes_[u].t, nodes_[v].t)) continue;
        std::uint64_t chosen = bit(u) | bit(v);
        if (auto c = extend(chosen, usable_ & compat_[u] & compat_[v])) return c;
      }
    }
    return std::nullopt;
  }

  const PointIntervalStructure& structure() const { return st_; }
  const Node& node(int i) const { return nodes_[std::size_t(i)]; }

 private:
  static std::uint64_t bit(int i) { return std::uint64_t(1) << i; }

  static PointIntervalStructure letters(int n) {
    std::vector<std::string> l;
    for (int i = 0; i < n; ++i) l.push_back(std::string(1, char('a' + i)));
    return PointIntervalStructure(l);
  }

  bool compatible(RelationSet s, const Node& u, const Node& v) const {
    for (auto r : s.members()) {
      Sort ls = lhs_sort(r.kind), rs = rhs_sort(r.kind);
      if (u.sort == ls && v.sort == rs && !agree(ts_, tt_, r, u, v)) return false;
      if (v.sort == ls && u.sort == rs && !agree(ts_, tt_, r, v, u)) return false;
    }
    return true;
  }

  std::optional<std::uint64_t> extend(std::uint64_t chosen, std::uint64_t cand) const {
    int best = -1, best_count = 65;
    for (std::size_t e = 0; e < cover_.size(); ++e) {
      if (cover_[e] & chosen) continue;
      int c = std::popcount(cover_[e] & cand);
      if (c < best_count) best = int(e), best_count = c;
    }
    if (best < 0) return chosen;
    if (best_count == 0) return std::nullopt;
    std::uint64_t opts = cover_[std::size_t(best)] & cand;
    while (opts) {
      int v = std::countr_zero(opts);
      opts &= opts - 1;
      if (auto c = extend(chosen | bit(v), cand & compat_[std::size_t(v)])) return c;
      cand &= ~bit(v);
    }
    return std::nullopt;
  }

  PointIntervalStructure st_;
  RelationTables ts_, tt_;
  std::vector<Node> nodes_;
  std::vector<std::uint64_t> compat_;
  std::vector<std::uint64_t> cover_;
  std::uint64_t usable_ = 0;
};

}  // namespace

std::optional<Witness> search_witness(RelationSet s, Relation r, int max_points) {
  if (max_points > 4) throw DomainError("search is limited to 4 points");
  if (!is_canonical(r)) throw DomainError("target must be a canonical relation");
  if (s.contains(r)) return std::nullopt;
  for (int n = 2; n <= max_points; ++n) {
    Search search(n, s);
    auto found = search.find(r);
    if (!found) continue;
    Witness w;
    w.id = "search/" + r.token() + "/" + std::to_string(n);
    w.respects = s;
    w.breaks = RelationSet{r};
    w.source = w.target = search.structure();
    for (std::uint64_t m = *found; m; m &= m - 1) {
      const auto& x = search.node(std::countr_zero(m));
      (x.sort == Sort::Point ? w.zeta_p : w.zeta_i).push_back({x.s, x.t});
    }
    return w;
  }
  return std::nullopt;
}

}  // namespace pint
