#include "pint/structure.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace pint {

PointIntervalStructure::PointIntervalStructure(std::vector<std::string> labels) : labels_(std::move(labels)) {
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw DomainError("duplicate point label");
  int n = size();
  index_.assign(std::size_t(n) * n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      index_[std::size_t(a) * n + b] = int(intervals_.size());
      intervals_.push_back({a, b});
    }
}

int PointIntervalStructure::interval_index(int a, int b) const {
  int n = size();
  if (a < 0 || b < 0 || a >= n || b >= n || a >= b) throw DomainError("not an interval of this structure");
  return index_[std::size_t(a) * n + b];
}

std::optional<int> PointIntervalStructure::find_point(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return int(it - labels_.begin());
}

std::string PointIntervalStructure::interval_label(int i) const {
  return "[" + labels_[interval(i).a] + "," + labels_[interval(i).b] + "]";
}

PointIntervalStructure finite_linear_order(int n) {
  if (n <= 0) throw DomainError("a linear order needs at least one point");
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return PointIntervalStructure(std::move(labels));
}

PointIntervalStructure order_dual(const PointIntervalStructure& s) {
  auto labels = s.labels();
  std::reverse(labels.begin(), labels.end());
  return PointIntervalStructure(std::move(labels));
}

int dual_interval(const PointIntervalStructure& s, int i) {
  int n = s.size();
  const auto& iv = s.interval(i);
  return s.interval_index(n - 1 - iv.b, n - 1 - iv.a);
}

bool is_discrete(const PointIntervalStructure& s) {
  // Positions are consecutive integers, so each inner point p has p-1 and p+1 as direct neighbours.
  return s.size() >= 1;
}

nlohmann::json to_json(const PointIntervalStructure& s) { return {{"points", s.labels()}}; }

PointIntervalStructure structure_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
    throw DomainError("structure must be an object with a \"points\" array");
  std::vector<std::string> labels;
  for (const auto& p : j["points"]) {
    if (p.is_string()) labels.push_back(p.get<std::string>());
    else if (p.is_array()) labels.push_back(id_point_from_json(p).label());
    else labels.push_back(p.dump());
  }
  return PointIntervalStructure(std::move(labels));
}

RelationTables::RelationTables(const PointIntervalStructure& s) : s_(&s) {
  for (const auto& r : all_relations()) {
    Sort ls = lhs_sort(r.kind), rs = rhs_sort(r.kind);
    Table t;
    int nl = s.element_count(ls), nr = s.element_count(rs);
    t.cols = std::size_t(nr);
    t.data.resize(std::size_t(nl) * nr);
    for (int x = 0; x < nl; ++x)
      for (int y = 0; y < nr; ++y) t.data[std::size_t(x) * nr + y] = holds(r, s.element(ls, x), s.element(rs, y));
    tables_.push_back(std::move(t));
  }
}

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw DomainError("zero denominator");
  if (d < 0) n = -n, d = -d;
  std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
}

Rational operator+(Rational x, Rational y) { return {x.num * y.den + y.num * x.den, x.den * y.den}; }
Rational operator-(Rational x, Rational y) { return {x.num * y.den - y.num * x.den, x.den * y.den}; }
Rational operator*(Rational x, Rational y) { return {x.num * y.num, x.den * y.den}; }
Rational operator/(Rational x, Rational y) { return {x.num * y.den, x.den * y.num}; }

std::strong_ordering operator<=>(const Rational& x, const Rational& y) { return x.num * y.den <=> y.num * x.den; }

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(std::stoll(s));
  return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

std::string IteratedDiscretePoint::label() const { return "(" + std::to_string(n) + "," + q.str() + ")"; }

std::vector<IteratedDiscretePoint> iterated_discrete_sample(int int_bound, int denom_bound, int numer_bound) {
  if (int_bound < 0 || denom_bound < 1 || numer_bound < 0) throw DomainError("sample bounds produce an empty sample");
  std::set<Rational> qs;
  for (int d = 1; d <= denom_bound; ++d)
    for (int p = -numer_bound; p <= numer_bound; ++p) qs.insert(Rational(p, d));
  std::vector<IteratedDiscretePoint> pts;
  for (auto q : qs)
    for (int n = -int_bound; n <= int_bound; ++n) pts.push_back({n, q});
  std::sort(pts.begin(), pts.end());
  return pts;
}

nlohmann::json to_json(const IteratedDiscretePoint& p) { return nlohmann::json::array({p.n, p.q.str()}); }

IteratedDiscretePoint id_point_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("iterated-discrete point must be [n, \"p/d\"]");
  return {j[0].get<std::int64_t>(), Rational::parse(j[1].get<std::string>())};
}

bool is_discrete_sample(const std::vector<IteratedDiscretePoint>& pts) {
  if (!std::is_sorted(pts.begin(), pts.end())) return false;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto succ = pts[i].successor();
    auto it = std::lower_bound(pts.begin(), pts.end(), succ);
    if (it != pts.end() && *it == succ && it - pts.begin() != std::ptrdiff_t(i + 1)) return false;
  }
  return true;
}

}  // namespace pint
