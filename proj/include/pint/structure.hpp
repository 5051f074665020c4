#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pint/relation.hpp"

namespace pint {

enum class ClassTag { Lin, Dis };

struct Interval {
  int a = 0;
  int b = 0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

// A finite linear order given by its list of labels; position in the list is the order.
class PointIntervalStructure {
 public:
  PointIntervalStructure() = default;
  explicit PointIntervalStructure(std::vector<std::string> labels);

  int size() const { return int(labels_.size()); }
  int interval_count() const { return int(intervals_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int p) const { return labels_.at(p); }
  const std::vector<Interval>& intervals() const { return intervals_; }
  const Interval& interval(int i) const { return intervals_.at(i); }
  int interval_index(int a, int b) const;
  std::optional<int> find_point(const std::string& label) const;
  Element point_element(int p) const { return Element::point(p); }
  Element interval_element(int i) const { return Element::interval(intervals_[i].a, intervals_[i].b); }
  int element_count(Sort s) const { return s == Sort::Point ? size() : interval_count(); }
  Element element(Sort s, int idx) const { return s == Sort::Point ? point_element(idx) : interval_element(idx); }
  std::string interval_label(int i) const;
  bool has(ClassTag) const { return true; }

  friend bool operator==(const PointIntervalStructure& x, const PointIntervalStructure& y) {
    return x.labels_ == y.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Interval> intervals_;
  std::vector<int> index_;  // a*n+b -> interval index
};

// Points "0".."n-1".
PointIntervalStructure finite_linear_order(int n);
PointIntervalStructure order_dual(const PointIntervalStructure& s);
// Interval index in the dual that corresponds to interval i of s.
int dual_interval(const PointIntervalStructure& s, int i);

// Every point other than the extremes has a direct predecessor and successor.
bool is_discrete(const PointIntervalStructure& s);

nlohmann::json to_json(const PointIntervalStructure& s);
PointIntervalStructure structure_from_json(const nlohmann::json& j);

// Relation tables over a structure, for fast repeated lookup.
class RelationTables {
 public:
  explicit RelationTables(const PointIntervalStructure& s);
  bool get(Relation r, int lhs, int rhs) const {
    const auto& t = tables_[r.id()];
    return t.data[std::size_t(lhs) * t.cols + std::size_t(rhs)] != 0;
  }
  // Row-major table for relation id, with its column count.
  const std::uint8_t* data(int id) const { return tables_[id].data.data(); }
  std::size_t cols(int id) const { return tables_[id].cols; }
  const PointIntervalStructure& structure() const { return *s_; }

 private:
  struct Table {
    std::size_t cols = 0;
    std::vector<std::uint8_t> data;
  };
  const PointIntervalStructure* s_;
  std::vector<Table> tables_;
};

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);
  friend Rational operator+(Rational x, Rational y);
  friend Rational operator-(Rational x, Rational y);
  friend Rational operator*(Rational x, Rational y);
  friend Rational operator/(Rational x, Rational y);
  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& x, const Rational& y);
  std::string str() const;
  static Rational parse(const std::string& s);
};

struct IteratedDiscretePoint {
  std::int64_t n = 0;
  Rational q;
  friend bool operator==(const IteratedDiscretePoint&, const IteratedDiscretePoint&) = default;
  // Reverse lexicographic: rational coordinate first.
  friend std::strong_ordering operator<=>(const IteratedDiscretePoint& x, const IteratedDiscretePoint& y) {
    if (auto c = x.q <=> y.q; c != 0) return c;
    return x.n <=> y.n;
  }
  IteratedDiscretePoint successor() const { return {n + 1, q}; }
  IteratedDiscretePoint predecessor() const { return {n - 1, q}; }
  std::string label() const;
};

std::vector<IteratedDiscretePoint> iterated_discrete_sample(int int_bound, int denom_bound, int numer_bound);
nlohmann::json to_json(const IteratedDiscretePoint& p);
IteratedDiscretePoint id_point_from_json(const nlohmann::json& j);

// Checks that whenever p and its successor are both in the sample, nothing of the sample lies between them.
bool is_discrete_sample(const std::vector<IteratedDiscretePoint>& pts);

}  // namespace pint
