#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pint {

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SortError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Sort : std::uint8_t { Point, Interval };

// PP: point/point, IP: interval/point, PI: point/interval, II: interval/interval
enum class Kind : std::uint8_t { PP, IP, PI, II };

Sort lhs_sort(Kind k);
Sort rhs_sort(Kind k);

// Region of a point relative to an interval [a,b] (a<b): 0..4,
// or relative to a point c: 0 (<c), 2 (=c), 4 (>c).
struct Relation {
  Kind kind = Kind::PP;
  std::uint8_t k = 0;
  std::uint8_t k2 = 0;  // second region, II and PI only

  friend bool operator==(const Relation&, const Relation&) = default;

  // Dense id in [0, 26).
  int id() const;
  static Relation from_id(int id);
  std::string token() const;
  static Relation parse(std::string_view tok);
  static bool valid(Kind kind, int k, int k2);
};

const std::vector<Relation>& all_relations();

namespace rel {
inline constexpr Relation eq_p{Kind::PP, 2, 0};
inline constexpr Relation lt{Kind::PP, 4, 0};
inline constexpr Relation gt{Kind::PP, 0, 0};
inline constexpr Relation eq_i{Kind::II, 1, 3};
inline constexpr Relation ip0{Kind::IP, 0, 0};
inline constexpr Relation ip1{Kind::IP, 1, 0};
inline constexpr Relation ip2{Kind::IP, 2, 0};
inline constexpr Relation ip3{Kind::IP, 3, 0};
inline constexpr Relation ip4{Kind::IP, 4, 0};
inline constexpr Relation ii34{Kind::II, 3, 4};
inline constexpr Relation ii14{Kind::II, 1, 4};
inline constexpr Relation ii03{Kind::II, 0, 3};
inline constexpr Relation ii24{Kind::II, 2, 4};
inline constexpr Relation ii04{Kind::II, 0, 4};
inline constexpr Relation ii44{Kind::II, 4, 4};
}  // namespace rel

// Region of p in the partition induced by interval [a,b], positions in a linear order.
int region_of_point(int a, int b, int p);
// Region of p relative to point c.
int region_of_point(int c, int p);

// Endpoint positions; points use only `a`.
struct Element {
  Sort sort = Sort::Point;
  int a = 0;
  int b = 0;
  static Element point(int p) { return {Sort::Point, p, p}; }
  static Element interval(int a, int b) { return {Sort::Interval, a, b}; }
};

bool holds(Relation r, const Element& lhs, const Element& rhs);
Relation inverse(Relation r);

// The 14 canonical relations, in canonical bit order.
inline constexpr int kCanonical = 14;
const std::array<Relation, kCanonical>& canonical();
int canonical_index(Relation r);  // -1 if not canonical
bool is_canonical(Relation r);

enum class Symmetry { Reversible, SelfSymmetric, SymmetricNonSelf };
Symmetry classify(Relation r);
Relation reverse(Relation r);

enum class Universe { Rplus, Iplus, Mplus, Pplus };
std::uint16_t universe_mask(Universe u);
std::string universe_name(Universe u);
Universe parse_universe(std::string_view s);

class RelationSet {
 public:
  RelationSet() = default;
  explicit RelationSet(std::uint16_t bits) : bits_(bits) {}
  RelationSet(std::initializer_list<Relation> rs);

  static RelationSet parse(std::string_view csv);
  static RelationSet of_universe(Universe u) { return RelationSet(universe_mask(u)); }

  std::uint16_t bits() const { return bits_; }
  bool contains(Relation r) const;
  void insert(Relation r);
  void erase(Relation r);
  int size() const;
  bool empty() const { return bits_ == 0; }
  bool subset_of(RelationSet o) const { return (bits_ & ~o.bits_) == 0; }
  std::vector<Relation> members() const;
  std::vector<std::string> tokens() const;
  std::string str() const;  // "{a,b}"

  friend bool operator==(RelationSet, RelationSet) = default;
  friend RelationSet operator|(RelationSet x, RelationSet y) { return RelationSet(x.bits_ | y.bits_); }
  friend RelationSet operator&(RelationSet x, RelationSet y) { return RelationSet(x.bits_ & y.bits_); }

 private:
  std::uint16_t bits_ = 0;
};

RelationSet symmetric_set(RelationSet s);
// Canonical output order: cardinality, then bitmask.
bool canonical_less(RelationSet x, RelationSet y);

}  // namespace pint
