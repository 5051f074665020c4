#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pint/relation.hpp"
#include "pint/structure.hpp"

namespace pint {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Op { Atom, Macro, Not, And, Or, Implies, Iff, Exists, Forall };

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
  Op op = Op::Atom;
  Relation rel{};                 // Atom
  std::string name;               // Macro name, or bound variable of a quantifier
  std::vector<std::string> args;  // Atom (2) and Macro arguments
  Formula lhs, rhs;               // Not and quantifiers use lhs only
};

Sort var_sort(const std::string& var);  // from the _p / _i suffix
bool is_var(const std::string& s);

Formula make_atom(Relation r, std::string x, std::string y);
Formula make_not(Formula f);
Formula make_binary(Op op, Formula l, Formula r);
Formula make_quant(Op op, std::string var, Formula body);

// Parses the concrete syntax. Macro calls (@name(args)) are kept as nodes;
// sort checking of atoms happens here.
Formula parse(const std::string& text);
std::string print(const Formula& f);
bool equal(const Formula& a, const Formula& b);

std::set<std::string> free_vars(const Formula& f);
RelationSet signature(const Formula& f);  // canonical relations only
std::set<std::string> macro_names(const Formula& f);
int quantifier_depth(const Formula& f);

struct Macro {
  std::vector<std::string> params;
  Formula body;
};
using MacroTable = std::map<std::string, Macro>;

// Replaces every macro call by its body, renaming bound variables apart.
Formula expand(const Formula& f, const MacroTable& macros);
// Capture-avoiding renaming of free variables.
Formula substitute(const Formula& f, const std::map<std::string, std::string>& sub);

Formula dual_transform(const Formula& f);

using Assignment = std::map<std::string, int>;  // variable -> element index of its sort

// Compiled evaluator bound to one structure.
class Evaluator {
 public:
  Evaluator(const PointIntervalStructure& s, const Formula& f);
  Evaluator(const RelationTables& t, const Formula& f);
  bool eval(const Assignment& a) const;
  // Free variables in slot order.
  const std::vector<std::string>& free() const { return free_; }
  bool eval_slots(std::vector<int>& env) const;

 private:
  struct CNode {
    Op op;
    const std::uint8_t* table = nullptr;
    std::size_t cols = 0;
    int s1 = 0, s2 = 0;  // variable slots
    int var = 0;         // quantified slot
    int count = 0;       // domain size of the quantified sort
    int l = -1, r = -1;
  };
  void compile(const Formula& f);
  int build(const Formula& f, std::map<std::string, int>& scope);
  bool run(int node, std::vector<int>& env) const;

  std::unique_ptr<RelationTables> owned_;
  const RelationTables* t_;
  std::vector<CNode> nodes_;
  std::vector<std::string> free_;
  int slots_ = 0;
  int root_ = -1;
};

bool eval(const PointIntervalStructure& s, const Formula& f, const Assignment& a);

// True iff f(x,y) <-> r(x,y) for every sort-correct pair, with x, y the given free variables.
bool defines_on(const PointIntervalStructure& s, const Formula& f, Relation r, const std::string& x,
                const std::string& y);

struct PairCounterexample {
  int lhs = 0, rhs = 0;
  bool formula_value = false;
};
std::optional<PairCounterexample> find_counterexample(const RelationTables& t, const Formula& f, Relation r,
                                                      const std::string& x, const std::string& y);

}  // namespace pint
