#include "pint/formula.hpp"

#include <cctype>
#include <functional>
#include <optional>
#include <sstream>

namespace pint {

bool is_var(const std::string& s) {
  return s.size() >= 3 && s[s.size() - 2] == '_' && (s.back() == 'p' || s.back() == 'i');
}

Sort var_sort(const std::string& var) {
  if (!is_var(var)) throw SortError("variable '" + var + "' has no _p/_i sort suffix");
  return var.back() == 'p' ? Sort::Point : Sort::Interval;
}

namespace {

Formula mk(Node n) { return std::make_shared<const Node>(std::move(n)); }

void check_atom_sorts(Relation r, const std::string& x, const std::string& y) {
  if (var_sort(x) != lhs_sort(r.kind) || var_sort(y) != rhs_sort(r.kind))
    throw SortError("sort error in atom " + r.token() + "(" + x + "," + y + ")");
}

// ---- lexer ----

enum class Tok { Ident, Rel, LParen, RParen, Comma, Not, And, Or, Imp, Iff, At, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t p = i;
    auto rest = std::string_view(s).substr(i);
    if (rest.starts_with("<->")) out.push_back({Tok::Iff, "<->", p}), i += 3;
    else if (rest.starts_with("->")) out.push_back({Tok::Imp, "->", p}), i += 2;
    else if (rest.starts_with("=p") || rest.starts_with("=i")) out.push_back({Tok::Rel, std::string(rest.substr(0, 2)), p}), i += 2;
    else if (c == '<' || c == '>') out.push_back({Tok::Rel, std::string(1, c), p}), ++i;
    else if (c == '(') out.push_back({Tok::LParen, "(", p}), ++i;
    else if (c == ')') out.push_back({Tok::RParen, ")", p}), ++i;
    else if (c == ',') out.push_back({Tok::Comma, ",", p}), ++i;
    else if (c == '~') out.push_back({Tok::Not, "~", p}), ++i;
    else if (c == '&') out.push_back({Tok::And, "&", p}), ++i;
    else if (c == '|') out.push_back({Tok::Or, "|", p}), ++i;
    else if (c == '@') out.push_back({Tok::At, "@", p}), ++i;
    else if (ident_char(c)) {
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({Tok::Ident, s.substr(p, i - p), p});
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", p);
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

// ---- parser ----

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  Formula top() {
    auto f = formula();
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return f;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[i_++]; }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) throw ParseError(std::string("expected ") + what, peek().pos);
    ++i_;
  }
  bool at_quantifier() const {
    return peek().kind == Tok::Ident && (peek().text == "E" || peek().text == "A") && peek(1).kind == Tok::Ident &&
           is_var(peek(1).text);
  }

  Formula formula() {
    if (at_quantifier()) return quantified();
    return iff();
  }

  Formula quantified() {
    Op op = next().text == "E" ? Op::Exists : Op::Forall;
    std::vector<std::string> vars;
    while (peek().kind == Tok::Ident && is_var(peek().text)) vars.push_back(next().text);
    Formula body = formula();
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = make_quant(op, *it, body);
    return body;
  }

  Formula iff() {
    auto f = imp();
    while (peek().kind == Tok::Iff) {
      next();
      f = make_binary(Op::Iff, f, imp());
    }
    return f;
  }

  Formula imp() {
    auto f = disj();
    if (peek().kind == Tok::Imp) {
      next();
      return make_binary(Op::Implies, f, imp());
    }
    return f;
  }

  Formula disj() {
    auto f = conj();
    while (peek().kind == Tok::Or) {
      next();
      f = make_binary(Op::Or, f, conj());
    }
    return f;
  }

  Formula conj() {
    auto f = unary();
    while (peek().kind == Tok::And) {
      next();
      f = make_binary(Op::And, f, unary());
    }
    return f;
  }

  Formula unary() {
    const auto& t = peek();
    if (t.kind == Tok::Not) {
      next();
      return make_not(unary());
    }
    if (at_quantifier()) return quantified();
    if (t.kind == Tok::LParen) {
      next();
      auto f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind == Tok::At) {
      next();
      if (peek().kind != Tok::Ident) throw ParseError("expected macro name", peek().pos);
      Node n;
      n.op = Op::Macro;
      n.name = next().text;
      n.args = arglist();
      return mk(std::move(n));
    }
    return atom();
  }

  std::vector<std::string> arglist() {
    expect(Tok::LParen, "'('");
    std::vector<std::string> args;
    for (;;) {
      if (peek().kind != Tok::Ident || !is_var(peek().text))
        throw ParseError("expected a variable ending in _p or _i", peek().pos);
      args.push_back(next().text);
      if (peek().kind == Tok::Comma) {
        next();
        continue;
      }
      expect(Tok::RParen, "')'");
      return args;
    }
  }

  Formula atom() {
    const auto& t = peek();
    if (t.kind != Tok::Rel && t.kind != Tok::Ident) throw ParseError("expected an atom", t.pos);
    std::size_t pos = t.pos;
    Relation r;
    try {
      r = Relation::parse(t.text);
    } catch (const DomainError&) {
      throw ParseError("unknown relation token '" + t.text + "'", pos);
    }
    next();
    auto args = arglist();
    if (args.size() != 2) throw ParseError("relation atoms take two arguments", pos);
    check_atom_sorts(r, args[0], args[1]);
    return make_atom(r, args[0], args[1]);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

const char* op_text(Op op) {
  switch (op) {
    case Op::And: return " & ";
    case Op::Or: return " | ";
    case Op::Implies: return " -> ";
    case Op::Iff: return " <-> ";
    default: return "";
  }
}

// Quantifiers extend as far right as possible, so they are parenthesized unless
// they stand at the top or directly under another quantifier.
void print_to(std::ostringstream& os, const Formula& f, bool bare_quant) {
  switch (f->op) {
    case Op::Atom: os << f->rel.token() << '(' << f->args[0] << ',' << f->args[1] << ')'; break;
    case Op::Macro: {
      os << '@' << f->name << '(';
      for (std::size_t i = 0; i < f->args.size(); ++i) os << (i ? "," : "") << f->args[i];
      os << ')';
      break;
    }
    case Op::Not:
      os << '~';
      print_to(os, f->lhs, false);
      break;
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff:
      os << '(';
      print_to(os, f->lhs, false);
      os << op_text(f->op);
      print_to(os, f->rhs, false);
      os << ')';
      break;
    case Op::Exists:
    case Op::Forall:
      if (!bare_quant) os << '(';
      os << (f->op == Op::Exists ? "E " : "A ") << f->name << ' ';
      print_to(os, f->lhs, true);
      if (!bare_quant) os << ')';
      break;
  }
}

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f->op) {
    case Op::Atom:
    case Op::Macro:
      for (auto& a : f->args)
        if (!bound.count(a)) out.insert(a);
      break;
    case Op::Not: collect_free(f->lhs, bound, out); break;
    case Op::Exists:
    case Op::Forall: {
      bool had = bound.count(f->name);
      bound.insert(f->name);
      collect_free(f->lhs, bound, out);
      if (!had) bound.erase(f->name);
      break;
    }
    default:
      collect_free(f->lhs, bound, out);
      collect_free(f->rhs, bound, out);
  }
}

Formula rename_bound(const Formula& f, int& counter) {
  switch (f->op) {
    case Op::Atom:
    case Op::Macro: return f;
    case Op::Not: return make_not(rename_bound(f->lhs, counter));
    case Op::Exists:
    case Op::Forall: {
      const std::string& v = f->name;
      std::string fresh = v.substr(0, v.size() - 2) + "'" + std::to_string(counter++) + v.substr(v.size() - 2);
      auto body = substitute(rename_bound(f->lhs, counter), {{v, fresh}});
      return make_quant(f->op, fresh, body);
    }
    default: return make_binary(f->op, rename_bound(f->lhs, counter), rename_bound(f->rhs, counter));
  }
}

Formula expand_rec(const Formula& f, const MacroTable& macros, int& counter, int depth) {
  if (depth > 64) throw DomainError("macro expansion too deep (recursive macro?)");
  switch (f->op) {
    case Op::Atom: return f;
    case Op::Macro: {
      auto it = macros.find(f->name);
      if (it == macros.end()) throw DomainError("unknown macro '@" + f->name + "'");
      const Macro& m = it->second;
      if (m.params.size() != f->args.size())
        throw DomainError("macro '@" + f->name + "' expects " + std::to_string(m.params.size()) + " arguments");
      std::map<std::string, std::string> sub;
      for (std::size_t i = 0; i < m.params.size(); ++i) {
        if (var_sort(m.params[i]) != var_sort(f->args[i]))
          throw SortError("sort error in argument " + std::to_string(i + 1) + " of @" + f->name);
        sub[m.params[i]] = f->args[i];
      }
      auto body = expand_rec(m.body, macros, counter, depth + 1);
      body = rename_bound(body, counter);
      return substitute(body, sub);
    }
    case Op::Not: return make_not(expand_rec(f->lhs, macros, counter, depth));
    case Op::Exists:
    case Op::Forall: return make_quant(f->op, f->name, expand_rec(f->lhs, macros, counter, depth));
    default:
      return make_binary(f->op, expand_rec(f->lhs, macros, counter, depth), expand_rec(f->rhs, macros, counter, depth));
  }
}

}  // namespace

Formula make_atom(Relation r, std::string x, std::string y) {
  Node n;
  n.op = Op::Atom;
  n.rel = r;
  n.args = {std::move(x), std::move(y)};
  return mk(std::move(n));
}

Formula make_not(Formula f) {
  Node n;
  n.op = Op::Not;
  n.lhs = std::move(f);
  return mk(std::move(n));
}

Formula make_binary(Op op, Formula l, Formula r) {
  Node n;
  n.op = op;
  n.lhs = std::move(l);
  n.rhs = std::move(r);
  return mk(std::move(n));
}

Formula make_quant(Op op, std::string var, Formula body) {
  var_sort(var);
  Node n;
  n.op = op;
  n.name = std::move(var);
  n.lhs = std::move(body);
  return mk(std::move(n));
}

Formula parse(const std::string& text) { return Parser(text).top(); }

std::string print(const Formula& f) {
  std::ostringstream os;
  print_to(os, f, true);
  return os.str();
}

bool equal(const Formula& a, const Formula& b) {
  if (a->op != b->op || a->name != b->name || a->args != b->args) return false;
  if (a->op == Op::Atom) return a->rel == b->rel;
  if (a->op == Op::Macro) return true;
  if (!equal(a->lhs, b->lhs)) return false;
  return !a->rhs || equal(a->rhs, b->rhs);
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

RelationSet signature(const Formula& f) {
  RelationSet s;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    if (g->op == Op::Atom) {
      if (is_canonical(g->rel)) s.insert(g->rel);
      return;
    }
    if (g->lhs) go(g->lhs);
    if (g->rhs) go(g->rhs);
  };
  go(f);
  return s;
}

std::set<std::string> macro_names(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    if (g->op == Op::Macro) out.insert(g->name);
    if (g->lhs) go(g->lhs);
    if (g->rhs) go(g->rhs);
  };
  go(f);
  return out;
}

int quantifier_depth(const Formula& f) {
  switch (f->op) {
    case Op::Atom:
    case Op::Macro: return 0;
    case Op::Not: return quantifier_depth(f->lhs);
    case Op::Exists:
    case Op::Forall: return 1 + quantifier_depth(f->lhs);
    default: return std::max(quantifier_depth(f->lhs), quantifier_depth(f->rhs));
  }
}

Formula substitute(const Formula& f, const std::map<std::string, std::string>& sub) {
  auto map_var = [&](const std::string& v) {
    auto it = sub.find(v);
    return it == sub.end() ? v : it->second;
  };
  switch (f->op) {
    case Op::Atom: return make_atom(f->rel, map_var(f->args[0]), map_var(f->args[1]));
    case Op::Macro: {
      Node n = *f;
      for (auto& a : n.args) a = map_var(a);
      return mk(std::move(n));
    }
    case Op::Not: return make_not(substitute(f->lhs, sub));
    case Op::Exists:
    case Op::Forall: {
      auto inner = sub;
      inner.erase(f->name);
      std::string v = f->name;
      Formula body = f->lhs;
      // Rename the bound variable if a substituted value would be captured.
      bool captures = false;
      auto fv = free_vars(f->lhs);
      for (auto& [from, to] : inner)
        if (to == v && fv.count(from)) captures = true;
      if (captures) {
        int k = 0;
        std::string fresh;
        do fresh = v.substr(0, v.size() - 2) + "'c" + std::to_string(k++) + v.substr(v.size() - 2);
        while (fv.count(fresh));
        body = substitute(body, {{v, fresh}});
        v = fresh;
      }
      return make_quant(f->op, v, substitute(body, inner));
    }
    default: return make_binary(f->op, substitute(f->lhs, sub), substitute(f->rhs, sub));
  }
}

Formula expand(const Formula& f, const MacroTable& macros) {
  int counter = 0;
  auto out = expand_rec(f, macros, counter, 0);
  // Sort-check the expanded atoms.
  std::function<void(const Formula&)> check = [&](const Formula& g) {
    if (g->op == Op::Atom) check_atom_sorts(g->rel, g->args[0], g->args[1]);
    if (g->lhs) check(g->lhs);
    if (g->rhs) check(g->rhs);
  };
  check(out);
  return out;
}

Formula dual_transform(const Formula& f) {
  switch (f->op) {
    case Op::Atom: {
      switch (classify(f->rel)) {
        case Symmetry::Reversible: return make_atom(reverse(f->rel), f->args[0], f->args[1]);
        case Symmetry::SelfSymmetric: return f;
        case Symmetry::SymmetricNonSelf: return make_atom(f->rel, f->args[1], f->args[0]);
      }
      return f;
    }
    case Op::Macro: throw DomainError("expand macros before dual_transform");
    case Op::Not: return make_not(dual_transform(f->lhs));
    case Op::Exists:
    case Op::Forall: return make_quant(f->op, f->name, dual_transform(f->lhs));
    default: return make_binary(f->op, dual_transform(f->lhs), dual_transform(f->rhs));
  }
}

// ---- evaluator ----

Evaluator::Evaluator(const PointIntervalStructure& s, const Formula& f)
    : owned_(std::make_unique<RelationTables>(s)), t_(owned_.get()) {
  compile(f);
}

Evaluator::Evaluator(const RelationTables& t, const Formula& f) : t_(&t) { compile(f); }

void Evaluator::compile(const Formula& f) {
  auto fv = free_vars(f);
  free_.assign(fv.begin(), fv.end());
  std::map<std::string, int> scope;
  for (const auto& v : free_) scope[v] = slots_++;
  root_ = build(f, scope);
}

int Evaluator::build(const Formula& f, std::map<std::string, int>& scope) {
  CNode c{f->op};
  switch (f->op) {
    case Op::Atom:
      c.table = t_->data(f->rel.id());
      c.cols = t_->cols(f->rel.id());
      c.s1 = scope.at(f->args[0]);
      c.s2 = scope.at(f->args[1]);
      break;
    case Op::Macro: throw EvalError("unexpanded macro '@" + f->name + "'");
    case Op::Not: c.l = build(f->lhs, scope); break;
    case Op::Exists:
    case Op::Forall: {
      c.var = slots_++;
      c.count = t_->structure().element_count(var_sort(f->name));
      auto saved = scope.find(f->name) == scope.end() ? std::optional<int>() : std::optional<int>(scope[f->name]);
      scope[f->name] = c.var;
      c.l = build(f->lhs, scope);
      if (saved) scope[f->name] = *saved;
      else scope.erase(f->name);
      break;
    }
    default:
      c.l = build(f->lhs, scope);
      c.r = build(f->rhs, scope);
  }
  nodes_.push_back(c);
  return int(nodes_.size()) - 1;
}

bool Evaluator::run(int node, std::vector<int>& env) const {
  const CNode& c = nodes_[node];
  switch (c.op) {
    case Op::Atom: return c.table[std::size_t(env[c.s1]) * c.cols + std::size_t(env[c.s2])] != 0;
    case Op::Not: return !run(c.l, env);
    case Op::And: return run(c.l, env) && run(c.r, env);
    case Op::Or: return run(c.l, env) || run(c.r, env);
    case Op::Implies: return !run(c.l, env) || run(c.r, env);
    case Op::Iff: return run(c.l, env) == run(c.r, env);
    case Op::Exists:
      for (int v = 0; v < c.count; ++v) {
        env[c.var] = v;
        if (run(c.l, env)) return true;
      }
      return false;
    case Op::Forall:
      for (int v = 0; v < c.count; ++v) {
        env[c.var] = v;
        if (!run(c.l, env)) return false;
      }
      return true;
    case Op::Macro: break;
  }
  return false;
}

bool Evaluator::eval_slots(std::vector<int>& env) const {
  env.resize(std::size_t(slots_));
  return run(root_, env);
}

bool Evaluator::eval(const Assignment& a) const {
  std::vector<int> env(std::size_t(slots_), 0);
  for (std::size_t i = 0; i < free_.size(); ++i) {
    auto it = a.find(free_[i]);
    if (it == a.end()) throw EvalError("free variable '" + free_[i] + "' is unassigned");
    int limit = t_->structure().element_count(var_sort(free_[i]));
    if (it->second < 0 || it->second >= limit) throw EvalError("value of '" + free_[i] + "' is out of range");
    env[i] = it->second;
  }
  return run(root_, env);
}

bool eval(const PointIntervalStructure& s, const Formula& f, const Assignment& a) { return Evaluator(s, f).eval(a); }

std::optional<PairCounterexample> find_counterexample(const RelationTables& t, const Formula& f, Relation r,
                                                      const std::string& x, const std::string& y) {
  if (var_sort(x) != lhs_sort(r.kind) || var_sort(y) != rhs_sort(r.kind))
    throw SortError("free variables do not match the sorts of " + r.token());
  for (const auto& v : free_vars(f))
    if (v != x && v != y) throw EvalError("unexpected free variable '" + v + "'");
  Evaluator ev(t, f);
  const auto& s = t.structure();
  int nl = s.element_count(lhs_sort(r.kind)), nr = s.element_count(rhs_sort(r.kind));
  Assignment a;
  for (int i = 0; i < nl; ++i)
    for (int j = 0; j < nr; ++j) {
      a[x] = i;
      a[y] = j;
      bool v = ev.eval(a);
      if (v != t.get(r, i, j)) return PairCounterexample{i, j, v};
    }
  return std::nullopt;
}

bool defines_on(const PointIntervalStructure& s, const Formula& f, Relation r, const std::string& x,
                const std::string& y) {
  RelationTables t(s);
  return !find_counterexample(t, f, r, x, y).has_value();
}

}  // namespace pint
