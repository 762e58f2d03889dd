#include "oag/qe.hpp"

#include <algorithm>
#include <map>

#include <spdlog/spdlog.h>

#include "oag/definable_set.hpp"
#include "oag/error.hpp"

namespace oag {

QfFormula::QfFormula(Formula f) : f_(std::move(f)) {
  if (!is_quantifier_free(f_)) throw Error(ErrorKind::Usage, "formula is not quantifier-free");
  if (has_predicates(f_)) throw Error(ErrorKind::PredicateLeak, "formula still contains predicate atoms");
}

std::optional<Literal> make_literal(LiteralKind kind, const LinearTerm& t, bool* truth) {
  if (t.is_constant()) {
    int s = t.constant().sign();
    *truth = kind == LiteralKind::Lt ? s < 0 : kind == LiteralKind::Eq ? s == 0 : s != 0;
    return std::nullopt;
  }
  const Rational& lead = t.entries().front().second;
  if (kind == LiteralKind::Lt) return Literal{kind, t / lead.abs()};
  LinearTerm scaled = t / lead;
  // The variable part is Q-valued, so it never meets an irrational constant.
  if (!scaled.constant().is_rational()) {
    *truth = kind == LiteralKind::Ne;
    return std::nullopt;
  }
  return Literal{kind, std::move(scaled)};
}

namespace {

struct TermLess {
  bool operator()(const LinearTerm& a, const LinearTerm& b) const { return compare_terms(a, b) < 0; }
};

/// Constraints on one linear form z (leading coefficient +1).
struct Bounds {
  std::optional<Scalar> lower;
  std::optional<Scalar> upper;
  std::optional<Scalar> pinned;
  std::vector<Scalar> excluded;
  bool conflict = false;
};

int compare_literals(const Literal& a, const Literal& b) {
  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind) ? -1 : 1;
  return compare_terms(a.term, b.term);
}

}  // namespace

std::optional<Cube> simplify_cube(const Cube& c) {
  std::map<LinearTerm, Bounds, TermLess> groups;
  for (const Literal& l : c.literals) {
    LinearTerm z = l.term.linear_part();
    Scalar k = l.term.constant();
    bool negated = z.entries().front().second.sign() < 0;
    if (negated) z = -z;
    Bounds& b = groups[z];
    switch (l.kind) {
      case LiteralKind::Lt:
        if (negated) {  // -z + k < 0, i.e. z > k
          if (!b.lower || *b.lower < k) b.lower = k;
        } else {  // z + k < 0, i.e. z < -k
          Scalar u = -k;
          if (!b.upper || u < *b.upper) b.upper = u;
        }
        break;
      case LiteralKind::Eq: {
        Scalar value = negated ? k : -k;
        if (b.pinned && *b.pinned != value) b.conflict = true;
        b.pinned = value;
        break;
      }
      case LiteralKind::Ne: b.excluded.push_back(negated ? k : -k); break;
    }
  }

  Cube out;
  for (auto& [z, b] : groups) {
    if (b.conflict) return std::nullopt;
    if (b.pinned) {
      const Scalar& p = *b.pinned;
      if ((b.lower && !(*b.lower < p)) || (b.upper && !(p < *b.upper))) return std::nullopt;
      if (std::find(b.excluded.begin(), b.excluded.end(), p) != b.excluded.end()) return std::nullopt;
      out.literals.push_back({LiteralKind::Eq, z - LinearTerm(p)});
      continue;
    }
    if (b.lower && b.upper && !(*b.lower < *b.upper)) return std::nullopt;
    if (b.lower) out.literals.push_back({LiteralKind::Lt, LinearTerm(*b.lower) - z});
    if (b.upper) out.literals.push_back({LiteralKind::Lt, z - LinearTerm(*b.upper)});
    std::sort(b.excluded.begin(), b.excluded.end());
    b.excluded.erase(std::unique(b.excluded.begin(), b.excluded.end()), b.excluded.end());
    for (const Scalar& e : b.excluded) {
      if ((b.lower && e <= *b.lower) || (b.upper && *b.upper <= e)) continue;
      out.literals.push_back({LiteralKind::Ne, z - LinearTerm(e)});
    }
  }
  std::sort(out.literals.begin(), out.literals.end(),
            [](const Literal& a, const Literal& b) { return compare_literals(a, b) < 0; });
  return out;
}

Formula literal_formula(const Literal& l) {
  switch (l.kind) {
    case LiteralKind::Lt: return Formula::atom(Atom::less_than_zero(l.term));
    case LiteralKind::Eq: return Formula::atom(Atom::equals_zero(l.term));
    case LiteralKind::Ne: return Formula::negation(Formula::atom(Atom::equals_zero(l.term)));
  }
  return Formula::top();
}

namespace {

Formula cube_formula(const std::optional<Cube>& c) {
  if (!c) return Formula::bottom();
  std::vector<Formula> parts;
  for (const auto& l : c->literals) parts.push_back(literal_formula(l));
  return Formula::conj(std::move(parts));
}

/// Appends a normalized literal; returns false if the cube became unsatisfiable.
bool push_literal(Cube& c, LiteralKind kind, const LinearTerm& t) {
  bool truth = true;
  auto lit = make_literal(kind, t, &truth);
  if (lit) {
    c.literals.push_back(std::move(*lit));
    return true;
  }
  return truth;
}

/// Exists v (c) as a cube; nullopt when unsatisfiable.
std::optional<Cube> eliminate_from_cube(const Var& v, const Cube& input) {
  auto simplified = simplify_cube(input);
  if (!simplified) return std::nullopt;
  const Cube& c = *simplified;

  auto pin = std::find_if(c.literals.begin(), c.literals.end(),
                          [&](const Literal& l) { return l.kind == LiteralKind::Eq && l.term.mentions(v); });
  Cube out;
  if (pin != c.literals.end()) {
    Rational cv = pin->term.coeff(v);
    LinearTerm value = -pin->term.without(v) / cv;
    // Variables range over Q: an irrational solved constant admits no witness.
    if (!value.constant().is_rational()) return std::nullopt;
    for (auto it = c.literals.begin(); it != c.literals.end(); ++it) {
      if (it == pin) continue;
      LinearTerm t = it->term.mentions(v) ? it->term.substitute(v, value) : it->term;
      if (!push_literal(out, it->kind, t)) return std::nullopt;
    }
    return simplify_cube(out);
  }

  std::vector<LinearTerm> lowers;
  std::vector<LinearTerm> uppers;
  for (const Literal& l : c.literals) {
    if (!l.term.mentions(v)) {
      out.literals.push_back(l);
      continue;
    }
    // A disequality on v removes finitely many points from an open region.
    if (l.kind == LiteralKind::Ne) continue;
    Rational cv = l.term.coeff(v);
    LinearTerm bound = -l.term.without(v) / cv;
    (cv.sign() > 0 ? uppers : lowers).push_back(std::move(bound));
  }
  for (const auto& lo : lowers)
    for (const auto& hi : uppers)
      if (!push_literal(out, LiteralKind::Lt, lo - hi)) return std::nullopt;
  return simplify_cube(out);
}

Formula eliminate_cube(const Var& v, const Cube& input) { return cube_formula(eliminate_from_cube(v, input)); }

/// Exact satisfiability over Q by eliminating every variable; cubes that grow
/// past `limit` literals are assumed satisfiable.
bool cube_satisfiable(Cube c, std::size_t limit = 256) {
  while (true) {
    auto s = simplify_cube(c);
    if (!s) return false;
    if (s->literals.empty()) return true;
    if (s->literals.size() > limit) return true;
    Var v = s->literals.front().term.entries().front().first;
    auto next = eliminate_from_cube(v, *s);
    if (!next) return false;
    c = std::move(*next);
  }
}

bool is_leaf(const Formula& f) {
  return f.kind() == FormulaKind::Atom || (f.kind() == FormulaKind::Not && f.child().kind() == FormulaKind::Atom);
}

Literal leaf_literal(const Formula& f) {
  if (f.kind() == FormulaKind::Not) return {LiteralKind::Ne, f.child().atom().term()};
  return {f.atom().kind() == AtomKind::EqualsZero ? LiteralKind::Eq : LiteralKind::Lt, f.atom().term()};
}

bool formula_less(const Formula& a, const Formula& b) { return compare_formulas(a, b) < 0; }

Formula junction(bool is_and, std::vector<Formula> parts) {
  const FormulaKind unit = is_and ? FormulaKind::True : FormulaKind::False;
  const FormulaKind zero = is_and ? FormulaKind::False : FormulaKind::True;
  const FormulaKind same = is_and ? FormulaKind::And : FormulaKind::Or;
  std::vector<Formula> flat;
  for (auto& p : parts) {
    if (p.kind() == zero) return p;
    if (p.kind() == unit) continue;
    if (p.kind() == same) {
      for (const auto& c : p.children()) flat.push_back(c);
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (is_and && std::count_if(flat.begin(), flat.end(), is_leaf) > 1) {
    // Literals of a conjunction are merged per linear form.
    Cube literals;
    std::vector<Formula> rest;
    for (auto& p : flat) {
      if (is_leaf(p))
        literals.literals.push_back(leaf_literal(p));
      else
        rest.push_back(std::move(p));
    }
    auto merged = simplify_cube(literals);
    if (!merged) return Formula::bottom();
    flat = std::move(rest);
    for (const auto& l : merged->literals) flat.push_back(literal_formula(l));
  }
  std::sort(flat.begin(), flat.end(), formula_less);
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  return is_and ? Formula::conj(std::move(flat)) : Formula::disj(std::move(flat));
}

Formula mk_and(std::vector<Formula> parts) { return junction(true, std::move(parts)); }
Formula mk_or(std::vector<Formula> parts) { return junction(false, std::move(parts)); }

Formula leaf(LiteralKind kind, const LinearTerm& t) {
  bool truth = true;
  auto lit = make_literal(kind, t, &truth);
  if (!lit) return truth ? Formula::top() : Formula::bottom();
  return literal_formula(*lit);
}

enum class Rel { Lt, Le, Gt, Ge, Eq, Ne };

Rel negate(Rel r) {
  switch (r) {
    case Rel::Lt: return Rel::Ge;
    case Rel::Le: return Rel::Gt;
    case Rel::Gt: return Rel::Le;
    case Rel::Ge: return Rel::Lt;
    case Rel::Eq: return Rel::Ne;
    case Rel::Ne: return Rel::Eq;
  }
  return r;
}

/// A literal read as z rel c with z a linear form of leading coefficient +1.
struct Constraint {
  LinearTerm form;
  Rel rel;
  Scalar value;
};

Constraint constraint_of(const Literal& l) {
  LinearTerm z = l.term.linear_part();
  Scalar k = l.term.constant();
  if (z.entries().front().second.sign() < 0) return {-z, Rel::Gt, k};
  return {z, l.kind == LiteralKind::Lt ? Rel::Lt : l.kind == LiteralKind::Eq ? Rel::Eq : Rel::Ne, -k};
}

bool holds(const Scalar& x, Rel r, const Scalar& c) {
  switch (r) {
    case Rel::Lt: return x < c;
    case Rel::Le: return x <= c;
    case Rel::Gt: return x > c;
    case Rel::Ge: return x >= c;
    case Rel::Eq: return x == c;
    case Rel::Ne: return x != c;
  }
  return false;
}

/// Known facts about individual linear forms, used to simplify a formula
/// under the literals of enclosing conjunctions and negated disjunctions.
class Context {
 public:
  /// nullopt when the value of `z rel c` is not determined.
  std::optional<bool> eval(const Constraint& k) const {
    auto it = forms_.find(k.form);
    if (it == forms_.end()) return std::nullopt;
    const Info& i = it->second;
    if (i.pinned) return holds(*i.pinned, k.rel, k.value);
    const Scalar& c = k.value;
    auto above = [&](bool strict) {  // known z > c (strict) or z >= c
      return i.lower && (i.lower->value > c || (i.lower->value == c && (i.lower->strict || !strict)));
    };
    auto below = [&](bool strict) {
      return i.upper && (i.upper->value < c || (i.upper->value == c && (i.upper->strict || !strict)));
    };
    bool excluded = std::find(i.excluded.begin(), i.excluded.end(), c) != i.excluded.end();
    switch (k.rel) {
      case Rel::Lt:
        if (below(true)) return true;
        if (above(false)) return false;
        return std::nullopt;
      case Rel::Le:
        if (below(false)) return true;
        if (above(true)) return false;
        return std::nullopt;
      case Rel::Gt:
        if (above(true)) return true;
        if (below(false)) return false;
        return std::nullopt;
      case Rel::Ge:
        if (above(false)) return true;
        if (below(true)) return false;
        return std::nullopt;
      case Rel::Eq:
      case Rel::Ne: {
        bool differs = above(true) || below(true) || excluded;
        if (differs) return k.rel == Rel::Ne;
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  /// Adds a fact; false when the context becomes inconsistent.
  bool add(const Constraint& k) {
    Info& i = forms_[k.form];
    switch (k.rel) {
      case Rel::Lt:
      case Rel::Le: {
        Bound b{k.value, k.rel == Rel::Lt};
        if (!i.upper || b.value < i.upper->value || (b.value == i.upper->value && b.strict)) i.upper = b;
        break;
      }
      case Rel::Gt:
      case Rel::Ge: {
        Bound b{k.value, k.rel == Rel::Gt};
        if (!i.lower || b.value > i.lower->value || (b.value == i.lower->value && b.strict)) i.lower = b;
        break;
      }
      case Rel::Eq:
        if (i.pinned && *i.pinned != k.value) return false;
        i.pinned = k.value;
        break;
      case Rel::Ne: i.excluded.push_back(k.value); break;
    }
    if (i.lower && i.upper && !i.pinned) {
      if (i.lower->value > i.upper->value) return false;
      if (i.lower->value == i.upper->value) {
        if (i.lower->strict || i.upper->strict) return false;
        i.pinned = i.lower->value;
      }
    }
    if (i.pinned) {
      const Scalar& p = *i.pinned;
      // Linear forms take rational values only.
      if (!p.is_rational()) return false;
      if (i.lower && !holds(p, i.lower->strict ? Rel::Gt : Rel::Ge, i.lower->value)) return false;
      if (i.upper && !holds(p, i.upper->strict ? Rel::Lt : Rel::Le, i.upper->value)) return false;
      if (std::find(i.excluded.begin(), i.excluded.end(), p) != i.excluded.end()) return false;
    }
    return true;
  }

 private:
  struct Bound {
    Scalar value;
    bool strict;
  };
  struct Info {
    std::optional<Bound> lower;
    std::optional<Bound> upper;
    std::optional<Scalar> pinned;
    std::vector<Scalar> excluded;
  };
  std::map<LinearTerm, Info, TermLess> forms_;
};

/// Contextual simplification of a quantifier-free NNF formula: literals decided
/// by the enclosing context collapse, and conjunctions whose literals are
/// jointly unsatisfiable become false.
Formula simplify_in(const Formula& f, const Context& ctx) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False: return f;
    case FormulaKind::And:
    case FormulaKind::Or: {
      const bool is_and = f.kind() == FormulaKind::And;
      const Formula absorbing = is_and ? Formula::bottom() : Formula::top();
      const FormulaKind neutral = is_and ? FormulaKind::True : FormulaKind::False;
      Context inner = ctx;
      std::vector<Formula> parts;
      Cube literals;
      std::vector<const Formula*> compound;
      for (const auto& c : f.children()) {
        if (!is_leaf(c)) {
          compound.push_back(&c);
          continue;
        }
        Literal l = leaf_literal(c);
        Constraint k = constraint_of(l);
        if (auto known = inner.eval(k)) {
          if (*known != is_and) return absorbing;
          continue;
        }
        if (!inner.add(is_and ? k : Constraint{k.form, negate(k.rel), k.value})) return absorbing;
        parts.push_back(c);
        literals.literals.push_back(std::move(l));
      }
      if (is_and && literals.literals.size() > 2 && !cube_satisfiable(literals)) return absorbing;
      for (const Formula* c : compound) {
        Formula s = simplify_in(*c, inner);
        if (s.kind() == absorbing.kind()) return absorbing;
        if (s.kind() == neutral) continue;
        if (is_leaf(s)) {
          Constraint k = constraint_of(leaf_literal(s));
          if (!inner.add(is_and ? k : Constraint{k.form, negate(k.rel), k.value})) return absorbing;
        }
        parts.push_back(std::move(s));
      }
      return is_and ? mk_and(std::move(parts)) : mk_or(std::move(parts));
    }
    default: {
      auto known = ctx.eval(constraint_of(leaf_literal(f)));
      if (!known) return f;
      return *known ? Formula::top() : Formula::bottom();
    }
  }
}

Formula simplify(const Formula& f) { return simplify_in(f, Context()); }

class Eliminator {
 public:
  explicit Eliminator(const QeOptions& opts) : opts_(opts) {}

  Formula run(const Formula& f, bool negate) {
    switch (f.kind()) {
      case FormulaKind::True: return negate ? Formula::bottom() : Formula::top();
      case FormulaKind::False: return negate ? Formula::top() : Formula::bottom();
      case FormulaKind::Atom: {
        const Atom& a = f.atom();
        const LinearTerm& t = a.term();
        switch (a.kind()) {
          case AtomKind::Pred: throw Error(ErrorKind::PredicateLeak, "unexpanded predicate " + a.pred_name());
          case AtomKind::LessThanZero:
            return negate ? mk_or({leaf(LiteralKind::Lt, -t), leaf(LiteralKind::Eq, t)}) : leaf(LiteralKind::Lt, t);
          case AtomKind::EqualsZero: return leaf(negate ? LiteralKind::Ne : LiteralKind::Eq, t);
        }
        return f;
      }
      case FormulaKind::Not: return run(f.child(), !negate);
      case FormulaKind::And:
      case FormulaKind::Or: {
        std::vector<Formula> parts;
        for (const auto& c : f.children()) parts.push_back(run(c, negate));
        return (f.kind() == FormulaKind::And) != negate ? mk_and(std::move(parts)) : mk_or(std::move(parts));
      }
      case FormulaKind::Implies:
        if (negate) return mk_and({run(f.child(0), false), run(f.child(1), true)});
        return mk_or({run(f.child(0), true), run(f.child(1), false)});
      case FormulaKind::Exists: {
        Formula e = quantify(f.var(), run(f.body(), false));
        return negate ? negated(e) : e;
      }
      case FormulaKind::Forall: {
        Formula e = quantify(f.var(), run(f.body(), true));
        return negate ? e : negated(e);
      }
    }
    return f;
  }

 private:
  Formula quantify(const Var& v, const Formula& body) {
    Formula in = simplify(body);
    Formula out = simplify(exists(v, in));
    spdlog::debug("eliminated {}: {} -> {} nodes", v.name(), formula_size(in), formula_size(out));
    return out;
  }

  void check_size(const Formula& f) {
    if (formula_size(f) > opts_.max_nodes)
      throw Error(ErrorKind::ResourceLimit, "quantifier elimination exceeded " + std::to_string(opts_.max_nodes) +
                                                " formula nodes");
  }

  /// Negation of a quantifier-free NNF formula, again in NNF.
  Formula negated(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::True: return Formula::bottom();
      case FormulaKind::False: return Formula::top();
      case FormulaKind::Atom: return run(f, true);
      case FormulaKind::Not: return leaf(LiteralKind::Eq, f.child().atom().term());
      case FormulaKind::And:
      case FormulaKind::Or: {
        std::vector<Formula> parts;
        for (const auto& c : f.children()) parts.push_back(negated(c));
        Formula out = f.kind() == FormulaKind::And ? mk_or(std::move(parts)) : mk_and(std::move(parts));
        check_size(out);
        return out;
      }
      default: throw Error(ErrorKind::Usage, "negated expects a quantifier-free formula");
    }
  }

  /// Exists v (f) for quantifier-free NNF f, scoping v as narrowly as possible.
  Formula exists(const Var& v, const Formula& f) {
    check_size(f);
    if (!is_free_in(f, v)) return f;
    Formula out;
    if (f.kind() == FormulaKind::Or) {
      std::vector<Formula> parts;
      for (const auto& c : f.children()) parts.push_back(exists(v, c));
      out = mk_or(std::move(parts));
    } else if (f.kind() == FormulaKind::And) {
      std::vector<Formula> parts;
      std::vector<Formula> dependent;
      for (const auto& c : f.children()) (is_free_in(c, v) ? dependent : parts).push_back(c);
      auto pin = std::find_if(dependent.begin(), dependent.end(), [&](const Formula& d) {
        return is_leaf(d) && leaf_literal(d).kind == LiteralKind::Eq;
      });
      if (dependent.size() == 1) {
        parts.push_back(exists(v, dependent.front()));
      } else if (pin != dependent.end()) {
        // v = t fixes v: substitute t everywhere, or fail if t is never rational.
        const LinearTerm& e = leaf_literal(*pin).term;
        LinearTerm root = -e.without(v) / e.coeff(v);
        if (!root.constant().is_rational()) return Formula::bottom();
        parts.push_back(place(v, mk_and(std::move(dependent)), At::Exact, root));
      } else if (std::all_of(dependent.begin(), dependent.end(), is_leaf)) {
        Cube c;
        for (const auto& d : dependent) c.literals.push_back(leaf_literal(d));
        parts.push_back(eliminate_cube(v, c));
      } else {
        Formula g = mk_and(std::move(dependent));
        if (auto cubes = small_dnf(g, kSmallDnf)) {
          std::vector<Formula> cases;
          for (const Cube& c : *cubes) cases.push_back(cube_formula(eliminate_from_cube(v, c)));
          parts.push_back(mk_or(std::move(cases)));
        } else {
          parts.push_back(test_points(v, g));
        }
      }
      out = mk_and(std::move(parts));
    } else {
      out = eliminate_cube(v, Cube{{leaf_literal(f)}});
    }
    check_size(out);
    return out;
  }

  static constexpr std::size_t kSmallDnf = 256;

  /// Satisfiable cubes of f, or nullopt once more than `cap` arise.
  static std::optional<std::vector<Cube>> small_dnf(const Formula& f, std::size_t cap) {
    std::vector<Cube> cubes;
    switch (f.kind()) {
      case FormulaKind::True: cubes.emplace_back(); return cubes;
      case FormulaKind::False: return cubes;
      case FormulaKind::Or:
        for (const auto& c : f.children()) {
          auto sub = small_dnf(c, cap);
          if (!sub) return std::nullopt;
          cubes.insert(cubes.end(), sub->begin(), sub->end());
          if (cubes.size() > cap) return std::nullopt;
        }
        return cubes;
      case FormulaKind::And: {
        cubes.emplace_back();
        for (const auto& c : f.children()) {
          auto factor = small_dnf(c, cap);
          if (!factor) return std::nullopt;
          std::vector<Cube> next;
          for (const auto& left : cubes) {
            for (const auto& right : *factor) {
              Cube merged = left;
              merged.literals.insert(merged.literals.end(), right.literals.begin(), right.literals.end());
              auto simplified = simplify_cube(merged);
              if (simplified && cube_satisfiable(*simplified)) next.push_back(std::move(*simplified));
              if (next.size() > cap) return std::nullopt;
            }
          }
          cubes = std::move(next);
        }
        return cubes;
      }
      default: cubes.push_back(Cube{{leaf_literal(f)}}); return cubes;
    }
  }

  enum class At { Exact, PlusEps, MinusEps, NegInf, PosInf };

  /// f with v replaced by the (possibly infinitesimally shifted) point t.
  Formula place(const Var& v, const Formula& f, At mode, const LinearTerm& t) {
    if (!is_free_in(f, v)) return f;
    if (f.kind() == FormulaKind::And || f.kind() == FormulaKind::Or) {
      std::vector<Formula> parts;
      for (const auto& c : f.children()) parts.push_back(place(v, c, mode, t));
      return f.kind() == FormulaKind::And ? mk_and(std::move(parts)) : mk_or(std::move(parts));
    }
    Literal l = leaf_literal(f);
    if (mode != At::Exact && l.kind != LiteralKind::Lt)
      return l.kind == LiteralKind::Ne ? Formula::top() : Formula::bottom();
    bool rising = l.term.coeff(v).sign() > 0;
    switch (mode) {
      case At::NegInf: return rising ? Formula::top() : Formula::bottom();
      case At::PosInf: return rising ? Formula::bottom() : Formula::top();
      default: break;
    }
    LinearTerm s = l.term.substitute(v, t);
    if (mode == At::Exact) return leaf(l.kind, s);
    // Just right of t, an upper bound on v holds iff it holds strictly at t and a
    // lower bound holds iff it holds weakly at t; symmetrically just left of t.
    bool strict = (mode == At::PlusEps) == rising;
    if (strict) return leaf(LiteralKind::Lt, s);
    return mk_or({leaf(LiteralKind::Lt, s), leaf(LiteralKind::Eq, s)});
  }

  static void collect(const Var& v, const Formula& f, std::vector<Literal>& out) {
    if (!is_free_in(f, v)) return;
    if (f.kind() == FormulaKind::And || f.kind() == FormulaKind::Or) {
      for (const auto& c : f.children()) collect(v, c, out);
      return;
    }
    out.push_back(leaf_literal(f));
  }

  /// Virtual substitution: exists v f holds iff f holds at -inf, just right of
  /// some lower root, or exactly at some rational equality root.
  Formula test_points(const Var& v, const Formula& f) {
    std::vector<Literal> atoms;
    collect(v, f, atoms);
    std::vector<LinearTerm> below;  // roots approached from the right
    std::vector<LinearTerm> above;  // roots approached from the left
    std::vector<LinearTerm> exact;
    for (const Literal& l : atoms) {
      Rational c = l.term.coeff(v);
      LinearTerm root = -l.term.without(v) / c;
      switch (l.kind) {
        case LiteralKind::Lt: (c.sign() < 0 ? below : above).push_back(std::move(root)); break;
        case LiteralKind::Ne:
          below.push_back(root);
          above.push_back(std::move(root));
          break;
        case LiteralKind::Eq:
          // Irrational roots are never attained by a rational v.
          if (root.constant().is_rational()) exact.push_back(std::move(root));
          break;
      }
    }
    auto dedupe = [](std::vector<LinearTerm>& ts) {
      std::sort(ts.begin(), ts.end(), TermLess());
      ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    };
    dedupe(below);
    dedupe(above);
    dedupe(exact);
    bool from_left = below.size() <= above.size();
    std::vector<Formula> cases{place(v, f, from_left ? At::NegInf : At::PosInf, LinearTerm())};
    for (const auto& t : from_left ? below : above) {
      cases.push_back(place(v, f, from_left ? At::PlusEps : At::MinusEps, t));
      if (cases.back().kind() == FormulaKind::True) return cases.back();
    }
    for (const auto& t : exact) {
      cases.push_back(place(v, f, At::Exact, t));
      if (cases.back().kind() == FormulaKind::True) return cases.back();
    }
    Formula out = mk_or(std::move(cases));
    check_size(out);
    return out;
  }

  QeOptions opts_;
};

bool eval(const Formula& f, const Assignment& a) {
  switch (f.kind()) {
    case FormulaKind::True: return true;
    case FormulaKind::False: return false;
    case FormulaKind::Atom: {
      const Atom& at = f.atom();
      if (at.kind() == AtomKind::Pred) throw Error(ErrorKind::PredicateLeak, "cannot evaluate predicate " + at.pred_name());
      int s = at.term().evaluate(a).sign();
      return at.kind() == AtomKind::LessThanZero ? s < 0 : s == 0;
    }
    case FormulaKind::Not: return !eval(f.child(), a);
    case FormulaKind::And:
      return std::all_of(f.children().begin(), f.children().end(), [&](const Formula& c) { return eval(c, a); });
    case FormulaKind::Or:
      return std::any_of(f.children().begin(), f.children().end(), [&](const Formula& c) { return eval(c, a); });
    case FormulaKind::Implies: return !eval(f.child(0), a) || eval(f.child(1), a);
    default: throw Error(ErrorKind::Usage, "evaluate expects a quantifier-free formula");
  }
}

}  // namespace

QfFormula eliminate_exists(const Var& v, const Cube& c) { return QfFormula(eliminate_cube(v, c)); }

QfFormula eliminate_all(const Formula& f, const StructureSpec& s, const QeOptions& opts) {
  Formula expanded = expand_predicates(f, s);
  return QfFormula(Eliminator(opts).run(expanded, false));
}

bool decide(const Formula& sentence, const StructureSpec& s, const QeOptions& opts) {
  auto free = free_vars_ordered(sentence);
  if (!free.empty()) throw Error(ErrorKind::NotASentence, "free variable " + free.front().name() + " in sentence");
  return eval(eliminate_all(sentence, s, opts).formula(), {});
}

bool evaluate(const QfFormula& f, const Assignment& assignment) { return eval(f.formula(), assignment); }

std::optional<Rational> sample_point(const Formula& f, const StructureSpec& s, const QeOptions& opts) {
  auto free = free_vars_ordered(f);
  if (free.size() != 1)
    throw Error(ErrorKind::Usage, "sample_point expects exactly one free variable, found " + std::to_string(free.size()));
  return pick_element(normalize(f, free.front(), s, opts));
}

}  // namespace oag
