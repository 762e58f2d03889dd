#include "oag/formula.hpp"

#include <algorithm>
#include <iterator>
#include <optional>

#include "oag/error.hpp"

namespace oag {

Var::Var(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw Error(ErrorKind::Usage, "variable names must be nonempty");
}

// ---------------------------------------------------------------------------
// LinearTerm

LinearTerm LinearTerm::variable(const Var& v, Rational coeff) {
  LinearTerm t;
  if (!coeff.is_zero()) t.entries_.emplace_back(v, std::move(coeff));
  return t;
}

Rational LinearTerm::coeff(const Var& v) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                             [](const Entry& e, const Var& key) { return e.first < key; });
  if (it != entries_.end() && it->first == v) return it->second;
  return Rational();
}

bool LinearTerm::mentions(const Var& v) const { return !coeff(v).is_zero(); }

std::set<Var> LinearTerm::vars() const {
  std::set<Var> out;
  for (const auto& [v, c] : entries_) out.insert(v);
  return out;
}

LinearTerm LinearTerm::linear_part() const {
  LinearTerm t;
  t.entries_ = entries_;
  return t;
}

LinearTerm LinearTerm::without(const Var& v) const {
  LinearTerm t = *this;
  std::erase_if(t.entries_, [&](const Entry& e) { return e.first == v; });
  return t;
}

LinearTerm LinearTerm::substitute(const Var& v, const LinearTerm& t) const {
  Rational c = coeff(v);
  if (c.is_zero()) return *this;
  return without(v) + t * c;
}

Scalar LinearTerm::evaluate(const std::map<Var, Scalar>& assignment) const {
  Scalar value = constant_;
  for (const auto& [v, c] : entries_) {
    auto it = assignment.find(v);
    if (it == assignment.end()) throw Error(ErrorKind::MissingAssignment, "no value for variable " + v.name());
    value = value + it->second * c;
  }
  return value;
}

LinearTerm LinearTerm::operator-() const {
  LinearTerm t = *this;
  for (auto& e : t.entries_) e.second = -e.second;
  t.constant_ = -t.constant_;
  return t;
}

LinearTerm& LinearTerm::operator+=(const LinearTerm& o) {
  std::vector<Entry> merged;
  merged.reserve(entries_.size() + o.entries_.size());
  auto a = entries_.begin();
  auto b = o.entries_.begin();
  while (a != entries_.end() || b != o.entries_.end()) {
    if (b == o.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      merged.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      Rational sum = a->second + b->second;
      if (!sum.is_zero()) merged.emplace_back(a->first, std::move(sum));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(merged);
  constant_ = constant_ + o.constant_;
  return *this;
}

LinearTerm& LinearTerm::operator*=(const Rational& k) {
  if (k.is_zero()) {
    entries_.clear();
    constant_ = Scalar();
    return *this;
  }
  for (auto& e : entries_) e.second *= k;
  constant_ = constant_ * k;
  return *this;
}

LinearTerm& LinearTerm::operator/=(const Rational& k) {
  if (k.is_zero()) throw Error(ErrorKind::DomainMismatch, "division by zero");
  for (auto& e : entries_) e.second /= k;
  constant_ = constant_ / k;
  return *this;
}

namespace {

template <class T>
int three_way(const T& a, const T& b) {
  auto c = a <=> b;
  return c < 0 ? -1 : c > 0 ? 1 : 0;
}

int compare_scalars_structurally(const Scalar& a, const Scalar& b) {
  if (int c = three_way(a.radicand(), b.radicand())) return c;
  if (int c = three_way(a.rat_part(), b.rat_part())) return c;
  return three_way(a.irr_part(), b.irr_part());
}

}  // namespace

int compare_terms(const LinearTerm& a, const LinearTerm& b) {
  std::size_t n = std::min(a.entries_.size(), b.entries_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = three_way(a.entries_[i].first, b.entries_[i].first)) return c;
    if (int c = three_way(a.entries_[i].second, b.entries_[i].second)) return c;
  }
  if (int c = three_way(a.entries_.size(), b.entries_.size())) return c;
  return compare_scalars_structurally(a.constant_, b.constant_);
}

// ---------------------------------------------------------------------------
// Atom

Atom Atom::less_than_zero(LinearTerm t) { return Atom(AtomKind::LessThanZero, std::move(t), {}); }

Atom Atom::equals_zero(LinearTerm t) {
  int s = t.is_constant() ? t.constant().sign() : t.entries().front().second.sign();
  if (s < 0) t = -t;
  return Atom(AtomKind::EqualsZero, std::move(t), {});
}

Atom Atom::pred(std::string name, LinearTerm t) {
  if (name.empty()) throw Error(ErrorKind::Usage, "predicate names must be nonempty");
  return Atom(AtomKind::Pred, std::move(t), std::move(name));
}

Atom Atom::with_term(LinearTerm t) const {
  switch (kind_) {
    case AtomKind::LessThanZero: return less_than_zero(std::move(t));
    case AtomKind::EqualsZero: return equals_zero(std::move(t));
    case AtomKind::Pred: return pred(pred_, std::move(t));
  }
  return *this;
}

// ---------------------------------------------------------------------------
// Formula

Formula::Formula() : Formula(top()) {}

Formula Formula::make(FormulaKind kind, std::vector<Formula> children, Var var) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->children = std::move(children);
  n->var = std::move(var);
  for (const auto& c : n->children) {
    n->size += c.size();
    std::vector<Var> merged;
    std::set_union(n->free.begin(), n->free.end(), c.free().begin(), c.free().end(), std::back_inserter(merged));
    n->free = std::move(merged);
  }
  if (kind == FormulaKind::Exists || kind == FormulaKind::Forall) std::erase(n->free, n->var);
  return Formula(std::shared_ptr<const Node>(std::move(n)));
}

Formula Formula::top() {
  static const Formula t = make(FormulaKind::True, {});
  return t;
}

Formula Formula::bottom() {
  static const Formula f = make(FormulaKind::False, {});
  return f;
}

Formula Formula::atom(Atom a) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Atom;
  n->atom = std::move(a);
  for (const auto& e : n->atom.term().entries()) n->free.push_back(e.first);
  return Formula(std::shared_ptr<const Node>(std::move(n)));
}

Formula Formula::negation(Formula f) { return make(FormulaKind::Not, {std::move(f)}); }

Formula Formula::conj(std::vector<Formula> fs) {
  if (fs.empty()) return top();
  if (fs.size() == 1) return std::move(fs.front());
  return make(FormulaKind::And, std::move(fs));
}

Formula Formula::disj(std::vector<Formula> fs) {
  if (fs.empty()) return bottom();
  if (fs.size() == 1) return std::move(fs.front());
  return make(FormulaKind::Or, std::move(fs));
}

Formula Formula::implies(Formula premise, Formula conclusion) {
  return make(FormulaKind::Implies, {std::move(premise), std::move(conclusion)});
}

Formula Formula::exists(Var v, Formula body) { return make(FormulaKind::Exists, {std::move(body)}, std::move(v)); }

Formula Formula::forall(Var v, Formula body) { return make(FormulaKind::Forall, {std::move(body)}, std::move(v)); }

int compare_formulas(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return 0;
  if (int c = three_way(static_cast<int>(a.kind()), static_cast<int>(b.kind()))) return c;
  switch (a.kind()) {
    case FormulaKind::True:
    case FormulaKind::False: return 0;
    case FormulaKind::Atom: {
      const Atom& x = a.atom();
      const Atom& y = b.atom();
      if (int c = three_way(static_cast<int>(x.kind()), static_cast<int>(y.kind()))) return c;
      if (int c = x.pred_name().compare(y.pred_name())) return c < 0 ? -1 : 1;
      return compare_terms(x.term(), y.term());
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      if (int c = three_way(a.var(), b.var())) return c;
      [[fallthrough]];
    default: {
      const auto& xs = a.children();
      const auto& ys = b.children();
      std::size_t n = std::min(xs.size(), ys.size());
      for (std::size_t i = 0; i < n; ++i)
        if (int c = compare_formulas(xs[i], ys[i])) return c;
      return three_way(xs.size(), ys.size());
    }
  }
}

bool operator==(const Formula& a, const Formula& b) { return compare_formulas(a, b) == 0; }

Formula lt(const LinearTerm& s, const LinearTerm& t) { return Formula::atom(Atom::less_than_zero(s - t)); }
Formula eq(const LinearTerm& s, const LinearTerm& t) { return Formula::atom(Atom::equals_zero(s - t)); }
Formula le(const LinearTerm& s, const LinearTerm& t) { return Formula::disj({lt(s, t), eq(s, t)}); }
Formula pred(const std::string& name, const LinearTerm& t) { return Formula::atom(Atom::pred(name, t)); }

namespace {

void collect_free(const Formula& f, std::set<Var>& bound, std::vector<Var>& out, std::set<Var>& seen) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False: return;
    case FormulaKind::Atom:
      for (const auto& [v, c] : f.atom().term().entries())
        if (!bound.contains(v) && seen.insert(v).second) out.push_back(v);
      return;
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      bool inserted = bound.insert(f.var()).second;
      collect_free(f.body(), bound, out, seen);
      if (inserted) bound.erase(f.var());
      return;
    }
    default:
      for (const auto& c : f.children()) collect_free(c, bound, out, seen);
  }
}

void collect_all(const Formula& f, std::set<Var>& out, bool bound_only) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False: return;
    case FormulaKind::Atom:
      if (!bound_only)
        for (const auto& [v, c] : f.atom().term().entries()) out.insert(v);
      return;
    case FormulaKind::Exists:
    case FormulaKind::Forall: out.insert(f.var()); [[fallthrough]];
    default:
      for (const auto& c : f.children()) collect_all(c, out, bound_only);
  }
}

}  // namespace

std::vector<Var> free_vars_ordered(const Formula& f) {
  std::set<Var> bound;
  std::set<Var> seen;
  std::vector<Var> out;
  collect_free(f, bound, out, seen);
  return out;
}

std::set<Var> free_vars(const Formula& f) {
  auto ordered = free_vars_ordered(f);
  return {ordered.begin(), ordered.end()};
}

std::set<Var> bound_vars(const Formula& f) {
  std::set<Var> out;
  collect_all(f, out, true);
  return out;
}

std::set<Var> all_vars(const Formula& f) {
  std::set<Var> out;
  collect_all(f, out, false);
  return out;
}

bool is_free_in(const Formula& f, const Var& v) {
  return std::binary_search(f.free().begin(), f.free().end(), v);
}

bool is_sentence(const Formula& f) { return free_vars_ordered(f).empty(); }

bool is_quantifier_free(const Formula& f) {
  if (f.is_quantifier()) return false;
  return std::all_of(f.children().begin(), f.children().end(), is_quantifier_free);
}

bool has_predicates(const Formula& f) {
  if (f.kind() == FormulaKind::Atom) return f.atom().kind() == AtomKind::Pred;
  return std::any_of(f.children().begin(), f.children().end(), has_predicates);
}

std::size_t quantifier_depth(const Formula& f) {
  std::size_t deepest = 0;
  for (const auto& c : f.children()) deepest = std::max(deepest, quantifier_depth(c));
  return deepest + (f.is_quantifier() ? 1 : 0);
}

std::size_t formula_size(const Formula& f) { return f.size(); }

Var fresh_var(const std::string& base, const std::set<Var>& avoid) {
  Var candidate(base);
  for (int k = 1; avoid.contains(candidate); ++k) candidate = Var(base + "_" + std::to_string(k));
  return candidate;
}

Formula substitute(const Formula& f, const Var& v, const LinearTerm& t) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False: return f;
    case FormulaKind::Atom:
      if (!f.atom().term().mentions(v)) return f;
      return Formula::atom(f.atom().with_term(f.atom().term().substitute(v, t)));
    case FormulaKind::Not: return Formula::negation(substitute(f.child(), v, t));
    case FormulaKind::Implies: return Formula::implies(substitute(f.child(0), v, t), substitute(f.child(1), v, t));
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> cs;
      cs.reserve(f.children().size());
      for (const auto& c : f.children()) cs.push_back(substitute(c, v, t));
      return f.kind() == FormulaKind::And ? Formula::conj(std::move(cs)) : Formula::disj(std::move(cs));
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      if (f.var() == v || !is_free_in(f.body(), v)) return f;
      Var bound = f.var();
      Formula body = f.body();
      if (t.mentions(bound)) {
        std::set<Var> avoid = all_vars(body);
        for (const auto& x : t.vars()) avoid.insert(x);
        avoid.insert(v);
        Var renamed = fresh_var(bound.name(), avoid);
        body = substitute(body, bound, LinearTerm::variable(renamed));
        bound = renamed;
      }
      body = substitute(body, v, t);
      return f.kind() == FormulaKind::Exists ? Formula::exists(bound, body) : Formula::forall(bound, body);
    }
  }
  return f;
}

namespace {

Formula nnf(const Formula& f, bool negate) {
  switch (f.kind()) {
    case FormulaKind::True: return negate ? Formula::bottom() : f;
    case FormulaKind::False: return negate ? Formula::top() : f;
    case FormulaKind::Atom: {
      if (!negate) return f;
      const Atom& a = f.atom();
      const LinearTerm& t = a.term();
      switch (a.kind()) {
        case AtomKind::LessThanZero:
          return Formula::disj({Formula::atom(Atom::less_than_zero(-t)), Formula::atom(Atom::equals_zero(t))});
        case AtomKind::EqualsZero:
          return Formula::disj({Formula::atom(Atom::less_than_zero(t)), Formula::atom(Atom::less_than_zero(-t))});
        case AtomKind::Pred: return Formula::negation(f);
      }
      return f;
    }
    case FormulaKind::Not: return nnf(f.child(), !negate);
    case FormulaKind::Implies:
      if (negate) return Formula::conj({nnf(f.child(0), false), nnf(f.child(1), true)});
      return Formula::disj({nnf(f.child(0), true), nnf(f.child(1), false)});
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> cs;
      for (const auto& c : f.children()) cs.push_back(nnf(c, negate));
      bool conj = (f.kind() == FormulaKind::And) != negate;
      return conj ? Formula::conj(std::move(cs)) : Formula::disj(std::move(cs));
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      bool exists = (f.kind() == FormulaKind::Exists) != negate;
      Formula body = nnf(f.body(), negate);
      return exists ? Formula::exists(f.var(), body) : Formula::forall(f.var(), body);
    }
  }
  return f;
}

using Env = std::map<Var, std::size_t>;

LinearTerm rename_bound(const LinearTerm& t, const Env& env) {
  LinearTerm out(t.constant());
  for (const auto& [v, c] : t.entries()) {
    auto it = env.find(v);
    Var name = it == env.end() ? v : Var("#" + std::to_string(it->second));
    out += LinearTerm::variable(name, c);
  }
  return out;
}

bool alpha(const Formula& a, const Formula& b, Env& ea, Env& eb, std::size_t depth) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FormulaKind::True:
    case FormulaKind::False: return true;
    case FormulaKind::Atom: {
      const Atom& x = a.atom();
      const Atom& y = b.atom();
      if (x.kind() != y.kind() || x.pred_name() != y.pred_name()) return false;
      LinearTerm tx = rename_bound(x.term(), ea);
      LinearTerm ty = rename_bound(y.term(), eb);
      if (x.kind() == AtomKind::EqualsZero) return tx == ty || tx == -ty;
      return tx == ty;
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      auto saved_a = ea.find(a.var()) == ea.end() ? std::optional<std::size_t>() : ea[a.var()];
      auto saved_b = eb.find(b.var()) == eb.end() ? std::optional<std::size_t>() : eb[b.var()];
      ea[a.var()] = depth;
      eb[b.var()] = depth;
      bool ok = alpha(a.body(), b.body(), ea, eb, depth + 1);
      if (saved_a) ea[a.var()] = *saved_a; else ea.erase(a.var());
      if (saved_b) eb[b.var()] = *saved_b; else eb.erase(b.var());
      return ok;
    }
    default: {
      if (a.children().size() != b.children().size()) return false;
      for (std::size_t i = 0; i < a.children().size(); ++i)
        if (!alpha(a.child(i), b.child(i), ea, eb, depth)) return false;
      return true;
    }
  }
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

bool alpha_equivalent(const Formula& a, const Formula& b) {
  Env ea;
  Env eb;
  return alpha(a, b, ea, eb, 0);
}

}  // namespace oag
