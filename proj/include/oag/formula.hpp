#pragma once

#include <compare>
#include <initializer_list>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "oag/scalar.hpp"

namespace oag {

/// A first-order variable, compared by name.
class Var {
 public:
  Var() = default;
  explicit Var(std::string name);
  const std::string& name() const { return name_; }
  friend bool operator==(const Var&, const Var&) = default;
  friend auto operator<=>(const Var&, const Var&) = default;

 private:
  std::string name_;
};

/// sum c_i * v_i + k with rational coefficients and a scalar constant.
/// Coefficients are kept sorted by variable with no zero entries.
class LinearTerm {
 public:
  using Entry = std::pair<Var, Rational>;

  LinearTerm() = default;
  LinearTerm(Scalar constant) : constant_(std::move(constant)) {}  // NOLINT(google-explicit-constructor)
  LinearTerm(std::int64_t constant) : constant_(constant) {}        // NOLINT(google-explicit-constructor)
  static LinearTerm variable(const Var& v, Rational coeff = 1);

  const std::vector<Entry>& entries() const { return entries_; }
  const Scalar& constant() const { return constant_; }
  Rational coeff(const Var& v) const;
  bool mentions(const Var& v) const;
  bool is_constant() const { return entries_.empty(); }
  std::set<Var> vars() const;

  /// Variable part only (constant dropped).
  LinearTerm linear_part() const;
  LinearTerm without(const Var& v) const;
  LinearTerm substitute(const Var& v, const LinearTerm& t) const;

  /// Value under an assignment; throws MissingAssignment.
  Scalar evaluate(const std::map<Var, Scalar>& assignment) const;

  LinearTerm operator-() const;
  LinearTerm& operator+=(const LinearTerm& o);
  LinearTerm& operator-=(const LinearTerm& o) { return *this += -o; }
  LinearTerm& operator*=(const Rational& k);
  LinearTerm& operator/=(const Rational& k);
  friend LinearTerm operator+(LinearTerm a, const LinearTerm& b) { return a += b; }
  friend LinearTerm operator-(LinearTerm a, const LinearTerm& b) { return a -= b; }
  friend LinearTerm operator*(LinearTerm a, const Rational& k) { return a *= k; }
  friend LinearTerm operator*(const Rational& k, LinearTerm a) { return a *= k; }
  friend LinearTerm operator/(LinearTerm a, const Rational& k) { return a /= k; }

  friend bool operator==(const LinearTerm& a, const LinearTerm& b) {
    return a.constant_ == b.constant_ && a.entries_ == b.entries_;
  }
  /// Arbitrary but fixed total order, for canonical containers.
  friend int compare_terms(const LinearTerm& a, const LinearTerm& b);

 private:
  std::vector<Entry> entries_;
  Scalar constant_;
};

inline LinearTerm var_term(const std::string& name, Rational coeff = 1) {
  return LinearTerm::variable(Var(name), std::move(coeff));
}

using Assignment = std::map<Var, Scalar>;

enum class AtomKind { LessThanZero, EqualsZero, Pred };

/// t < 0, t = 0, or P(t). Equalities are stored with a canonical sign.
class Atom {
 public:
  static Atom less_than_zero(LinearTerm t);
  static Atom equals_zero(LinearTerm t);
  static Atom pred(std::string name, LinearTerm t);

  AtomKind kind() const { return kind_; }
  const LinearTerm& term() const { return term_; }
  const std::string& pred_name() const { return pred_; }

  Atom with_term(LinearTerm t) const;

  friend bool operator==(const Atom&, const Atom&) = default;

 private:
  Atom(AtomKind kind, LinearTerm term, std::string pred)
      : kind_(kind), term_(std::move(term)), pred_(std::move(pred)) {}

  AtomKind kind_ = AtomKind::LessThanZero;
  LinearTerm term_;
  std::string pred_;
};

enum class FormulaKind { True, False, Atom, Not, And, Or, Implies, Exists, Forall };

/// Immutable, shared first-order formula tree.
class Formula {
 public:
  Formula();  // true

  static Formula top();
  static Formula bottom();
  static Formula atom(Atom a);
  static Formula negation(Formula f);
  /// Empty list gives true, a single element is returned unchanged.
  static Formula conj(std::vector<Formula> fs);
  /// Empty list gives false, a single element is returned unchanged.
  static Formula disj(std::vector<Formula> fs);
  static Formula implies(Formula premise, Formula conclusion);
  static Formula exists(Var v, Formula body);
  static Formula forall(Var v, Formula body);

  FormulaKind kind() const { return node_->kind; }
  bool is_quantifier() const { return kind() == FormulaKind::Exists || kind() == FormulaKind::Forall; }
  const Atom& atom() const { return node_->atom; }
  const std::vector<Formula>& children() const { return node_->children; }
  const Formula& child(std::size_t i = 0) const { return node_->children.at(i); }
  const Var& var() const { return node_->var; }
  const Formula& body() const { return node_->children.front(); }

  /// Structural (not alpha) equality.
  friend bool operator==(const Formula& a, const Formula& b);
  friend int compare_formulas(const Formula& a, const Formula& b);

  bool same_node(const Formula& o) const { return node_ == o.node_; }
  /// Sorted free variables, cached at construction.
  const std::vector<Var>& free() const { return node_->free; }
  /// Node count, cached at construction.
  std::size_t size() const { return node_->size; }

 private:
  struct Node {
    FormulaKind kind = FormulaKind::True;
    Atom atom = Atom::less_than_zero(LinearTerm());
    std::vector<Formula> children;
    Var var;
    std::vector<Var> free;
    std::size_t size = 1;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(FormulaKind kind, std::vector<Formula> children, Var var = Var());

  std::shared_ptr<const Node> node_;
};

// Atom shorthands over terms: s < t, s = t, s <= t (as s < t | s = t).
Formula lt(const LinearTerm& s, const LinearTerm& t);
Formula eq(const LinearTerm& s, const LinearTerm& t);
Formula le(const LinearTerm& s, const LinearTerm& t);
Formula pred(const std::string& name, const LinearTerm& t);

std::set<Var> free_vars(const Formula& f);
std::set<Var> bound_vars(const Formula& f);
/// Every variable name occurring anywhere, bound or free.
std::set<Var> all_vars(const Formula& f);
/// Free variables in order of first occurrence (left to right).
std::vector<Var> free_vars_ordered(const Formula& f);
bool is_free_in(const Formula& f, const Var& v);
bool is_sentence(const Formula& f);
bool is_quantifier_free(const Formula& f);
bool has_predicates(const Formula& f);
std::size_t quantifier_depth(const Formula& f);
std::size_t formula_size(const Formula& f);

/// Variable named `base` if unused, otherwise `base_1`, `base_2`, ...
Var fresh_var(const std::string& base, const std::set<Var>& avoid);

/// Capture-avoiding replacement of the free occurrences of v by t.
Formula substitute(const Formula& f, const Var& v, const LinearTerm& t);

/// Negation normal form: implications removed, negations pushed to atoms,
/// ~(t<0) to -t<0 | t=0, ~(t=0) to t<0 | -t<0; negated predicates stay as leaves.
Formula to_nnf(const Formula& f);

bool alpha_equivalent(const Formula& a, const Formula& b);

}  // namespace oag
