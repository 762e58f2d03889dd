#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "oag/formula.hpp"
#include "oag/structure.hpp"

namespace oag {

struct QeOptions {
  /// Cap on intermediate formula size (nodes) and DNF literal count.
  std::size_t max_nodes = 1'000'000;
};

/// A formula known to be quantifier-free and predicate-free.
class QfFormula {
 public:
  /// Throws Usage if f has quantifiers and PredicateLeak if it has predicates.
  explicit QfFormula(Formula f);
  const Formula& formula() const { return f_; }

 private:
  Formula f_;
};

enum class LiteralKind { Lt, Eq, Ne };

/// t < 0, t = 0 or t != 0 with t scaled to a leading coefficient of +-1
/// (strict) or +1 (equalities and disequalities).
struct Literal {
  LiteralKind kind;
  LinearTerm term;
  friend bool operator==(const Literal&, const Literal&) = default;
};

/// Conjunction of literals.
struct Cube {
  std::vector<Literal> literals;
};

/// Normalizes a literal. nullopt means the literal is constant; `truth`
/// receives its value. Equalities whose constant has a nonzero irrational
/// part are false over Q.
std::optional<Literal> make_literal(LiteralKind kind, const LinearTerm& t, bool* truth);

/// Canonical simplification of a cube; nullopt when it is unsatisfiable for
/// syntactic reasons (conflicting bounds on one linear form).
std::optional<Cube> simplify_cube(const Cube& c);

Formula literal_formula(const Literal& l);

/// Exists v (c), over any divisible densely ordered group with Q-valued
/// variables: equality substitution when v is pinned, otherwise pairwise
/// lower/upper bound combination with v-disequalities dropped by density.
QfFormula eliminate_exists(const Var& v, const Cube& c);

/// Quantifier-free equivalent of f over s: predicates expanded, quantifiers
/// eliminated innermost first (forall as ~exists~). Throws ResourceLimit past
/// opts.max_nodes.
QfFormula eliminate_all(const Formula& f, const StructureSpec& s, const QeOptions& opts = {});

/// Truth of a sentence in s. Throws NotASentence if f has free variables.
bool decide(const Formula& sentence, const StructureSpec& s, const QeOptions& opts = {});

/// Truth of a quantifier-free formula under an assignment.
bool evaluate(const QfFormula& f, const Assignment& assignment);

/// An element of the domain satisfying f (exactly one free variable), or
/// nullopt when none exists.
std::optional<Rational> sample_point(const Formula& f, const StructureSpec& s, const QeOptions& opts = {});

}  // namespace oag
