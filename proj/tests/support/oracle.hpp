#pragma once

#include <vector>

#include "oag/definable_set.hpp"
#include "oag/formula.hpp"

namespace oag::testing {

/// Semantic evaluator for predicate-free formulas over Q, independent of the
/// elimination engine. Each quantifier is decided by evaluating its body at
/// one rational test point per cell of a linear projection set: the body's
/// linear forms, closed under "differences of roots" as quantifiers nest.
class SemanticOracle {
 public:
  explicit SemanticOracle(const Formula& f);

  /// Truth under an assignment of every free variable.
  bool holds(const Assignment& a) const;

  /// {v : f} given the other free variables; f may have v as its only free
  /// variable, in which case `others` is empty.
  DefinableSet1D set_of(const Var& v, const Assignment& others) const;

 private:
  struct Node {
    FormulaKind kind;
    Atom atom = Atom::less_than_zero(LinearTerm());
    std::vector<int> children;
    Var var;
    /// Linear forms whose sign pattern determines the truth of this node.
    std::vector<LinearTerm> forms;
  };
  static int build(const Formula& f, std::vector<Node>& nodes);
  bool eval(int node, Assignment& a) const;
  /// Cells of the line in v cut out by forms; membership per cell via test points.
  DefinableSet1D cells(const std::vector<LinearTerm>& forms, const Var& v, Assignment& a, int body) const;

  std::vector<Node> nodes_;
  int root_ = 0;
};

}  // namespace oag::testing
