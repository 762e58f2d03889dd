#pragma once

#include <vector>

#include "oag/formula.hpp"

namespace oag {

/// forall v (v < bound -> body)
Formula forall_below(const Var& v, const LinearTerm& bound, const Formula& body);
/// exists v (bound < v & body)
Formula exists_above(const Var& v, const LinearTerm& bound, const Formula& body);

struct SchemaOptions {
  /// Emit the instance even when v is not free in phi.
  bool force = false;
};

/// Definable continuous induction instance for phi(v, params):
///
///   forall params ((exists s forall v<s phi(v) &
///                   forall v (forall s<v phi(s) -> exists u>v forall s<u phi(s)))
///                  -> forall v phi(v))
///
/// s and u are fresh `$s<k>` / `$u<k>` names. Throws IllFormedSchema when v is
/// not free in phi (unless forced) or params differ from the other free variables.
Formula build_dci(const Formula& phi, const Var& v, const std::vector<Var>& params, SchemaOptions opts = {});

/// Bounded instance on [a, b): with R(x) = forall v (a <= v & v < x -> phi),
///
///   forall params (a < b -> ((exists x (a < x & R(x)) &
///                             forall x (a < x & R(x) -> exists y (x < y & R(y))))
///                            -> forall v (a <= v & v < b -> phi)))
///
/// An endpoint given as a bare variable that is not a parameter is universally
/// quantified (after the parameters); any other term is substituted as is.
Formula build_bci(const Formula& phi, const Var& v, const LinearTerm& a, const LinearTerm& b,
                  const std::vector<Var>& params, SchemaOptions opts = {});

}  // namespace oag
