#include "random_formula.hpp"

namespace oag::testing {

FormulaGenerator::FormulaGenerator(std::uint64_t seed, GeneratorConfig config)
    : rng_(seed), config_(std::move(config)) {}

int FormulaGenerator::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

Rational FormulaGenerator::rational() {
  int den = uniform(1, 4);
  return Rational(uniform(-config_.max_coeff * den, config_.max_coeff * den), den);
}

LinearTerm FormulaGenerator::term(const std::vector<Var>& scope) {
  LinearTerm t;
  int n = uniform(1, 3);
  for (int i = 0; i < n && !scope.empty(); ++i) {
    const Var& v = scope[static_cast<std::size_t>(uniform(0, static_cast<int>(scope.size()) - 1))];
    int c = uniform(-config_.max_coeff, config_.max_coeff);
    if (c == 0) c = 1;
    t += LinearTerm::variable(v, c);
  }
  if (uniform(0, 2) > 0) t += LinearTerm(Scalar(Rational(uniform(-config_.max_coeff, config_.max_coeff))));
  if (config_.radicand != 0 && uniform(0, 3) == 0)
    t += LinearTerm(Scalar::quad(0, Rational(uniform(-2, 2) == 0 ? 1 : uniform(-2, 2), uniform(1, 2)), config_.radicand));
  return t;
}

Formula FormulaGenerator::atom(const std::vector<Var>& scope) {
  if (!config_.predicates.empty() && uniform(0, 4) == 0) {
    const auto& p = config_.predicates[static_cast<std::size_t>(uniform(0, static_cast<int>(config_.predicates.size()) - 1))];
    return pred(p, term(scope));
  }
  LinearTerm s = term(scope);
  LinearTerm t = uniform(0, 2) == 0 ? term(scope) : LinearTerm();
  switch (uniform(0, 5)) {
    case 0:
    case 1: return lt(s, t);
    case 2: return eq(s, t);
    case 3: return le(s, t);
    case 4: return lt(t, s);
    default: return Formula::negation(eq(s, t));
  }
}

Formula FormulaGenerator::node(int depth, int quantifiers_left, std::vector<Var>& scope) {
  int choice = depth <= 0 ? 0 : uniform(0, 9);
  if (choice <= 2) return atom(scope);
  if (choice <= 4 && quantifiers_left > 0) {
    Var v("q" + std::to_string(++next_bound_));
    scope.push_back(v);
    Formula body = node(depth - 1, quantifiers_left - 1, scope);
    scope.pop_back();
    return uniform(0, 1) ? Formula::exists(v, body) : Formula::forall(v, body);
  }
  // Quantifiers spent on one branch are unavailable to its sibling.
  int left_q = quantifiers_left > 0 ? uniform(0, quantifiers_left) : 0;
  Formula a = node(depth - 1, left_q, scope);
  if (choice == 5) return Formula::negation(a);
  Formula b = node(depth - 1, quantifiers_left - left_q, scope);
  switch (choice) {
    case 6:
    case 7: return Formula::conj({a, b});
    case 8: return Formula::disj({a, b});
    default: return Formula::implies(a, b);
  }
}

Formula FormulaGenerator::formula() {
  // Mostly quantified formulas: draw a target quantifier count and retry.
  int target = uniform(0, 4) == 0 ? 0 : uniform(1, config_.max_quantifiers);
  Formula f = draft();
  for (int tries = 0; tries < 64 && static_cast<int>(bound_vars(f).size()) != target; ++tries) f = draft();
  return f;
}

Formula FormulaGenerator::draft() {
  next_bound_ = 0;
  std::vector<Var> scope;
  int n_free = uniform(0, static_cast<int>(config_.free_vars.size()));
  for (int i = 0; i < n_free; ++i) scope.emplace_back(config_.free_vars[static_cast<std::size_t>(i)]);
  if (scope.empty()) {
    // A sentence: open with a quantifier so atoms have something to mention.
    Var v("q" + std::to_string(++next_bound_));
    scope.push_back(v);
    Formula body = node(config_.max_depth - 1, config_.max_quantifiers - 1, scope);
    return uniform(0, 1) ? Formula::exists(v, body) : Formula::forall(v, body);
  }
  return node(config_.max_depth, config_.max_quantifiers, scope);
}

}  // namespace oag::testing
