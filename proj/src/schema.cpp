#include "oag/schema.hpp"

#include <algorithm>
#include <optional>

#include "oag/error.hpp"

namespace oag {

Formula forall_below(const Var& v, const LinearTerm& bound, const Formula& body) {
  return Formula::forall(v, Formula::implies(lt(LinearTerm::variable(v), bound), body));
}

Formula exists_above(const Var& v, const LinearTerm& bound, const Formula& body) {
  return Formula::exists(v, Formula::conj({lt(bound, LinearTerm::variable(v)), body}));
}

namespace {

void check_schema_inputs(const Formula& phi, const Var& v, const std::vector<Var>& params, SchemaOptions opts) {
  std::set<Var> free = free_vars(phi);
  if (!free.contains(v) && !opts.force)
    throw Error(ErrorKind::IllFormedSchema, "induction variable " + v.name() + " is not free in the formula");
  free.erase(v);
  std::set<Var> given(params.begin(), params.end());
  if (given.size() != params.size() || given.contains(v))
    throw Error(ErrorKind::IllFormedSchema, "parameter list has duplicates or contains the induction variable");
  if (given != free) throw Error(ErrorKind::IllFormedSchema, "parameters must be exactly the other free variables");
}

/// Smallest k >= 1 such that every `<prefix><k>` is unused.
int fresh_suffix(const std::set<Var>& used, std::initializer_list<const char*> prefixes) {
  for (int k = 1;; ++k) {
    bool clash = std::any_of(prefixes.begin(), prefixes.end(),
                             [&](const char* p) { return used.contains(Var(p + std::to_string(k))); });
    if (!clash) return k;
  }
}

Formula close_over(const std::vector<Var>& vars, Formula f) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) f = Formula::forall(*it, f);
  return f;
}

std::optional<Var> bare_variable(const LinearTerm& t) {
  if (t.entries().size() != 1 || !t.constant().is_zero() || t.entries().front().second != Rational(1))
    return std::nullopt;
  return t.entries().front().first;
}

}  // namespace

Formula build_dci(const Formula& phi, const Var& v, const std::vector<Var>& params, SchemaOptions opts) {
  check_schema_inputs(phi, v, params, opts);
  std::set<Var> used = all_vars(phi);
  used.insert(v);
  used.insert(params.begin(), params.end());
  int k = fresh_suffix(used, {"$s", "$u"});
  Var s("$s" + std::to_string(k));
  Var u("$u" + std::to_string(k));
  LinearTerm vt = LinearTerm::variable(v);
  LinearTerm st = LinearTerm::variable(s);
  LinearTerm ut = LinearTerm::variable(u);
  Formula phi_s = substitute(phi, v, st);

  Formula initial = Formula::exists(s, forall_below(v, st, phi));
  Formula step = Formula::forall(v, Formula::implies(forall_below(s, vt, phi_s),
                                                     exists_above(u, vt, forall_below(s, ut, phi_s))));
  Formula conclusion = Formula::forall(v, phi);
  return close_over(params, Formula::implies(Formula::conj({initial, step}), conclusion));
}

Formula build_bci(const Formula& phi, const Var& v, const LinearTerm& a, const LinearTerm& b,
                  const std::vector<Var>& params, SchemaOptions opts) {
  check_schema_inputs(phi, v, params, opts);
  if (a.mentions(v) || b.mentions(v))
    throw Error(ErrorKind::IllFormedSchema, "interval endpoints may not mention the induction variable");

  std::set<Var> used = all_vars(phi);
  used.insert(v);
  used.insert(params.begin(), params.end());
  for (const auto& x : a.vars()) used.insert(x);
  for (const auto& x : b.vars()) used.insert(x);

  std::vector<Var> outer = params;
  std::set<Var> param_set(params.begin(), params.end());
  for (const LinearTerm* end : {&a, &b}) {
    auto bare = bare_variable(*end);
    if (bare && !param_set.contains(*bare) && std::find(outer.begin(), outer.end(), *bare) == outer.end())
      outer.push_back(*bare);
  }

  int k = fresh_suffix(used, {"$x", "$y"});
  Var x("$x" + std::to_string(k));
  Var y("$y" + std::to_string(k));
  LinearTerm vt = LinearTerm::variable(v);
  LinearTerm xt = LinearTerm::variable(x);
  LinearTerm yt = LinearTerm::variable(y);

  auto segment = [&](const LinearTerm& upper) {
    return Formula::forall(v, Formula::implies(Formula::conj({le(a, vt), lt(vt, upper)}), phi));
  };
  Formula start = Formula::conj({lt(a, xt), segment(xt)});
  Formula initial = Formula::exists(x, start);
  Formula step = Formula::forall(x, Formula::implies(start, exists_above(y, xt, segment(yt))));
  Formula conclusion = segment(b);
  Formula instance = Formula::implies(lt(a, b), Formula::implies(Formula::conj({initial, step}), conclusion));
  return close_over(outer, instance);
}

}  // namespace oag
