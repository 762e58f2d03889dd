#include "oag/induction_lab.hpp"

#include <chrono>

#include "oag/error.hpp"
#include "oag/schema.hpp"

namespace oag {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// Hands out variable names unused by anything registered so far.
class NameSource {
 public:
  explicit NameSource(std::set<Var> used) : used_(std::move(used)) {}
  void reserve(const Formula& f) { reserve(all_vars(f)); }
  void reserve(const std::set<Var>& vars) { used_.insert(vars.begin(), vars.end()); }
  Var operator()(const std::string& base) {
    Var v = fresh_var(base, used_);
    used_.insert(v);
    return v;
  }

 private:
  std::set<Var> used_;
};

LinearTerm term(const Var& v) { return LinearTerm::variable(v); }

/// lo <= x & x <= hi
Formula within(const LinearTerm& lo, const LinearTerm& x, const LinearTerm& hi) {
  return Formula::conj({le(lo, x), le(x, hi)});
}

Formula strip_foralls(Formula f, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (f.kind() != FormulaKind::Forall) throw Error(ErrorKind::Usage, "instance is not closed over its parameters");
    f = f.body();
  }
  return f;
}

Formula exists_all(const std::vector<Var>& vars, Formula f) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) f = Formula::exists(*it, f);
  return f;
}

/// Decides a closed instance and, on failure, samples falsifying parameters
/// one at a time, re-checking the tuple against the quantifier-free matrix.
void decide_instance(DciReport& report, const StructureSpec& s, const LabOptions& opts) {
  report.structure = s.id();
  report.verdict = decide(report.instance, s, opts.qe);
  if (report.verdict || report.params.empty()) return;

  Formula falsify = Formula::negation(strip_foralls(report.instance, report.params.size()));
  Assignment chosen;
  for (std::size_t i = 0; i < report.params.size(); ++i) {
    std::vector<Var> rest(report.params.begin() + static_cast<std::ptrdiff_t>(i) + 1, report.params.end());
    auto value = sample_point(exists_all(rest, falsify), s, opts.qe);
    if (!value) throw Error(ErrorKind::Usage, "no falsifying value for parameter " + report.params[i].name());
    chosen[report.params[i]] = *value;
    falsify = substitute(falsify, report.params[i], LinearTerm(Scalar(*value)));
  }
  QfFormula matrix = eliminate_all(strip_foralls(report.instance, report.params.size()), s, opts.qe);
  if (evaluate(matrix, chosen)) throw Error(ErrorKind::Usage, "sampled parameters do not falsify the instance");
  report.counterexample_params = std::move(chosen);
}

std::vector<Var> parameters_of(const Formula& phi, const Var& v) {
  std::vector<Var> params;
  for (const auto& w : free_vars_ordered(phi))
    if (w != v) params.push_back(w);
  return params;
}

bool record(FamilyAudit& audit, std::string name, Formula sentence, const StructureSpec& s, const LabOptions& opts) {
  bool holds = decide(sentence, s, opts.qe);
  audit.properties.push_back({std::move(name), std::move(sentence), holds});
  return holds;
}

}  // namespace

DciReport check_dci(const Formula& phi, const Var& v, const StructureSpec& s, const LabOptions& opts) {
  auto start = Clock::now();
  DciReport report;
  report.params = parameters_of(phi, v);
  report.instance = build_dci(phi, v, report.params, SchemaOptions{opts.force_schema});
  decide_instance(report, s, opts);
  report.timing_ms = elapsed_ms(start);
  return report;
}

DciReport check_bci(const Formula& phi, const Var& v, const Scalar& a, const Scalar& b, const StructureSpec& s,
                    const LabOptions& opts) {
  if (!(a < b)) throw Error(ErrorKind::DegenerateInterval, "interval [" + a.to_string() + ", " + b.to_string() + ") is empty");
  auto start = Clock::now();
  DciReport report;
  report.params = parameters_of(phi, v);
  report.instance = build_bci(phi, v, LinearTerm(a), LinearTerm(b), report.params, SchemaOptions{opts.force_schema});
  decide_instance(report, s, opts);
  report.timing_ms = elapsed_ms(start);
  return report;
}

CompletenessReport completeness_audit(const Formula& f, const StructureSpec& s, const LabOptions& opts) {
  auto start = Clock::now();
  auto free = free_vars_ordered(f);
  // A variable can cancel out of every atom (x < x), leaving a closed formula.
  if (free.size() > 1)
    throw Error(ErrorKind::Usage, "completeness audit needs one free variable, found " + std::to_string(free.size()));
  const Var x = free.empty() ? fresh_var("x", all_vars(f)) : free.front();

  CompletenessReport report;
  report.set = normalize(f, x, s, opts.qe);
  report.cut = cut_analysis(report.set, s);

  NameSource names(all_vars(f));
  Var z = names("z");
  Var z2 = names("z");
  auto bounded_by = [&](const Var& bound) { return Formula::forall(x, Formula::implies(f, le(term(x), term(bound)))); };
  report.lub_sentence =
      Formula::exists(z, Formula::conj({bounded_by(z), Formula::forall(z2, Formula::implies(bounded_by(z2),
                                                                                         le(term(z), term(z2))))}));
  report.lub_exists = decide(report.lub_sentence, s, opts.qe);
  switch (report.cut.kind) {
    case CutReport::Kind::ProperCutWithLub: report.consistent = report.lub_exists; break;
    case CutReport::Kind::Gap:
    case CutReport::Kind::WholeGroup: report.consistent = !report.lub_exists; break;
    case CutReport::Kind::NotACut: report.consistent = true; break;
  }
  report.timing_ms = elapsed_ms(start);
  return report;
}

DefinableFamily::DefinableFamily(Formula f, Var param, Var point)
    : formula(std::move(f)), param_var(std::move(param)), point_var(std::move(point)) {
  if (param_var == point_var) throw Error(ErrorKind::Usage, "family parameter and point variables must differ");
  for (const auto& v : free_vars(formula))
    if (v != param_var && v != point_var)
      throw Error(ErrorKind::Usage, "family has stray free variable " + v.name());
}

Formula DefinableFamily::at(const LinearTerm& u, const LinearTerm& x) const {
  NameSource names(all_vars(formula));
  names.reserve(u.vars());
  names.reserve(x.vars());
  Var pu = names("$p");
  Var px = names("$q");
  Formula f = substitute(formula, param_var, term(pu));
  f = substitute(f, point_var, term(px));
  f = substitute(f, pu, u);
  return substitute(f, px, x);
}

bool FamilyAudit::all_hold() const {
  for (const auto& p : properties)
    if (!p.holds) return false;
  return true;
}

FamilyAudit family_audit(const DefinableFamily& fam, const OpenCoverRole& role, const StructureSpec& s,
                         const LabOptions& opts) {
  NameSource names(all_vars(fam.formula));
  Var a = names("a");
  Var x = names("x");
  Var e = names("e");
  Var y = names("y");
  FamilyAudit audit;

  Formula ball = Formula::conj({lt(term(x) - term(e), term(y)), lt(term(y), term(x) + term(e))});
  Formula open = Formula::forall(
      a, Formula::forall(
             x, Formula::implies(
                    fam.at(term(a), term(x)),
                    Formula::exists(e, Formula::conj({lt(0, term(e)),
                                                      Formula::forall(y, Formula::implies(ball, fam.at(term(a), term(y))))})))));
  audit.all_fibers_open = record(audit, "all_fibers_open", open, s, opts);

  Formula covers = Formula::forall(
      x, Formula::implies(within(role.a, term(x), role.b), Formula::exists(a, fam.at(term(a), term(x)))));
  audit.covers_interval = record(audit, "covers_interval", covers, s, opts);
  return audit;
}

FamilyAudit family_audit(const DefinableFamily& fam, const ExhaustionRole&, const StructureSpec& s,
                         const LabOptions& opts) {
  NameSource names(all_vars(fam.formula));
  Var t = names("t");
  Var t2 = names("t");
  Var x = names("x");
  Var y = names("y");
  Var e = names("e");
  Var lo = names("lo");
  Var hi = names("hi");
  FamilyAudit audit;

  Formula directed = Formula::forall(
      t, Formula::forall(t2, Formula::implies(lt(term(t), term(t2)),
                                              Formula::forall(x, Formula::implies(fam.at(term(t), term(x)),
                                                                                  fam.at(term(t2), term(x)))))));
  audit.directed = record(audit, "directed", directed, s, opts);

  Formula covers = Formula::forall(x, Formula::exists(t, fam.at(term(t), term(x))));
  audit.covers_group = record(audit, "covers_group", covers, s, opts);

  Formula near = Formula::conj({lt(term(x) - term(e), term(y)), lt(term(y), term(x) + term(e)), fam.at(term(t), term(y))});
  Formula discrete = Formula::forall(
      x, Formula::implies(fam.at(term(t), term(x)),
                          Formula::exists(e, Formula::conj({lt(0, term(e)),
                                                            Formula::forall(y, Formula::implies(near, eq(term(y), term(x))))}))));
  Formula closed = Formula::forall(
      x, Formula::implies(Formula::forall(e, Formula::implies(lt(0, term(e)), Formula::exists(y, near))),
                          fam.at(term(t), term(x))));
  Formula bounded = Formula::exists(
      lo, Formula::exists(hi, Formula::forall(x, Formula::implies(fam.at(term(t), term(x)),
                                                                  Formula::conj({lt(term(lo), term(x)),
                                                                                 lt(term(x), term(hi))})))));
  Formula pseudo_finite = Formula::forall(t, Formula::conj({discrete, closed, bounded}));
  audit.all_fibers_pseudo_finite = record(audit, "all_fibers_pseudo_finite", pseudo_finite, s, opts);
  return audit;
}

SubcoverOutcome extract_subcover(const DefinableFamily& fam, const Scalar& a, const Scalar& b, const StructureSpec& s,
                                 const LabOptions& opts) {
  if (!(a < b)) throw Error(ErrorKind::DegenerateInterval, "interval [" + a.to_string() + ", " + b.to_string() + "] is degenerate");
  auto start = Clock::now();
  SubcoverOutcome outcome;
  outcome.audit = family_audit(fam, OpenCoverRole{a, b}, s, opts);
  if (!outcome.audit.all_hold()) {
    outcome.timing_ms = elapsed_ms(start);
    return outcome;
  }

  NameSource names(all_vars(fam.formula));
  Var u = names("u");
  Var x = names("x");
  Var e = names("e");
  SubcoverCertificate cert{a, b, fam, {}, false, 0, {}, Formula::top()};

  // reach(u, e): the fiber of u contains [r, e).
  auto reach = [&](const Scalar& r, const LinearTerm& ut, const LinearTerm& et) {
    return Formula::forall(x, Formula::implies(Formula::conj({le(LinearTerm(r), term(x)), lt(term(x), et)}),
                                               fam.at(ut, term(x))));
  };
  auto pick_param = [&](const Scalar& r, const Rational& target) {
    auto value = sample_point(reach(r, term(u), LinearTerm(Scalar(target))), s, opts.qe);
    if (!value) throw Error(ErrorKind::InvalidCover, "no parameter reaches " + target.to_string());
    return *value;
  };

  Scalar r = a;
  while (true) {
    if (cert.params.size() >= opts.max_steps)
      throw Error(ErrorKind::ResourceLimit, "subcover sweep exceeded " + std::to_string(opts.max_steps) + " steps");
    Formula extension = Formula::conj({lt(LinearTerm(r), term(e)), Formula::exists(u, reach(r, term(u), term(e)))});
    DefinableSet1D reachable = normalize(extension, e, s, opts.qe);
    if (reachable.is_empty())
      throw Error(ErrorKind::InvalidCover, "sweep stalled at " + r.to_string() + ": no fiber extends past it");

    DefinableSet1D beyond = intersect(reachable, DefinableSet1D::open(Endpoint::finite(b), Endpoint::pos_inf()));
    if (!beyond.is_empty()) {
      cert.params.push_back(pick_param(r, *pick_element(beyond)));
      cert.reach.push_back(b);
      break;
    }

    // Best extension short of b: the supremum if attained, else a rational close below it.
    Rational target;
    const Component& last = reachable.components().back();
    if (const auto* p = std::get_if<Point>(&last)) {
      target = p->value.rat_part();
    } else {
      const auto& iv = std::get<OpenInterval>(last);
      const Scalar& sup = iv.hi.value();
      Scalar lower = iv.lo.is_finite() ? iv.lo.value() : r;
      target = rational_between(sup - (sup - lower) / Rational(1024), sup);
    }
    Rational chosen = pick_param(r, target);
    cert.params.push_back(chosen);

    DefinableSet1D fiber = normalize(fam.at(LinearTerm(Scalar(chosen)), term(x)), x, s, opts.qe);
    std::optional<Scalar> next;
    for (const auto& c : fiber.components()) {
      const auto* iv = std::get_if<OpenInterval>(&c);
      if (!iv || !(iv->lo < Endpoint::finite(r)) || !(Endpoint::finite(r) < iv->hi)) continue;
      next = iv->hi.is_finite() && iv->hi.value() < b ? iv->hi.value() : b;
    }
    if (!next || !(r < *next))
      throw Error(ErrorKind::InvalidCover, "fiber of " + chosen.to_string() + " makes no progress past " + r.to_string());
    r = *next;
    cert.reach.push_back(r);
  }

  cert.steps = cert.params.size();
  std::vector<Formula> fibers;
  for (const auto& p : cert.params) fibers.push_back(fam.at(LinearTerm(Scalar(p)), term(x)));
  cert.verification =
      Formula::forall(x, Formula::implies(within(a, term(x), b), Formula::disj(std::move(fibers))));
  cert.verified = decide(cert.verification, s, opts.qe);
  outcome.certificate = std::move(cert);
  outcome.timing_ms = elapsed_ms(start);
  return outcome;
}

CompactnessReport compactness_certificate(const DefinableFamily& fam, const DefinableFamily& exhaustion,
                                          const Scalar& a, const Scalar& b, const StructureSpec& s,
                                          const LabOptions& opts) {
  auto start = Clock::now();
  CompactnessReport report;
  report.subcover = extract_subcover(fam, a, b, s, opts);
  if (!report.subcover.certificate || !report.subcover.certificate->verified) {
    report.status = "rejected-cover";
    report.timing_ms = elapsed_ms(start);
    return report;
  }

  NameSource names(all_vars(fam.formula));
  names.reserve(exhaustion.formula);
  Var t = names("t");
  Var u = names("u");
  Var x = names("x");
  std::vector<Formula> members;
  for (const auto& p : report.subcover.certificate->params)
    members.push_back(exhaustion.at(term(t), LinearTerm(Scalar(p))));
  Formula selection = Formula::conj(std::move(members));
  report.selection_sentence = Formula::exists(t, selection);
  if (!decide(report.selection_sentence, s, opts.qe)) {
    report.status = "exhaustion-insufficient";
    report.timing_ms = elapsed_ms(start);
    return report;
  }

  report.t0 = pick_element(normalize(selection, t, s, opts.qe));
  LinearTerm t0{Scalar(*report.t0)};
  report.cover_sentence = Formula::forall(
      x, Formula::implies(within(a, term(x), b),
                          Formula::exists(u, Formula::conj({exhaustion.at(t0, term(u)), fam.at(term(u), term(x))}))));
  report.verified = decide(report.cover_sentence, s, opts.qe);
  report.status = report.verified ? "certified" : "exhaustion-insufficient";
  report.timing_ms = elapsed_ms(start);
  return report;
}

ContinuityReport uniform_continuity_check(const Formula& graph, const Var& x, const Var& y, const Scalar& a,
                                          const Scalar& b, const StructureSpec& s, const LabOptions& opts) {
  auto start = Clock::now();
  DefinableFamily g(graph, x, y);
  NameSource names(all_vars(graph));
  Var x1 = names("x");
  Var x2 = names("x");
  Var y1 = names("y");
  Var y2 = names("y");
  Var eps = names("eps");
  Var delta = names("delta");
  auto on = [&](const Var& v) { return within(a, term(v), b); };

  ContinuityReport report;
  report.functional_sentence = Formula::forall(
      x1, Formula::implies(on(x1), Formula::exists(y1, Formula::conj({g.at(term(x1), term(y1)),
                                                                      Formula::forall(y2, Formula::implies(
                                                                                              g.at(term(x1), term(y2)),
                                                                                              eq(term(y2), term(y1))))}))));
  if (!decide(report.functional_sentence, s, opts.qe))
    throw Error(ErrorKind::NotAFunction, "graph is not single-valued and total on [" + a.to_string() + ", " +
                                             b.to_string() + "]");

  Formula close = Formula::conj({lt(term(x1) - term(delta), term(x2)), lt(term(x2), term(x1) + term(delta))});
  Formula values_close = Formula::forall(
      y1, Formula::forall(y2, Formula::implies(Formula::conj({g.at(term(x1), term(y1)), g.at(term(x2), term(y2))}),
                                               Formula::conj({lt(term(y1) - term(eps), term(y2)),
                                                              lt(term(y2), term(y1) + term(eps))}))));
  auto for_eps_some_delta = [&](const Formula& inner) {
    return Formula::forall(
        eps, Formula::implies(lt(0, term(eps)), Formula::exists(delta, Formula::conj({lt(0, term(delta)), inner}))));
  };
  report.continuity_sentence = Formula::forall(
      x1, Formula::implies(on(x1), for_eps_some_delta(Formula::forall(
                                       x2, Formula::implies(Formula::conj({on(x2), close}), values_close)))));
  report.uniform_sentence = for_eps_some_delta(
      Formula::forall(x1, Formula::forall(x2, Formula::implies(Formula::conj({on(x1), on(x2), close}), values_close))));

  report.continuous = decide(report.continuity_sentence, s, opts.qe);
  report.uniformly_continuous = decide(report.uniform_sentence, s, opts.qe);
  report.implication = !report.continuous || report.uniformly_continuous;
  report.timing_ms = elapsed_ms(start);
  return report;
}

Formula downward_closure(const Formula& f, const Var& x, const Var& v) {
  std::set<Var> used = all_vars(f);
  used.insert(x);
  used.insert(v);
  Var u = fresh_var("u", used);
  return Formula::disj({Formula::exists(u, Formula::conj({substitute(f, x, term(u)), lt(term(v), term(u))})),
                        substitute(f, x, term(v))});
}

}  // namespace oag
