#include "oag/checks.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "oag/error.hpp"
#include "oag/syntax.hpp"

namespace oag {

namespace {

using nlohmann::json;

class Options {
 public:
  explicit Options(const CheckRequest& r) : r_(r) {}

  std::optional<std::string> get(const std::string& key) const {
    auto it = r_.options.find(key);
    if (it == r_.options.end() || it->second.empty()) return std::nullopt;
    return it->second;
  }
  std::string require(const std::string& key) const {
    auto v = get(key);
    if (!v) throw Error(ErrorKind::Usage, r_.check + " needs option '" + key + "'");
    return *v;
  }
  Var var(const std::string& key, const std::string& fallback) const { return Var(get(key).value_or(fallback)); }
  Scalar scalar(const std::string& key, const std::string& fallback) const {
    return Scalar::parse(get(key).value_or(fallback));
  }
  Formula formula(std::size_t i) const {
    if (i >= r_.formulas.size())
      throw Error(ErrorKind::Usage, r_.check + " needs " + std::to_string(i + 1) + " formula argument(s)");
    return parse_formula(r_.formulas[i]);
  }

 private:
  const CheckRequest& r_;
};

/// The induction variable: the named option, else the only free variable.
Var subject_var(const Options& o, const Formula& f, const std::string& key) {
  if (auto v = o.get(key)) return Var(*v);
  auto free = free_vars_ordered(f);
  if (free.size() == 1) return free.front();
  throw Error(ErrorKind::Usage, "option '" + key + "' is required when the formula has " +
                                    std::to_string(free.size()) + " free variables");
}

json components_of(const DefinableSet1D& d) {
  json out = json::array();
  for (const auto& c : d.components()) out.push_back(DefinableSet1D::from_components({c}).to_string());
  return out;
}

json scalars(const std::vector<Rational>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(x.to_string());
  return out;
}

json properties_of(const FamilyAudit& audit) {
  json out = json::array();
  for (const auto& p : audit.properties)
    out.push_back({{"name", p.name}, {"holds", p.holds}, {"sentence", print_formula(p.sentence)}});
  return out;
}

json base_report(const std::string& check, const StructureSpec& s) {
  return json{{"check", check}, {"structure", s.id()}};
}

CheckResult finish(json report, std::string verdict, bool positive, double timing_ms, const RunSettings& settings) {
  report["verdict"] = verdict;
  report["timing_ms"] = settings.timing ? timing_ms : 0.0;
  report["seed"] = settings.seed;
  return CheckResult{std::move(report), std::move(verdict), positive ? 0 : 1};
}

CheckResult run_decide(const Options& o, const StructureSpec& s, const RunSettings& st) {
  Formula f = o.formula(0);
  auto start = std::chrono::steady_clock::now();
  bool v = decide(f, s, st.lab.qe);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  json r = base_report("decide", s);
  r["instance"] = print_formula(f);
  return finish(std::move(r), v ? "true" : "false", v, ms, st);
}

CheckResult dci_like(const std::string& check, const DciReport& d, const StructureSpec& s, const RunSettings& st) {
  json r = base_report(check, s);
  r["instance"] = print_formula(d.instance);
  if (d.counterexample_params) {
    json w = json::object();
    for (const auto& [v, x] : *d.counterexample_params) w[v.name()] = x.to_string();
    r["witness"] = w;
  }
  return finish(std::move(r), d.verdict ? "true" : "false", d.verdict, d.timing_ms, st);
}

CheckResult run_gap(const Options& o, const StructureSpec& s, const RunSettings& st) {
  Formula f = o.formula(0);
  CompletenessReport c = completeness_audit(f, s, st.lab);
  json r = base_report("gap", s);
  r["instance"] = print_formula(c.lub_sentence);
  r["components"] = components_of(c.set);
  if (c.cut.boundary) r["witness"] = c.cut.boundary->to_string();
  r["lub_exists"] = c.lub_exists;
  r["consistent"] = c.consistent;
  bool is_gap = c.cut.kind == CutReport::Kind::Gap;
  return finish(std::move(r), to_string(c.cut.kind), is_gap, c.timing_ms, st);
}

DefinableFamily family_from(const Options& o, std::size_t index, const std::string& param_key,
                            const std::string& point_key, const std::string& param_fallback,
                            const std::string& point_fallback) {
  return DefinableFamily(o.formula(index), o.var(param_key, param_fallback), o.var(point_key, point_fallback));
}

CheckResult run_subcover(const Options& o, const StructureSpec& s, const RunSettings& st) {
  DefinableFamily fam = family_from(o, 0, "param", "point", "a", "x");
  Scalar a = o.scalar("from", "0");
  Scalar b = o.scalar("to", "1");
  SubcoverOutcome out = extract_subcover(fam, a, b, s, st.lab);
  json r = base_report("subcover", s);
  r["audit"] = properties_of(out.audit);
  std::string verdict = "rejected";
  if (out.certificate) {
    const auto& c = *out.certificate;
    r["instance"] = print_formula(c.verification);
    r["params"] = scalars(c.params);
    r["steps"] = c.steps;
    json reach = json::array();
    for (const auto& x : c.reach) reach.push_back(x.to_string());
    r["reach"] = reach;
    verdict = c.verified ? "verified" : "unverified";
  } else {
    r["instance"] = out.audit.properties.empty() ? "" : print_formula(out.audit.properties.back().sentence);
  }
  return finish(std::move(r), verdict, verdict == "verified", out.timing_ms, st);
}

CheckResult run_compact(const Options& o, const StructureSpec& s, const RunSettings& st) {
  DefinableFamily fam = family_from(o, 0, "param", "point", "a", "x");
  std::string point = o.get("point").value_or("x");
  DefinableFamily exhaustion = family_from(o, 1, "exparam", "expoint", "t", point);
  CompactnessReport c =
      compactness_certificate(fam, exhaustion, o.scalar("from", "0"), o.scalar("to", "1"), s, st.lab);
  json r = base_report("compact", s);
  r["audit"] = properties_of(c.subcover.audit);
  if (c.subcover.certificate) {
    r["params"] = scalars(c.subcover.certificate->params);
    r["steps"] = c.subcover.certificate->steps;
  }
  r["instance"] = c.t0 ? print_formula(c.cover_sentence) : print_formula(c.selection_sentence);
  if (c.t0) r["witness"] = c.t0->to_string();
  return finish(std::move(r), c.status, c.status == "certified", c.timing_ms, st);
}

CheckResult run_ucont(const Options& o, const StructureSpec& s, const RunSettings& st) {
  Formula g = o.formula(0);
  ContinuityReport c = uniform_continuity_check(g, o.var("var", "x"), o.var("value", "y"), o.scalar("from", "0"),
                                                o.scalar("to", "1"), s, st.lab);
  json r = base_report("ucont", s);
  r["instance"] = print_formula(Formula::implies(c.continuity_sentence, c.uniform_sentence));
  r["continuous"] = c.continuous;
  r["uniformly_continuous"] = c.uniformly_continuous;
  return finish(std::move(r), c.implication ? "true" : "false", c.implication, c.timing_ms, st);
}

CheckResult run_audit(const Options& o, const StructureSpec& s, const RunSettings& st) {
  std::string role = o.get("role").value_or("cover");
  auto start = std::chrono::steady_clock::now();
  FamilyAudit audit;
  if (role == "cover") {
    DefinableFamily fam = family_from(o, 0, "param", "point", "a", "x");
    audit = family_audit(fam, OpenCoverRole{o.scalar("from", "0"), o.scalar("to", "1")}, s, st.lab);
  } else if (role == "exhaustion") {
    DefinableFamily fam = family_from(o, 0, "param", "point", "t", "x");
    audit = family_audit(fam, ExhaustionRole{}, s, st.lab);
  } else {
    throw Error(ErrorKind::Usage, "unknown audit role '" + role + "' (expected cover or exhaustion)");
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  json r = base_report("audit", s);
  r["instance"] = print_formula(o.formula(0));
  r["role"] = role;
  r["audit"] = properties_of(audit);
  for (const auto& p : audit.properties) r[p.name] = p.holds;
  bool ok = audit.all_hold();
  return finish(std::move(r), ok ? "pass" : "fail", ok, ms, st);
}

CheckResult run_set(const Options& o, const StructureSpec& s, const RunSettings& st) {
  Formula f = o.formula(0);
  auto start = std::chrono::steady_clock::now();
  Var x = subject_var(o, f, "var");
  DefinableSet1D d = normalize(f, x, s, st.lab.qe);
  PseudoFiniteReport pf = is_pseudo_finite(d);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  json r = base_report("set", s);
  r["instance"] = print_formula(f);
  r["components"] = components_of(d);
  r["discrete"] = pf.discrete;
  r["closed"] = pf.closed;
  r["bounded"] = pf.bounded;
  r["pseudo_finite"] = pf.verdict;
  r["finite_points"] = d.is_finite_points();
  return finish(std::move(r), d.to_string(), pf.verdict == d.is_finite_points(), ms, st);
}

}  // namespace

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{"decide", "dci", "bci", "gap", "subcover", "compact", "ucont", "audit", "set"};
  return names;
}

CheckResult run_check(const CheckRequest& request, const StructureSpec& s, const RunSettings& settings) {
  Options o(request);
  const std::string& c = request.check;
  if (c == "decide") return run_decide(o, s, settings);
  if (c == "dci" || c == "bci") {
    Formula f = o.formula(0);
    LabOptions lab = settings.lab;
    lab.force_schema = o.get("force").value_or("false") == "true";
    Var v = subject_var(o, f, "var");
    auto report = c == "dci" ? check_dci(f, v, s, lab)
                             : check_bci(f, v, o.scalar("from", "0"), o.scalar("to", "1"), s, lab);
    return dci_like(c, std::move(report), s, settings);
  }
  if (c == "gap") return run_gap(o, s, settings);
  if (c == "subcover") return run_subcover(o, s, settings);
  if (c == "compact") return run_compact(o, s, settings);
  if (c == "ucont") return run_ucont(o, s, settings);
  if (c == "audit") return run_audit(o, s, settings);
  if (c == "set") return run_set(o, s, settings);
  throw Error(ErrorKind::Usage, "unknown check '" + c + "'");
}

std::string render_text(const nlohmann::json& report) {
  static const std::vector<std::string> order{"check", "structure", "verdict", "instance", "witness", "components",
                                              "params", "steps"};
  std::ostringstream out;
  auto line = [&](const std::string& key, const json& v) {
    out << key << ": ";
    if (v.is_string())
      out << v.get<std::string>();
    else if (v.is_array() && !v.empty() && v.front().is_string()) {
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i].get<std::string>();
    } else if (v.is_array() && !v.empty() && v.front().is_object() && v.front().contains("holds")) {
      for (std::size_t i = 0; i < v.size(); ++i)
        out << (i ? ", " : "") << v[i]["name"].get<std::string>() << "=" << (v[i]["holds"].get<bool>() ? "yes" : "no");
    } else {
      out << v.dump();
    }
    out << "\n";
  };
  for (const auto& key : order)
    if (report.contains(key)) line(key, report[key]);
  for (const auto& [key, v] : report.items())
    if (std::find(order.begin(), order.end(), key) == order.end() && key != "timing_ms" && key != "seed")
      line(key, v);
  if (report.contains("timing_ms") && report["timing_ms"].get<double>() > 0) line("timing_ms", report["timing_ms"]);
  return out.str();
}

}  // namespace oag
