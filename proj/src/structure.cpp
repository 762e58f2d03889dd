#include "oag/structure.hpp"

#include <fstream>
#include <sstream>

#include "oag/error.hpp"
#include "oag/syntax.hpp"

namespace oag {

StructureSpec StructureSpec::discrete(int n, const std::string& name) {
  StructureSpec s("Q" + std::to_string(n));
  s.add_predicate(name, DiscreteRange{n});
  return s;
}

StructureSpec StructureSpec::cut(const Scalar& value, const std::string& name) {
  StructureSpec s("Q-cut-" + value.to_string());
  s.set_radicand(value.radicand());
  s.add_predicate(name, CutBelow{value});
  return s;
}

void StructureSpec::set_radicand(int d) {
  if (d != 0 && !is_valid_radicand(d))
    throw Error(ErrorKind::Structure, "radicand " + std::to_string(d) + " is not square-free in [2, 97]");
  for (const auto& [name, sem] : preds_)
    if (auto* cut = std::get_if<CutBelow>(&sem); cut && cut->value.radicand() != d)
      throw Error(ErrorKind::Structure, "radicand conflicts with cut predicate " + name);
  radicand_ = d;
}

void StructureSpec::set_discrete_cap(int cap) {
  if (cap <= 0) throw Error(ErrorKind::Structure, "discrete-range cap must be positive");
  discrete_cap_ = cap;
}

void StructureSpec::add_predicate(const std::string& name, PredSemantics semantics) {
  if (name.empty()) throw Error(ErrorKind::Structure, "empty predicate name");
  if (preds_.contains(name)) throw Error(ErrorKind::Structure, "predicate " + name + " declared twice");
  if (auto* range = std::get_if<DiscreteRange>(&semantics); range && range->n < 0)
    throw Error(ErrorKind::Structure, "range predicate " + name + " needs n >= 0");
  if (auto* cut = std::get_if<CutBelow>(&semantics)) {
    if (cut->value.is_rational())
      throw Error(ErrorKind::Structure, "cut predicate " + name + " needs an irrational value");
    if (radicand_ == 0) radicand_ = cut->value.radicand();
    if (cut->value.radicand() != radicand_)
      throw Error(ErrorKind::Structure, "cut predicate " + name + " does not match the structure radicand");
  }
  preds_.emplace(name, std::move(semantics));
}

Formula StructureSpec::expand_pred(const std::string& name, const LinearTerm& t) const {
  auto it = preds_.find(name);
  if (it == preds_.end())
    throw Error(ErrorKind::UnknownPredicate, "predicate " + name + " is not registered in structure " + id_);
  if (auto* range = std::get_if<DiscreteRange>(&it->second)) {
    if (range->n > discrete_cap_)
      throw Error(ErrorKind::ResourceLimit, "range predicate " + name + " exceeds the cap of " +
                                                std::to_string(discrete_cap_));
    std::vector<Formula> points;
    for (int k = 0; k <= range->n; ++k) points.push_back(eq(t, LinearTerm(k)));
    return Formula::disj(std::move(points));
  }
  const auto& cut = std::get<CutBelow>(it->second);
  return lt(t, LinearTerm(cut.value));
}

std::string StructureSpec::describe() const {
  std::ostringstream os;
  os << "id = " << id_ << "\ndomain = Q\n";
  if (radicand_) os << "radicand = " << radicand_ << "\n";
  if (discrete_cap_ != kDefaultDiscreteCap) os << "cap = " << discrete_cap_ << "\n";
  for (const auto& [name, sem] : preds_) {
    if (auto* range = std::get_if<DiscreteRange>(&sem)) os << "pred " << name << " : range " << range->n << "\n";
    else os << "pred " << name << " : cut " << std::get<CutBelow>(sem).value.to_string() << "\n";
  }
  return os.str();
}

namespace {

void check_radicand(const LinearTerm& t, const StructureSpec& s) {
  const Scalar& k = t.constant();
  if (!k.is_rational() && k.radicand() != s.radicand())
    throw Error(ErrorKind::DomainMismatch, "constant " + k.to_string() + " uses sqrt(" + std::to_string(k.radicand()) +
                                               ") but structure " + s.id() + " does not license it");
}

}  // namespace

Formula expand_predicates(const Formula& f, const StructureSpec& s) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False: return f;
    case FormulaKind::Atom:
      check_radicand(f.atom().term(), s);
      if (f.atom().kind() != AtomKind::Pred) return f;
      return s.expand_pred(f.atom().pred_name(), f.atom().term());
    case FormulaKind::Not: return Formula::negation(expand_predicates(f.child(), s));
    case FormulaKind::Implies:
      return Formula::implies(expand_predicates(f.child(0), s), expand_predicates(f.child(1), s));
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> cs;
      for (const auto& c : f.children()) cs.push_back(expand_predicates(c, s));
      return f.kind() == FormulaKind::And ? Formula::conj(std::move(cs)) : Formula::disj(std::move(cs));
    }
    case FormulaKind::Exists: return Formula::exists(f.var(), expand_predicates(f.body(), s));
    case FormulaKind::Forall: return Formula::forall(f.var(), expand_predicates(f.body(), s));
  }
  return f;
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

StructureSpec parse_structure(std::string_view text, const std::string& default_id) {
  StructureSpec spec(default_id);
  int declared_radicand = -1;
  std::istringstream in{std::string(text)};
  std::string raw;
  for (int line_no = 1; std::getline(in, raw); ++line_no) {
    auto fail = [&](const std::string& msg) {
      throw Error(ErrorKind::Structure, "line " + std::to_string(line_no) + ": " + msg);
    };
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.rfind("pred ", 0) == 0) {
      auto colon = line.find(':');
      if (colon == std::string::npos) fail("expected 'pred NAME : range N' or 'pred NAME : cut VALUE'");
      std::string name = trim(std::string_view(line).substr(5, colon - 5));
      std::istringstream rest(line.substr(colon + 1));
      std::string kind;
      rest >> kind;
      std::string arg;
      std::getline(rest, arg);
      arg = trim(arg);
      try {
        if (kind == "range") {
          std::size_t used = 0;
          int n = std::stoi(arg, &used);
          if (used != arg.size()) fail("range bound must be an integer");
          spec.add_predicate(name, DiscreteRange{n});
        } else if (kind == "cut") {
          spec.add_predicate(name, CutBelow{Scalar::parse(arg)});
        } else {
          fail("unknown predicate kind '" + kind + "'");
        }
      } catch (const std::invalid_argument&) {
        fail("malformed predicate argument '" + arg + "'");
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::Structure) throw;
        fail(e.what());
      }
      continue;
    }
    auto eq_pos = line.find('=');
    if (eq_pos == std::string::npos) fail("expected 'key = value'");
    std::string key = trim(std::string_view(line).substr(0, eq_pos));
    std::string value = trim(std::string_view(line).substr(eq_pos + 1));
    if (key == "id") {
      spec.set_id(value);
    } else if (key == "domain") {
      if (value != "Q") fail("only domain = Q is supported");
    } else if (key == "radicand") {
      try {
        declared_radicand = std::stoi(value);
      } catch (const std::exception&) {
        fail("radicand must be an integer");
      }
      spec.set_radicand(declared_radicand);
    } else if (key == "cap") {
      try {
        spec.set_discrete_cap(std::stoi(value));
      } catch (const std::invalid_argument&) {
        fail("cap must be an integer");
      }
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  return spec;
}

StructureSpec load_structure(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Structure, "cannot read structure file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_structure(buf.str(), path.stem().string());
}

}  // namespace oag
