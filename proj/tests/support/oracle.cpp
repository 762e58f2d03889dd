#include "oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace oag::testing {

namespace {

/// Scaled so that the first coefficient is 1; constant terms carry no root.
std::optional<LinearTerm> canonical(const LinearTerm& t) {
  if (t.is_constant()) return std::nullopt;
  return t / t.entries().front().second;
}

void add_form(std::vector<LinearTerm>& forms, const LinearTerm& t) {
  auto c = canonical(t);
  if (!c) return;
  for (const auto& f : forms)
    if (f == *c) return;
  forms.push_back(*c);
}

/// Value of v where t vanishes, as a term in the other variables.
LinearTerm root(const LinearTerm& t, const Var& v) { return -t.without(v) / t.coeff(v); }

}  // namespace

SemanticOracle::SemanticOracle(const Formula& f) { root_ = build(f, nodes_); }

int SemanticOracle::build(const Formula& f, std::vector<Node>& nodes) {
  Node n{f.kind(), Atom::less_than_zero(LinearTerm()), {}, Var(), {}};
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False: break;
    case FormulaKind::Atom:
      if (f.atom().kind() == AtomKind::Pred) throw std::invalid_argument("oracle does not interpret predicates");
      n.atom = f.atom();
      add_form(n.forms, f.atom().term());
      break;
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      n.var = f.var();
      int body = build(f.body(), nodes);
      n.children.push_back(body);
      const auto& inner = nodes[static_cast<std::size_t>(body)].forms;
      std::vector<LinearTerm> with_v;
      for (const auto& g : inner) {
        if (g.mentions(n.var))
          with_v.push_back(root(g, n.var));
        else
          add_form(n.forms, g);
      }
      for (std::size_t i = 0; i < with_v.size(); ++i)
        for (std::size_t j = i + 1; j < with_v.size(); ++j) add_form(n.forms, with_v[i] - with_v[j]);
      break;
    }
    default:
      for (const auto& c : f.children()) {
        int id = build(c, nodes);
        n.children.push_back(id);
        for (const auto& g : nodes[static_cast<std::size_t>(id)].forms) add_form(n.forms, g);
      }
      break;
  }
  nodes.push_back(std::move(n));
  return static_cast<int>(nodes.size()) - 1;
}

DefinableSet1D SemanticOracle::cells(const std::vector<LinearTerm>& forms, const Var& v, Assignment& a,
                                     int body) const {
  std::vector<Scalar> roots;
  for (const auto& g : forms) {
    if (!g.mentions(v)) continue;
    roots.push_back(root(g, v).evaluate(a));
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

  auto truth_at = [&](const Rational& p) {
    a[v] = Scalar(p);
    return eval(body, a);
  };
  std::vector<bool> point_in;
  std::vector<bool> gap_in;
  for (std::size_t i = 0; i <= roots.size(); ++i) {
    Rational sample;
    if (roots.empty())
      sample = Rational(0);
    else if (i == 0)
      sample = roots.front().floor() - Rational(1);
    else if (i == roots.size())
      sample = roots.back().ceil() + Rational(1);
    else
      sample = rational_between(roots[i - 1], roots[i]);
    gap_in.push_back(truth_at(sample));
    if (i < roots.size()) point_in.push_back(roots[i].is_rational() && truth_at(roots[i].rat_part()));
  }
  a.erase(v);
  return DefinableSet1D::from_cells(roots, point_in, gap_in);
}

bool SemanticOracle::eval(int id, Assignment& a) const {
  const Node& n = nodes_[static_cast<std::size_t>(id)];
  switch (n.kind) {
    case FormulaKind::True: return true;
    case FormulaKind::False: return false;
    case FormulaKind::Atom: {
      int s = n.atom.term().evaluate(a).sign();
      return n.atom.kind() == AtomKind::LessThanZero ? s < 0 : s == 0;
    }
    case FormulaKind::Not: return !eval(n.children[0], a);
    case FormulaKind::And:
      for (int c : n.children)
        if (!eval(c, a)) return false;
      return true;
    case FormulaKind::Or:
      for (int c : n.children)
        if (eval(c, a)) return true;
      return false;
    case FormulaKind::Implies: return !eval(n.children[0], a) || eval(n.children[1], a);
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      // Shadowed outer values are restored after the inner sweep.
      std::optional<Scalar> saved;
      if (auto it = a.find(n.var); it != a.end()) saved = it->second;
      const auto& inner = nodes_[static_cast<std::size_t>(n.children[0])].forms;
      DefinableSet1D s = cells(inner, n.var, a, n.children[0]);
      if (saved) a[n.var] = *saved;
      return n.kind == FormulaKind::Exists ? !s.is_empty() : s.is_full();
    }
  }
  return false;
}

bool SemanticOracle::holds(const Assignment& a) const {
  Assignment copy = a;
  return eval(root_, copy);
}

DefinableSet1D SemanticOracle::set_of(const Var& v, const Assignment& others) const {
  Assignment copy = others;
  return cells(nodes_[static_cast<std::size_t>(root_)].forms, v, copy, root_);
}

}  // namespace oag::testing
