#include <sstream>

#include "oag/syntax.hpp"

namespace oag {
namespace {

struct Mono {
  std::string body;  // "x", "sqrt(2)", or "" for a bare rational
  Rational coeff;
  bool is_sqrt = false;
};

/// Splits t into monomials in print order: variables, rational constant, sqrt part.
std::vector<Mono> monomials(const LinearTerm& t) {
  std::vector<Mono> out;
  for (const auto& [v, c] : t.entries()) out.push_back({v.name(), c});
  const Scalar& k = t.constant();
  if (!k.rat_part().is_zero()) out.push_back({"", k.rat_part()});
  if (!k.is_rational()) out.push_back({"sqrt(" + std::to_string(k.radicand()) + ")", k.irr_part(), true});
  return out;
}

std::string render(const std::vector<Mono>& ms) {
  if (ms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const Mono& m = ms[i];
    bool neg = m.coeff.sign() < 0;
    if (i == 0) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    Rational mag = m.coeff.abs();
    if (m.body.empty()) {
      out += mag.to_string();
    } else if (mag == Rational(1) && !m.is_sqrt) {
      out += m.body;
    } else {
      out += mag.to_string() + "*" + m.body;
    }
  }
  return out;
}

enum Level { kQuant = 0, kImplies = 1, kOr = 2, kAnd = 3, kUnary = 4 };

Level level_of(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Exists:
    case FormulaKind::Forall: return kQuant;
    case FormulaKind::Implies: return kImplies;
    case FormulaKind::Or: return kOr;
    case FormulaKind::And: return kAnd;
    default: return kUnary;
  }
}

void print(std::ostream& os, const Formula& f, Level min_level) {
  if (level_of(f) < min_level) {
    os << '(';
    print(os, f, kQuant);
    os << ')';
    return;
  }
  switch (f.kind()) {
    case FormulaKind::True: os << "true"; return;
    case FormulaKind::False: os << "false"; return;
    case FormulaKind::Atom: os << print_atom(f.atom()); return;
    case FormulaKind::Not: {
      const Formula& c = f.child();
      bool wrap = c.kind() == FormulaKind::Atom && c.atom().kind() != AtomKind::Pred;
      os << '~';
      if (wrap) os << '(' << print_atom(c.atom()) << ')';
      else print(os, c, kUnary);
      return;
    }
    case FormulaKind::Implies:
      print(os, f.child(0), kOr);
      os << " -> ";
      print(os, f.child(1), kImplies);
      return;
    case FormulaKind::Or:
    case FormulaKind::And: {
      bool is_and = f.kind() == FormulaKind::And;
      const char* sep = is_and ? " & " : " | ";
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (i) os << sep;
        print(os, f.child(i), is_and ? kUnary : kAnd);
      }
      return;
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      os << (f.kind() == FormulaKind::Exists ? "exists " : "forall ") << f.var().name() << ' ';
      if (f.body().is_quantifier()) {
        print(os, f.body(), kQuant);
      } else {
        os << '(';
        print(os, f.body(), kQuant);
        os << ')';
      }
      return;
  }
}

}  // namespace

std::string print_term(const LinearTerm& t) { return render(monomials(t)); }

std::string print_atom(const Atom& a) {
  if (a.kind() == AtomKind::Pred) return a.pred_name() + "(" + print_term(a.term()) + ")";
  // Positive monomials on the left, negated negative ones on the right.
  std::vector<Mono> left;
  std::vector<Mono> right;
  for (auto& m : monomials(a.term())) {
    if (m.coeff.sign() > 0) {
      left.push_back(std::move(m));
    } else {
      m.coeff = -m.coeff;
      right.push_back(std::move(m));
    }
  }
  const char* rel = a.kind() == AtomKind::LessThanZero ? " < " : " = ";
  return render(left) + rel + render(right);
}

std::string print_formula(const Formula& f) {
  std::ostringstream os;
  print(os, f, kQuant);
  return os.str();
}

}  // namespace oag
