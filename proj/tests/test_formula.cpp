#include <gtest/gtest.h>

#include "oag/error.hpp"
#include "oag/syntax.hpp"
#include "oracle.hpp"
#include "random_formula.hpp"

namespace oag {
namespace {

Formula p(const std::string& s) { return parse_formula(s); }

TEST(Formula, SubstituteFreeOccurrence) {
  Formula out = substitute(p("v + w < 0"), Var("v"), parse_term("t"));
  EXPECT_EQ(out, p("t + w < 0"));
}

TEST(Formula, SubstituteLeavesBoundOccurrences) {
  Formula f = p("exists v (v < w)");
  EXPECT_EQ(substitute(f, Var("v"), parse_term("t")), f);
}

TEST(Formula, SubstituteAvoidsCapture) {
  Formula out = substitute(p("exists u (u < v)"), Var("v"), parse_term("u + 1"));
  ASSERT_EQ(out.kind(), FormulaKind::Exists);
  EXPECT_NE(out.var(), Var("u"));
  EXPECT_TRUE(alpha_equivalent(out, p("exists s (s < u + 1)"))) << print_formula(out);
}

TEST(Formula, SubstitutionFreeVariableLaw) {
  testing::FormulaGenerator gen(5);
  Var x("x");
  for (int i = 0; i < 300; ++i) {
    Formula f = gen.formula();
    // Variables of t are new to f, so no coefficient can cancel.
    LinearTerm t = parse_term(i % 2 ? "2*q - 3*r + 1/3" : "q");
    std::set<Var> expect = free_vars(f);
    if (expect.erase(x)) {
      auto tv = t.vars();
      expect.insert(tv.begin(), tv.end());
    }
    Formula g = substitute(f, x, t);
    std::set<Var> got = free_vars(g);
    EXPECT_EQ(got, expect) << print_formula(f);
    std::vector<Var> cached(got.begin(), got.end());
    EXPECT_EQ(g.free(), cached);
  }
}

TEST(Formula, NnfShapes) {
  EXPECT_TRUE(alpha_equivalent(to_nnf(p("~(a < 0 & ~(b < 0))")), to_nnf(p("~(a < 0) | b < 0"))));
  Formula n = to_nnf(p("~(x < 0)"));
  EXPECT_TRUE(alpha_equivalent(n, p("0 < x | x = 0"))) << print_formula(n);
  Formula q = to_nnf(p("~exists v (v < w)"));
  ASSERT_EQ(q.kind(), FormulaKind::Forall);
  EXPECT_EQ(q.var(), Var("v"));
}

bool nnf_shaped(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Implies: return false;
    case FormulaKind::Not: return f.child().kind() == FormulaKind::Atom && f.child().atom().kind() == AtomKind::Pred;
    case FormulaKind::Atom:
    case FormulaKind::True:
    case FormulaKind::False: return true;
    default:
      for (const auto& c : f.children())
        if (!nnf_shaped(c)) return false;
      return true;
  }
}

TEST(Formula, NnfPreservesMeaning) {
  testing::FormulaGenerator gen(31);
  for (int i = 0; i < 200; ++i) {
    Formula f = gen.formula();
    Formula n = to_nnf(Formula::negation(f));
    ASSERT_TRUE(nnf_shaped(n)) << print_formula(n);
    testing::SemanticOracle of(f), on(n);
    for (int k = 0; k < 10; ++k) {
      Assignment a;
      for (const auto& v : free_vars(f)) a[v] = Scalar(gen.rational());
      ASSERT_NE(of.holds(a), on.holds(a)) << print_formula(f);
    }
  }
}

TEST(Formula, AlphaEquivalence) {
  EXPECT_TRUE(alpha_equivalent(p("exists x (x < y)"), p("exists z (z < y)")));
  EXPECT_FALSE(alpha_equivalent(p("exists x (x < y)"), p("exists y (y < y)")));
  EXPECT_FALSE(alpha_equivalent(p("exists x (x < y)"), p("exists x (x < z)")));
  EXPECT_TRUE(alpha_equivalent(p("forall a exists b (a < b)"), p("forall b exists a (b < a)")));
}

TEST(Formula, FreshVar) {
  std::set<Var> avoid{Var("x"), Var("x_1")};
  EXPECT_EQ(fresh_var("x", avoid), Var("x_2"));
  EXPECT_EQ(fresh_var("y", avoid), Var("y"));
}

TEST(Formula, CachedSizeMatchesTraversal) {
  testing::FormulaGenerator gen(8);
  std::function<std::size_t(const Formula&)> count = [&](const Formula& f) {
    std::size_t n = 1;
    for (const auto& c : f.children()) n += count(c);
    return n;
  };
  for (int i = 0; i < 100; ++i) {
    Formula f = gen.formula();
    EXPECT_EQ(formula_size(f), count(f));
  }
}

TEST(Formula, EvaluateRequiresAssignment) {
  try {
    parse_term("x + y").evaluate({{Var("x"), Scalar(1)}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingAssignment);
  }
}

}  // namespace
}  // namespace oag
