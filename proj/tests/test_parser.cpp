#include <gtest/gtest.h>

#include "oag/error.hpp"
#include "oag/syntax.hpp"
#include "random_formula.hpp"

namespace oag {
namespace {

Formula p(const std::string& s) { return parse_formula(s); }

TEST(Parser, TermNormalization) {
  Formula f = p("x + x < 3/2");
  ASSERT_EQ(f.kind(), FormulaKind::Atom);
  EXPECT_EQ(f.atom().kind(), AtomKind::LessThanZero);
  EXPECT_EQ(f.atom().term().coeff(Var("x")), Rational(2));
  EXPECT_EQ(f.atom().term().constant(), Scalar(Rational(-3, 2)));
}

TEST(Parser, QuantifierShorthands) {
  EXPECT_EQ(p("E x (0 < x & x < 1)"), p("exists x (0 < x & x < 1)"));
  EXPECT_EQ(p("A x (x = x)"), p("forall x (x = x)"));
  EXPECT_EQ(p("∀x ∃y (x < y)"), p("forall x exists y (x < y)"));
}

TEST(Parser, NestedSchemaShape) {
  Formula f = p("forall w ((exists s forall v (v < s -> P(v))) -> P(w))");
  ASSERT_EQ(f.kind(), FormulaKind::Forall);
  ASSERT_EQ(f.body().kind(), FormulaKind::Implies);
  EXPECT_EQ(f.body().child(0).kind(), FormulaKind::Exists);
  EXPECT_EQ(f.body().child(1).atom().kind(), AtomKind::Pred);
}

TEST(Parser, DerivedRelations) {
  EXPECT_EQ(p("x > y"), p("y < x"));
  EXPECT_EQ(p("x <= y"), p("x < y | x = y"));
  EXPECT_EQ(p("x != y"), p("~(x = y)"));
  EXPECT_EQ(p("x >= y"), p("y < x | y = x"));
}

TEST(Parser, Precedence) {
  EXPECT_EQ(p("a < 0 | b < 0 & c < 0"), p("a < 0 | (b < 0 & c < 0)"));
  EXPECT_EQ(p("a < 0 -> b < 0 -> c < 0"), p("a < 0 -> (b < 0 -> c < 0)"));
  EXPECT_EQ(p("~a < 0 & b < 0"), p("(~(a < 0)) & b < 0"));
}

TEST(Parser, PrintsConstants) {
  EXPECT_EQ(print_formula(Formula::top()), "true");
  EXPECT_EQ(print_formula(Formula::bottom()), "false");
}

TEST(Parser, RoundTripRandomFormulas) {
  testing::GeneratorConfig cfg;
  cfg.predicates = {"D", "C"};
  testing::FormulaGenerator gen(2024, cfg);
  testing::GeneratorConfig irr;
  irr.radicand = 3;
  testing::FormulaGenerator gen_irr(11, irr);
  for (int i = 0; i < 1200; ++i) {
    Formula f = i % 4 == 3 ? gen_irr.formula() : gen.formula();
    std::string text = print_formula(f);
    Formula back = parse_formula(text);
    ASSERT_TRUE(alpha_equivalent(f, back)) << text << "\n" << print_formula(back);
    ASSERT_EQ(print_formula(back), text);
  }
}

struct BadInput {
  std::string text;
  std::size_t start;
};

TEST(Parser, ErrorSpans) {
  std::vector<BadInput> cases{
      {"x < ", 4},          // missing right operand
      {"x < 1 & ", 8},      // dangling connective
      {"x @ y", 2},         // unknown character
      {"(x < 1", 6},        // unclosed parenthesis
      {"forall (x < 1)", 7},  // quantifier without variable
      {"x < 1 y", 6},       // trailing token
      {"1/0 < x", 0},       // zero denominator
  };
  for (const auto& c : cases) {
    try {
      parse_formula(c.text);
      ADD_FAILURE() << "accepted: " << c.text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.span().start, c.start) << c.text << ": " << e.what();
      EXPECT_GE(e.span().end, e.span().start);
      EXPECT_EQ(e.kind(), ErrorKind::Parse);
    }
  }
}

TEST(Parser, ErrorLineAndColumn) {
  try {
    parse_formula("x < 1 &\n  y <");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.span().line, 2u);
    EXPECT_EQ(e.span().column, 6u);
  }
}

TEST(Parser, Comments) { EXPECT_EQ(p("x < 1 # upper bound\n & 0 < x"), p("x < 1 & 0 < x")); }

}  // namespace
}  // namespace oag
