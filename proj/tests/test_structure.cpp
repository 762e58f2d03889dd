#include <gtest/gtest.h>

#include "oag/error.hpp"
#include "oag/qe.hpp"
#include "oag/schema.hpp"
#include "oag/structure.hpp"
#include "oag/syntax.hpp"
#include "oracle.hpp"

namespace oag {
namespace {

Formula p(const std::string& s) { return parse_formula(s); }

TEST(Structure, DiscreteExpansionIsAFiniteDisjunction) {
  StructureSpec q3 = StructureSpec::discrete(3);
  Formula e = expand_predicates(p("D(x)"), q3);
  EXPECT_FALSE(has_predicates(e));
  for (int k = -2; k <= 5; ++k) {
    bool member = 0 <= k && k <= 3;
    EXPECT_EQ(evaluate(QfFormula(e), {{Var("x"), Scalar(k)}}), member) << k;
  }
  EXPECT_FALSE(evaluate(QfFormula(e), {{Var("x"), Scalar(Rational(1, 2))}}));
}

TEST(Structure, DiscreteRangeOfZeroIsASingleton) {
  StructureSpec q0 = StructureSpec::discrete(0);
  EXPECT_TRUE(decide(p("forall x (D(x) -> x = 0) & D(0)"), q0));
}

TEST(Structure, CutExpansion) {
  StructureSpec s = StructureSpec::cut(Scalar::sqrt(2));
  EXPECT_EQ(s.radicand(), 2);
  Formula e = expand_predicates(p("C(2*x)"), s);
  EXPECT_TRUE(evaluate(QfFormula(e), {{Var("x"), Scalar(Rational(7, 10))}}));
  EXPECT_FALSE(evaluate(QfFormula(e), {{Var("x"), Scalar(Rational(71, 100))}}));
}

TEST(Structure, UnknownPredicate) {
  try {
    expand_predicates(p("P(x)"), StructureSpec::rationals());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownPredicate);
  }
}

TEST(Structure, RadicandMismatch) {
  StructureSpec s = StructureSpec::cut(Scalar::sqrt(2));
  EXPECT_THROW(expand_predicates(p("x < sqrt(3)"), s), Error);
  EXPECT_THROW(expand_predicates(p("x < sqrt(2)"), StructureSpec::rationals()), Error);
}

TEST(Structure, DiscreteCap) {
  StructureSpec s;
  s.set_discrete_cap(8);
  s.add_predicate("D", DiscreteRange{8});
  s.add_predicate("E", DiscreteRange{9});
  EXPECT_NO_THROW(expand_predicates(parse_formula("D(x)"), s));
  try {
    expand_predicates(parse_formula("E(x)"), s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ResourceLimit);
  }
}

TEST(Structure, CutValueMustBeIrrational) {
  EXPECT_THROW(StructureSpec::cut(Scalar(Rational(1, 2))), Error);
}

TEST(Structure, FileRoundTrip) {
  StructureSpec s = parse_structure(
      "# two predicates\n"
      "id = mixed\n"
      "domain = Q\n"
      "radicand = 2\n"
      "pred D : range 3\n"
      "pred C : cut 1/2*sqrt(2)\n");
  EXPECT_EQ(s.id(), "mixed");
  EXPECT_TRUE(s.has_predicate("D"));
  EXPECT_TRUE(s.has_predicate("C"));
  StructureSpec back = parse_structure(s.describe());
  EXPECT_EQ(back.describe(), s.describe());
  EXPECT_THROW(parse_structure("domain = R\n"), Error);
  EXPECT_THROW(parse_structure("pred D : range\n"), Error);
}

TEST(Structure, DirectednessOfDiscreteRanges) {
  for (int n = 0; n <= 6; ++n) {
    for (int m = 0; m <= 6; ++m) {
      StructureSpec s("pair");
      s.add_predicate("D", DiscreteRange{n});
      s.add_predicate("E", DiscreteRange{m});
      EXPECT_EQ(decide(p("forall x (D(x) -> E(x))"), s), n <= m) << n << " " << m;
    }
  }
}

TEST(Schema, DciShape) {
  Formula inst = build_dci(p("v < w"), Var("v"), {Var("w")});
  EXPECT_TRUE(is_sentence(inst));
  ASSERT_EQ(inst.kind(), FormulaKind::Forall);
  EXPECT_EQ(inst.var(), Var("w"));
  EXPECT_TRUE(decide(inst, StructureSpec::rationals()));
}

TEST(Schema, DciOfTrue) {
  EXPECT_THROW(build_dci(Formula::top(), Var("v"), {}), Error);
  Formula inst = build_dci(Formula::top(), Var("v"), {}, SchemaOptions{true});
  EXPECT_TRUE(decide(inst, StructureSpec::rationals()));
}

TEST(Schema, ParamsMustMatchFreeVariables) {
  try {
    build_dci(p("v < w"), Var("v"), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IllFormedSchema);
  }
}

TEST(Schema, DciFailsOnTheCut) {
  StructureSpec s = StructureSpec::cut(Scalar::sqrt(2));
  EXPECT_FALSE(decide(build_dci(p("C(v)"), Var("v"), {}), s));
}

TEST(Schema, BciOfTrue) {
  Formula inst = build_bci(Formula::top(), Var("v"), LinearTerm(0), LinearTerm(1), {}, SchemaOptions{true});
  EXPECT_TRUE(is_sentence(inst));
  EXPECT_TRUE(decide(inst, StructureSpec::rationals()));
}

TEST(Schema, BciWithVariableEndpoints) {
  Formula inst = build_bci(p("v < 5"), Var("v"), parse_term("a"), parse_term("b"), {});
  EXPECT_TRUE(is_sentence(inst));
  EXPECT_TRUE(decide(inst, StructureSpec::rationals()));
}

TEST(Schema, FreshNamesAvoidTheFormula) {
  Formula inst = build_dci(p("exists s (v < s & s < w)"), Var("v"), {Var("w")});
  EXPECT_TRUE(is_sentence(inst));
  testing::SemanticOracle oracle(inst);
  EXPECT_EQ(oracle.holds({}), decide(inst, StructureSpec::rationals()));
}

}  // namespace
}  // namespace oag
