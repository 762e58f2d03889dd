#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oag/error.hpp"
#include "oag/scalar.hpp"

namespace oag {
namespace {

using i128 = __int128;

// Integer square root of n, floor.
std::int64_t isqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Sign of p1/q1 + p2/q2 * sqrt(d) from the integer bracket s/M <= sqrt(d) < (s+1)/M.
// Returns 0 when the bracket does not decide.
int bracket_sign(std::int64_t p1, std::int64_t q1, std::int64_t p2, std::int64_t q2, int d) {
  const std::int64_t M = 1'000'000;
  std::int64_t s = isqrt(static_cast<std::int64_t>(d) * M * M);
  auto at = [&](std::int64_t r) {
    i128 v = static_cast<i128>(p1) * q2 * M + static_cast<i128>(p2) * q1 * r;
    return v > 0 ? 1 : v < 0 ? -1 : 0;
  };
  int lo = at(s), hi = at(s + 1);
  return lo == hi ? lo : 0;
}

TEST(Rational, Canonical) {
  Rational r(6, -4);
  EXPECT_EQ(r.to_string(), "-3/2");
  EXPECT_TRUE(r.is_canonical());
  EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(-7, 2).floor(), Rational(-4));
  EXPECT_EQ(Rational(-7, 2).ceil(), Rational(-3));
  EXPECT_THROW(Rational(1, 0), Error);
}

TEST(Scalar, ComponentwiseAddition) {
  Scalar a = Scalar::quad(1, 1, 2);
  Scalar b = Scalar::quad(-1, 2, 2);
  Scalar sum = a + b;
  EXPECT_EQ(sum.rat_part(), Rational(0));
  EXPECT_EQ(sum.irr_part(), Rational(3));
  EXPECT_EQ(sum.to_string(), "0 + 3*sqrt(2)");
}

TEST(Scalar, ZeroIrrationalPartIsRational) {
  Scalar a = Scalar::quad(2, 1, 3);
  Scalar b = a - Scalar::sqrt(3);
  EXPECT_TRUE(b.is_rational());
  EXPECT_EQ(b, Scalar(2));
  EXPECT_EQ(b.radicand(), 0);
}

TEST(Scalar, MixedRadicandsAreRejected) {
  try {
    (void)(Scalar::sqrt(2) + Scalar::sqrt(3));
    FAIL() << "expected a domain mismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainMismatch);
  }
  EXPECT_THROW(Scalar::sqrt(4), Error);
}

TEST(Scalar, ParseRoundTrip) {
  for (const char* text : {"0", "-3/2", "sqrt(2)", "-1/2*sqrt(5)", "1 + 1*sqrt(2)", "-7/3 - 2/5*sqrt(7)"}) {
    Scalar s = Scalar::parse(text);
    EXPECT_EQ(Scalar::parse(s.to_string()), s) << text;
  }
}

TEST(Scalar, SignAgreesWithIntegerBracket) {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<std::int64_t> num(-200, 200), den(1, 60);
  const int radicands[] = {2, 3, 5, 6, 7, 10, 11, 13, 97};
  int decided = 0;
  for (int i = 0; i < 20000; ++i) {
    std::int64_t p1 = num(rng), q1 = den(rng), p2 = num(rng), q2 = den(rng);
    int d = radicands[i % std::size(radicands)];
    int expect = bracket_sign(p1, q1, p2, q2, d);
    if (expect == 0 && !(p1 == 0 && p2 == 0)) continue;
    ++decided;
    Scalar s = Scalar::quad(Rational(p1, q1), Rational(p2, q2), d);
    ASSERT_EQ(s.sign(), expect) << s;
  }
  EXPECT_GT(decided, 19000);
}

TEST(Scalar, OrderIsTotalAndConsistentWithSubtraction) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::int64_t> num(-30, 30), den(1, 9);
  std::vector<Scalar> xs;
  for (int i = 0; i < 60; ++i) xs.push_back(Scalar::quad(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), 2));
  for (const auto& a : xs) {
    for (const auto& b : xs) {
      int s = (a - b).sign();
      Order o = compare(a, b);
      EXPECT_EQ(o, s < 0 ? Order::LT : s > 0 ? Order::GT : Order::EQ);
      EXPECT_EQ(a < b, b > a);
    }
  }
  EXPECT_EQ(compare(Scalar(0) - Scalar::sqrt(2), Scalar(0)), Order::LT);
  EXPECT_EQ(compare(Rational(3, 4), Rational(3, 4)), Order::EQ);
}

TEST(Scalar, FloorOfIrrationals) {
  EXPECT_EQ(Scalar::sqrt(2).floor(), Rational(1));
  EXPECT_EQ((-Scalar::sqrt(2)).floor(), Rational(-2));
  EXPECT_EQ((Scalar::sqrt(97) * Rational(10)).floor(), Rational(98));
  EXPECT_EQ(Scalar::sqrt(2).ceil(), Rational(2));
}

TEST(Scalar, RationalBetween) {
  std::vector<std::pair<Scalar, Scalar>> cases{
      {Scalar(0), Scalar(1)},
      {Scalar::sqrt(2), Scalar::parse("3/2")},
      {Scalar::parse("7/5"), Scalar::sqrt(2)},
      {Scalar::sqrt(2) - Scalar(Rational(1, 1000000)), Scalar::sqrt(2)},
      {Scalar(-5), Scalar::parse("-1/2*sqrt(3)")},
  };
  for (const auto& [a, b] : cases) {
    Scalar r = rational_between(a, b);
    EXPECT_TRUE(a < r && r < b) << a << " " << r << " " << b;
  }
  EXPECT_EQ(rational_between(Scalar(0), Scalar(1)), Rational(1, 2));
}

}  // namespace
}  // namespace oag
