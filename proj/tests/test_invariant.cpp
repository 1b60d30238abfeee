#include <gtest/gtest.h>

#include <random>

#include "hpd/error.hpp"
#include "hpd/invariant.hpp"

using hpd::Assignment;
using hpd::InvariantExpr;
using hpd::Integer;

namespace {

InvariantExpr P(const char* text) { return InvariantExpr::parse(text); }

// Random polynomial in x, y, e with small coefficients, built by plain
// arithmetic so the test does not depend on the parser.
InvariantExpr random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-4, 4), deg(0, 2), terms(0, 4);
  const char* names[] = {"x", "y", "e"};
  InvariantExpr out;
  for (int t = terms(rng); t > 0; --t) {
    InvariantExpr m = coeff(rng);
    for (const char* n : names) m *= InvariantExpr::symbol(n).pow(deg(rng));
    out += m;
  }
  return out;
}

Assignment random_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> v(-20, 20);
  return {{"x", v(rng)}, {"y", v(rng)}, {"e", v(rng)}};
}

}  // namespace

TEST(Invariant, PrintsInGradedLexOrder) {
  EXPECT_EQ(P("3*x - 1 + 2*x*y^2").to_string(), "2*x*y^2 + 3*x - 1");
  EXPECT_EQ(P("y^2 + x + x*y + x^2").to_string(), "x^2 + x*y + y^2 + x");
  EXPECT_EQ(P("x - x").to_string(), "0");
  EXPECT_EQ(P("-x").to_string(), "-x");
  EXPECT_EQ(P("0 - 3*e + 1").to_string(), "-3*e + 1");
}

TEST(Invariant, ParsePrintRoundTrip) {
  for (const char* text : {"2*x*y^2 + 3*x - 1", "e", "0", "-7", "x^3 - y",
                           "a*b*c + 12"}) {
    const auto v = P(text);
    EXPECT_EQ(P(v.to_string().c_str()), v) << text;
    EXPECT_EQ(v.to_string(), text);
  }
}

TEST(Invariant, ParserHandlesPrecedenceAndParentheses) {
  EXPECT_EQ(P("2 + 3*4"), InvariantExpr(14));
  EXPECT_EQ(P("(x + 1)^2"), P("x^2 + 2*x + 1"));
  EXPECT_EQ(P("-(x - y)"), P("y - x"));
  EXPECT_EQ(P("2*(x + y)*(x - y)"), P("2*x^2 - 2*y^2"));
}

TEST(Invariant, SyntaxErrorsCarryColumns) {
  for (const auto& [text, column] :
       std::vector<std::pair<const char*, int>>{
           {"x +", 4}, {"2 ** x", 4}, {"(x + 1", 7}, {"x $ y", 3}}) {
    try {
      P(text);
      ADD_FAILURE() << text;
    } catch (const hpd::HpdError& e) {
      EXPECT_EQ(e.kind(), hpd::ErrorKind::Syntax) << text;
      ASSERT_TRUE(e.span()) << text;
      EXPECT_EQ(e.span()->column, column) << text;
    }
  }
}

TEST(Invariant, HpdTotalOfGr25ProfileReducesToE) {
  const auto e = InvariantExpr::symbol("e");
  const auto value = InvariantExpr(9) * (InvariantExpr(9) * e) -
                     InvariantExpr(10) * (InvariantExpr(8) * e);
  EXPECT_EQ(value, e);
  for (int v = 1; v <= 5; ++v) EXPECT_EQ(value.evaluate({{"e", v}}), v);
}

TEST(Invariant, ArbitraryPrecision) {
  const auto big = InvariantExpr(2).pow(200);
  Integer expected = 1;
  for (int i = 0; i < 200; ++i) expected *= 2;
  EXPECT_EQ(big.constant_value(), expected);
  EXPECT_EQ((big - big).to_string(), "0");
}

TEST(Invariant, SubtractionFlagsImplausibleDifferences) {
  EXPECT_TRUE(hpd::sub(P("x + 3"), P("x")).plausible);
  const auto d = hpd::sub(P("x"), P("2*x + 1"));
  EXPECT_FALSE(d.plausible);
  EXPECT_EQ(d.value, P("-x - 1"));
}

TEST(Invariant, DegreesAndSymbols) {
  const auto v = P("x^2*y + y^3 + e");
  EXPECT_EQ(v.degree(), 3u);
  EXPECT_EQ(v.degree_in("x"), 2u);
  EXPECT_EQ(v.degree_in("z"), 0u);
  EXPECT_EQ(v.symbols(), (std::set<std::string>{"e", "x", "y"}));
  EXPECT_FALSE(v.is_constant());
  EXPECT_TRUE(P("4").is_constant());
}

TEST(Invariant, EvaluationRequiresEverySymbol) {
  EXPECT_THROW(P("x + y").evaluate({{"x", 1}}), std::out_of_range);
}

// Structural equality agrees with evaluation at random integer points.
TEST(InvariantProperty, EqualityAgreesWithEvaluation) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_poly(rng);
    const auto b = trial % 2 ? a + random_poly(rng) - random_poly(rng) : a;
    bool all_agree = true;
    for (int k = 0; k < 100; ++k) {
      const auto pt = random_point(rng);
      if (a.evaluate(pt) != b.evaluate(pt)) all_agree = false;
    }
    EXPECT_EQ(hpd::eq(a, b), all_agree) << a.to_string() << " vs "
                                        << b.to_string();
  }
}

TEST(InvariantProperty, RingOperationsCommuteWithEvaluation) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    const auto pt = random_point(rng);
    EXPECT_EQ((a * b + c).evaluate(pt),
              a.evaluate(pt) * b.evaluate(pt) + c.evaluate(pt));
    EXPECT_EQ((a - b).evaluate(pt), a.evaluate(pt) - b.evaluate(pt));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(-(-a), a);
    EXPECT_EQ(InvariantExpr::parse(a.to_string()), a);
  }
}
