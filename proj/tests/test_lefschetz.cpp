#include <gtest/gtest.h>

#include <random>

#include "hpd/error.hpp"
#include "hpd/lefschetz.hpp"

using namespace hpd;

namespace {

std::vector<InvariantExpr> ints(std::initializer_list<long long> v) {
  return {v.begin(), v.end()};
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const HpdError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Syntax;
}

}  // namespace

TEST(Profile, Gr25Components) {
  const auto p = LefschetzProfile::build("Gr25", 10, ints({0, 0, 0, 0, 2}));
  EXPECT_EQ(p.components(), ints({2, 2, 2, 2, 2}));
  EXPECT_EQ(p.total(), InvariantExpr(10));
  EXPECT_EQ(p.higher_components_sum(), InvariantExpr(8));
  EXPECT_TRUE(p.moderate());
}

TEST(Profile, ComponentsAreSuffixSumsAndVanishBeyondLength) {
  const auto p = LefschetzProfile::build(
      "A", 6, {InvariantExpr::symbol("a"), 0, InvariantExpr(2)});
  EXPECT_EQ(p.component(0), InvariantExpr::parse("a + 2"));
  EXPECT_EQ(p.component(1), InvariantExpr(2));
  EXPECT_EQ(p.component(2), InvariantExpr(2));
  EXPECT_EQ(p.component(3), InvariantExpr(0));
  EXPECT_EQ(p.total(), InvariantExpr::parse("a + 6"));
}

TEST(Profile, TotalIsWeightedSumOfPrimitives) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> v(0, 9), len(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<InvariantExpr> prims;
    long long weighted = 0;
    const int m = len(rng);
    for (int j = 0; j < m; ++j) {
      const int x = v(rng);
      prims.emplace_back(x);
      weighted += (j + 1) * x;
    }
    const auto p = LefschetzProfile::build("A", m + 1, prims);
    long long by_components = 0;
    for (const auto& c : p.components()) by_components += c.constant_value()->convert_to<long long>();
    EXPECT_EQ(by_components, weighted);
    EXPECT_EQ(p.total(), InvariantExpr(weighted));
    EXPECT_EQ(LefschetzProfile::from_components("B", m + 1, p.components())
                  .primitives(),
              prims);
  }
}

TEST(Profile, ValidationErrors) {
  EXPECT_EQ(kind_of([] { LefschetzProfile::build("A", 1, ints({1})); }),
            ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { LefschetzProfile::build("A", 4, {}); }),
            ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { LefschetzProfile::build("A", 2, ints({1, 1})); }),
            ErrorKind::NonModerate);
  EXPECT_NO_THROW(
      LefschetzProfile::build("A", 2, ints({1, 1}), std::nullopt, true));
  EXPECT_EQ(kind_of([] {
              LefschetzProfile::build("A", 4, ints({1, 2}), ints({3, 0}));
            }),
            ErrorKind::LeftRightMismatch);
  EXPECT_EQ(kind_of([] {
              LefschetzProfile::build("A", 4, ints({1, 2}), ints({5}));
            }),
            ErrorKind::LeftRightMismatch);
  const auto ok = LefschetzProfile::build("A", 4, ints({1, 2}), ints({3, 1}));
  EXPECT_TRUE(ok.has_explicit_left());
}

TEST(Profile, NonModerateProfileRefusesModerateOperations) {
  const auto p =
      LefschetzProfile::build("A", 2, ints({1, 1}), std::nullopt, true);
  EXPECT_FALSE(p.moderate());
  EXPECT_EQ(kind_of([&] { p.require_moderate("hpd_total"); }),
            ErrorKind::NonModerate);
}

TEST(CategoryTerm, Printing) {
  const auto a = CategoryTerm::atom("A");
  const auto b = CategoryTerm::atom("B");
  EXPECT_EQ(CategoryTerm::hpd(a).to_string(), "hpd(A)");
  EXPECT_EQ(CategoryTerm::hpd({a, b}).to_string(), "hpd(A,B)");
  EXPECT_EQ(CategoryTerm::join({a, b}).to_string(), "join(A,B)");
  EXPECT_EQ(CategoryTerm::component(a, 3).to_string(), "comp(A,3)");
  EXPECT_EQ(CategoryTerm::twist(a, 2).to_string(), "twist(A,2)");
  EXPECT_EQ(CategoryTerm::exceptional(a).to_string(), "exc(A)");
  EXPECT_EQ(CategoryTerm::ambient(std::string(base::kVDual)).to_string(),
            "D[P(V*)]");
}

TEST(Workspace, IntersectionsAreSymmetricAndDisjointnessImpliesZero) {
  Workspace ws;
  for (const char* n : {"A", "B", "C"})
    ws.categories.emplace(n, LefschetzProfile::build(n, 5, ints({1})));
  ws.intersections.emplace(IntersectionKey::make("B", "A", 5),
                           InvariantExpr::symbol("e"));
  ws.disjoint_sets.push_back({"B", "C"});
  EXPECT_EQ(IntersectionKey::make("A", "B", 5),
            IntersectionKey::make("B", "A", 5));
  EXPECT_EQ(ws.intersection("A", "B", 5), InvariantExpr::symbol("e"));
  EXPECT_EQ(ws.intersection("C", "B", 5), InvariantExpr(0));
  EXPECT_FALSE(ws.intersection("A", "C", 5).has_value());
  EXPECT_TRUE(ws.are_disjoint({"C", "B"}));
  EXPECT_FALSE(ws.are_disjoint({"A", "B"}));
  EXPECT_FALSE(ws.are_disjoint({"B", "B"}));
  EXPECT_EQ(kind_of([&] { ws.category("Z"); }), ErrorKind::UnknownCategory);
}

TEST(Sod, EqualityIgnoresNameOnly) {
  SodExpr x{"X", "P(V)", {{CategoryTerm::atom("A"), 0, 3}}};
  SodExpr y = x;
  y.name = "Y";
  EXPECT_TRUE(sod_equal(x, y));
  y.blocks[0].twist = 1;
  EXPECT_FALSE(sod_equal(x, y));
  EXPECT_EQ(x.total(), InvariantExpr(3));
}
