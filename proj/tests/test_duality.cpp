#include <gtest/gtest.h>

#include <random>

#include "hpd/duality_checks.hpp"
#include "hpd/dsl.hpp"
#include "hpd/error.hpp"

using namespace hpd;

namespace {

std::vector<InvariantExpr> ints(std::initializer_list<long long> v) {
  return {v.begin(), v.end()};
}

CheckResult only(const CheckOutcome& o) {
  EXPECT_EQ(o.results.size(), 1u);
  return o.results.front();
}

CheckResult named(const CheckOutcome& o, const std::string& suffix) {
  for (const auto& r : o.results)
    if (r.name.size() >= suffix.size() &&
        r.name.compare(r.name.size() - suffix.size(), suffix.size(), suffix) ==
            0)
      return r;
  ADD_FAILURE() << "no result ending in " << suffix;
  return o.results.front();
}

Workspace gr25_workspace() {
  return load_workspace(R"(
    symbol e;
    category G over P(10) primitive [0, 0, 0, 0, 2];
    category H over P(10) primitive [0, 0, 0, 0, 2];
    intersect G, H over P(10) = e;
  )");
}

}  // namespace

TEST(Witness, FoundForEveryNonzeroDifference) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> c(-3, 3), d(0, 3);
  for (int trial = 0; trial < 300; ++trial) {
    InvariantExpr poly = c(rng);
    for (const char* s : {"x", "y"})
      poly += InvariantExpr(c(rng)) * InvariantExpr::symbol(s).pow(d(rng));
    poly += InvariantExpr(c(rng)) * InvariantExpr::symbol("x") *
            InvariantExpr::symbol("y") * (InvariantExpr::symbol("x") - 1);
    const auto w = find_witness(poly);
    if (poly.is_zero()) {
      EXPECT_FALSE(w.has_value());
      continue;
    }
    ASSERT_TRUE(w.has_value()) << poly.to_string();
    Assignment full{{"x", 0}, {"y", 0}};
    for (const auto& [k, v] : *w) full[k] = v;
    EXPECT_NE(poly.evaluate(full), 0) << poly.to_string();
  }
}

TEST(Witness, VanishesOnTheBoxFallback) {
  // x(x-1)(x-2)(x-3)(x-4)(x-5) vanishes on 0..5; the box grows with degree.
  InvariantExpr poly = 1;
  for (int k = 0; k <= 5; ++k) poly *= InvariantExpr::symbol("x") - k;
  const auto w = find_witness(poly);
  ASSERT_TRUE(w.has_value());
  EXPECT_NE(poly.evaluate(*w), 0);
}

TEST(CheckResult, FailCarriesWitness) {
  const auto r = CheckResult::compare("c", InvariantExpr::parse("e + 4"),
                                      InvariantExpr::symbol("e"));
  EXPECT_EQ(r.status, CheckStatus::Fail);
  ASSERT_TRUE(r.witness.has_value());
  const auto pass = CheckResult::compare("c", 3, 3);
  EXPECT_EQ(pass.status, CheckStatus::Pass);
  EXPECT_FALSE(pass.witness.has_value());
  EXPECT_EQ(status_name(CheckStatus::Underdetermined), "underdetermined");
}

TEST(MainTheorem, Gr25BothRoutesGiveE) {
  const auto ws = gr25_workspace();
  const auto o = check_main_theorem(ws.category("G"), ws.category("H"), ws);
  const auto& r = only(o);
  EXPECT_EQ(r.status, CheckStatus::Pass);
  EXPECT_EQ(*r.lhs, InvariantExpr::symbol("e"));
  EXPECT_EQ(*r.rhs, InvariantExpr::symbol("e"));
  EXPECT_EQ(o.sods.size(), 2u);
}

TEST(MainTheorem, MutatedJoinFails) {
  const auto ws = gr25_workspace();
  EngineOptions mutated;
  mutated.mutate_jprime_bound = true;
  const auto& r =
      only(check_main_theorem(ws.category("G"), ws.category("H"), ws, mutated));
  EXPECT_EQ(r.status, CheckStatus::Fail);
  EXPECT_TRUE(r.witness.has_value());
}

TEST(MainTheorem, MissingIntersectionIsUnderdetermined) {
  const auto ws = load_workspace(R"(
    category A over P(4) primitive [1];
    category B over P(4) primitive [1];
  )");
  const auto& r = only(check_main_theorem(ws.category("A"), ws.category("B"), ws));
  EXPECT_EQ(r.status, CheckStatus::Underdetermined);
  EXPECT_FALSE(r.lhs.has_value());
}

TEST(MainTheorem, ExplicitTotalDoesNotReplaceIntersection) {
  const auto ws = load_workspace(R"(
    category A over P(4) primitive [1];
    category B over P(4) primitive [1];
  )");
  // The join side still needs e.
  const auto& r = only(check_main_theorem(ws.category("A"), ws.category("B"),
                                          ws, {}, InvariantExpr(4)));
  EXPECT_EQ(r.status, CheckStatus::Underdetermined);
}

TEST(NHpdCenter, ThreePointsInP3) {
  const auto ws = load_workspace(R"(
    category p1 over P(4) primitive [1];
    category p2 over P(4) primitive [1];
    category p3 over P(4) primitive [1];
    dual p1 primitive [0, 0, 1];
    dual p2 primitive [0, 0, 1];
    dual p3 primitive [0, 0, 1];
    disjoint p1, p2, p3;
  )");
  const auto o = check_n_hpd_center(
      {ws.category("p1"), ws.category("p2"), ws.category("p3")}, ws);
  EXPECT_EQ(named(o, ".center").status, CheckStatus::Pass);
  EXPECT_EQ(*named(o, ".center").lhs, InvariantExpr(1));
  EXPECT_EQ(named(o, ".total").status, CheckStatus::Pass);
  EXPECT_EQ(named(o, ".dual_center").status, CheckStatus::Pass);
}

TEST(Cone, NumericFixtures) {
  const Workspace ws;
  const auto g = LefschetzProfile::build("G", 10, ints({0, 0, 0, 0, 2}));
  const auto& c1 = only(check_cone_part1(g, 3, ws));
  EXPECT_EQ(c1.status, CheckStatus::Pass);
  EXPECT_EQ(*c1.lhs, InvariantExpr(16));
  EXPECT_EQ(*c1.rhs, InvariantExpr(16));
  const auto pt = LefschetzProfile::build("pt", 2, ints({1}));
  EXPECT_EQ(*only(check_cone_part1(pt, 2, ws)).lhs, InvariantExpr(3));
  const auto& c2 = only(check_cone_part2(pt, 1, ws));
  EXPECT_EQ(c2.status, CheckStatus::Pass);
  EXPECT_EQ(*c2.lhs, InvariantExpr(1));
}

TEST(Cone, DeclaredDualIsUsedWhenPresent) {
  Workspace ws;
  const auto pt = LefschetzProfile::build("pt", 3, ints({1}));
  ws.categories.emplace("pt", pt);
  ws.duals.emplace("pt", LefschetzProfile::build("pt", 3, ints({0, 2})));
  EXPECT_EQ(only(check_cone_part1(pt, 2, ws)).status, CheckStatus::Fail);
}

TEST(JoinLinear, TwoPointsAndGr25) {
  const Workspace ws;
  const auto pt = LefschetzProfile::build("pt", 2, ints({1}));
  const auto q = LefschetzProfile::build("q", 2, ints({1}));
  const auto o = check_join_linear({pt, q}, ws);
  EXPECT_EQ(named(o, ".join_dual").status, CheckStatus::Pass);
  EXPECT_EQ(*named(o, ".join_dual").lhs, InvariantExpr(2));
  EXPECT_EQ(named(o, ".fiber_product").status, CheckStatus::Pass);
  const auto g = LefschetzProfile::build("G", 10, ints({0, 0, 0, 0, 2}));
  EXPECT_EQ(*named(check_join_linear({g, pt}, ws), ".join_dual").lhs,
            InvariantExpr(12));
}

TEST(DualProfile, PointAndCorruptedDual) {
  const auto p = LefschetzProfile::build("p", 3, ints({1}));
  const auto good = LefschetzProfile::build("p", 3, ints({0, 1}));
  for (const auto& r : check_dual_profile(p, &good).results)
    EXPECT_EQ(r.status, CheckStatus::Pass) << r.name;
  const auto bad = LefschetzProfile::build("p", 3, ints({3, 1}));
  bool any_fail = false;
  for (const auto& r : check_dual_profile(p, &bad).results)
    if (r.status == CheckStatus::Fail) {
      any_fail = true;
      EXPECT_TRUE(r.witness.has_value());
    }
  EXPECT_TRUE(any_fail);
  EXPECT_EQ(only(check_dual_profile(p, nullptr)).status,
            CheckStatus::Underdetermined);
}

TEST(RunCheck, PreconditionErrorsAreLocated) {
  const auto ws = load_workspace(R"(
category A over P(3) primitive [1, 1, 1];
check cone_part2(A, n2=1);
)", ValidateOptions{true});
  try {
    run_check(ws.checks.front(), ws);
    ADD_FAILURE();
  } catch (const HpdError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonModerate);
    ASSERT_TRUE(e.span().has_value());
    EXPECT_EQ(e.span()->line, 3);
  }
}

TEST(RunCheck, KnownChecks) {
  EXPECT_EQ(known_checks().size(), 6u);
  const auto p = projective_space_profile("P", 3, 5);
  EXPECT_EQ(p.primitives(), ints({0, 0, 1}));
}
