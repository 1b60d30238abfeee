#include <gtest/gtest.h>

#include "hpd/catalog.hpp"
#include "hpd/dsl.hpp"
#include "hpd/error.hpp"
#include "hpd/prop.hpp"
#include "hpd/report.hpp"

using namespace hpd;

namespace {

int count(const Report& r, CheckStatus s) {
  int n = 0;
  for (const auto& c : r.checks) n += c.status == s;
  return n;
}

}  // namespace

TEST(Report, ExitCodePrecedence) {
  Report r;
  EXPECT_EQ(exit_code(r), 0);
  r.checks.push_back(CheckResult::compare("a", 1, 1));
  EXPECT_EQ(exit_code(r), 0);
  r.checks.push_back(CheckResult::underdetermined("b", "why"));
  EXPECT_EQ(exit_code(r), 3);
  r.checks.push_back(CheckResult::compare("c", 1, 2));
  EXPECT_EQ(exit_code(r), 1);
}

TEST(Report, JsonFollowsSchemaOrder) {
  const std::string src = R"(
    category p1 over P(3) primitive [1];
    category p2 over P(3) primitive [1];
    disjoint p1, p2;
    check main_theorem(p1, p2);
    check dual_profile(p1);
  )";
  const Report r = run_workspace(load_workspace(src), src);
  const Json j = to_json(r);
  std::vector<std::string> keys;
  for (const auto& [k, _] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"version", "input_digest",
                                            "checks", "sods", "warnings"}));
  EXPECT_EQ(j["version"], "0.1.0");
  EXPECT_EQ(j["input_digest"].get<std::string>().rfind("sha256:", 0), 0u);
  EXPECT_EQ(j["input_digest"].get<std::string>().size(), 7u + 64u);
  ASSERT_EQ(j["checks"].size(), 2u);
  EXPECT_EQ(j["checks"][0]["name"], "main_theorem(p1,p2)");
  EXPECT_EQ(j["checks"][0]["status"], "pass");
  EXPECT_EQ(j["checks"][0]["lhs"], "1");
  EXPECT_EQ(j["checks"][1]["status"], "underdetermined");
  EXPECT_FALSE(j["sods"].empty());
  EXPECT_EQ(render_json(r), j.dump(2) + "\n");
}

TEST(Report, DigestIsSha256) {
  EXPECT_EQ(sha256_hex("abc"),
            "sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f2001"
            "5ad");
}

TEST(Report, TextSummaryLine) {
  Report r;
  r.checks.push_back(CheckResult::compare("a", 1, 2));
  const auto text = render_text(r);
  EXPECT_NE(text.find("FAIL   a"), std::string::npos);
  EXPECT_NE(text.find("0 passed, 1 failed, 0 underdetermined"),
            std::string::npos);
}

TEST(Catalog, EveryCaseHasGoldenAndPasses) {
  ASSERT_EQ(catalog_cases().size(), 6u);
  for (const auto& c : catalog_cases()) {
    EXPECT_FALSE(c.golden.empty()) << c.name;
    const Report r = run_catalog_case(c);
    EXPECT_EQ(count(r, CheckStatus::Fail), 0) << c.name;
    EXPECT_EQ(count(r, CheckStatus::Underdetermined), 0) << c.name;
    EXPECT_EQ(exit_code(r), 0) << c.name;
  }
}

TEST(Catalog, EveryGoldenKeyIsProbed) {
  for (const auto& c : catalog_cases()) {
    const auto probes = catalog_probes(c, load_workspace(c.source));
    for (const auto& [key, _] : parse_golden(c.golden)) {
      bool found = false;
      for (const auto& p : probes) found = found || p.key == key;
      EXPECT_TRUE(found) << c.name << ": " << key;
    }
  }
}

TEST(Catalog, RenderedGoldenParsesBack) {
  const CatalogCase* c = find_catalog_case("points-line");
  ASSERT_NE(c, nullptr);
  const auto probes = catalog_probes(*c, load_workspace(c->source));
  const auto parsed = parse_golden(render_golden(*c, probes));
  ASSERT_EQ(parsed.size(), probes.size());
  for (std::size_t i = 0; i < probes.size(); ++i) {
    EXPECT_EQ(parsed[i].first, probes[i].key);
    EXPECT_EQ(parsed[i].second, probes[i].value_text());
  }
}

TEST(Catalog, MutationBreaksGr25) {
  EngineOptions mutated;
  mutated.mutate_jprime_bound = true;
  const Report r = run_catalog(std::string("gr25-join"), mutated);
  EXPECT_GT(count(r, CheckStatus::Fail), 0);
  for (const auto& c : r.checks)
    if (c.status == CheckStatus::Fail) EXPECT_TRUE(c.witness.has_value());
}

TEST(Catalog, UnknownCaseIsAnError) {
  EXPECT_THROW(run_catalog(std::string("nope")), HpdError);
  EXPECT_THROW(parse_golden("no equals sign here"), HpdError);
}

TEST(Prop, SmallRunPassesAndIsDeterministic) {
  PropConfig c;
  c.cases = 40;
  c.seed = 99;
  const auto a = run_properties(c);
  const auto b = run_properties(c);
  ASSERT_EQ(a.size(), property_names().size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].status, CheckStatus::Pass) << a[i].name;
    EXPECT_EQ(a[i].name, b[i].name);
    EXPECT_EQ(a[i].lhs, b[i].lhs);
  }
}

TEST(Prop, OnlyFiltersByPrefix) {
  PropConfig c;
  c.cases = 5;
  c.only = {"join."};
  const auto r = run_properties(c);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].name, "prop:join.commutativity");
}

TEST(Prop, ZeroCasesPassTrivially) {
  PropConfig c;
  c.cases = 0;
  for (const auto& r : run_properties(c)) EXPECT_EQ(r.status, CheckStatus::Pass);
}

TEST(Prop, BoundsAreValidated) {
  PropConfig c;
  c.max_rank = 10;
  EXPECT_THROW(validate_prop_config(c), HpdError);
  c = PropConfig{};
  c.max_length = 7;
  EXPECT_THROW(validate_prop_config(c), HpdError);
  c = PropConfig{};
  c.only = {"no-such-property"};
  EXPECT_THROW(validate_prop_config(c), HpdError);
}

TEST(Prop, RngStaysInRange) {
  Rng rng(5);
  for (int i = 0; i < 10000; ++i) {
    const int v = rng.uniform(-3, 4);
    ASSERT_GE(v, -3);
    ASSERT_LE(v, 4);
  }
}
