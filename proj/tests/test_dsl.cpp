#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "hpd/catalog.hpp"
#include "hpd/dsl.hpp"
#include "hpd/error.hpp"

using namespace hpd;

namespace {

std::string read(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> sources() {
  std::vector<std::string> out;
  for (const auto& c : catalog_cases()) out.push_back(c.source);
  for (const auto& entry :
       std::filesystem::directory_iterator(HPD_SAMPLES_DIR)) {
    const auto text = read(entry.path());
    try {
      load_workspace(text);
      out.push_back(text);
    } catch (const HpdError&) {
      // malformed or non-moderate samples are covered elsewhere
    }
  }
  return out;
}

struct Malformed {
  const char* source;
  ErrorKind kind;
  int line;
  int column;
};

}  // namespace

TEST(Dsl, ParsesAllStatementKinds) {
  const auto ws = load_workspace(R"(
    symbol a, e;
    category A over P(5) primitive [a, 1] left [a, 1];
    category B over P(5) primitive [1];
    intersect A, B over P(5) = e^2 + 1;
    dual B primitive [0, 0, 0, 1];
    check main_theorem(A, B, htotal=3);
    check cone_part1(B, n2=2);
  )");
  EXPECT_EQ(ws.symbols, (std::set<std::string>{"a", "e"}));
  EXPECT_EQ(ws.categories.size(), 2u);
  EXPECT_EQ(ws.intersection("B", "A", 5), InvariantExpr::parse("e^2 + 1"));
  ASSERT_NE(ws.dual("B"), nullptr);
  EXPECT_EQ(ws.dual("B")->ambient(), 5);
  ASSERT_EQ(ws.checks.size(), 2u);
  EXPECT_EQ(ws.checks[0].signature(), "main_theorem(A,B,htotal=3)");
  EXPECT_EQ(ws.checks[1].args, std::vector<std::string>{"B"});
}

TEST(Dsl, RoundTripOverCorpus) {
  for (const auto& src : sources()) {
    const Workspace ws = load_workspace(src);
    const std::string printed = print_canonical(ws);
    const Workspace again = load_workspace(printed);
    EXPECT_EQ(again, ws) << printed;
    EXPECT_EQ(print_canonical(again), printed);
  }
}

// Reordering declarations never changes the workspace; checks keep their
// relative order.
TEST(Dsl, DeclarationOrderIsIrrelevant) {
  std::mt19937_64 rng(3);
  for (const auto& src : sources()) {
    std::vector<std::string> decls, checks;
    std::istringstream in(src);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      (line.rfind("check", 0) == 0 ? checks : decls).push_back(line);
    }
    const Workspace expected = load_workspace(src);
    for (int trial = 0; trial < 10; ++trial) {
      std::shuffle(decls.begin(), decls.end(), rng);
      std::string shuffled;
      for (const auto& c : checks) shuffled += c + "\n";
      for (const auto& d : decls) shuffled += d + "\n";
      EXPECT_EQ(load_workspace(shuffled), expected) << shuffled;
    }
  }
}

TEST(Dsl, MalformedInputsCarrySpans) {
  const std::vector<Malformed> cases{
      {"category A over P(4) primitive [1, 2;", ErrorKind::Syntax, 1, 37},
      {"category A over P(4) primitive [x];", ErrorKind::UnknownSymbol, 1, 33},
      {"category A over P(4) primitive [1];\ncategory A over P(4) primitive "
       "[2];",
       ErrorKind::DuplicateDeclaration, 2, 10},
      {"category A over P(4) primitive [1];\ncheck frobnicate(A);",
       ErrorKind::UnknownCheck, 2, 7},
      {"category A over P(4) primitive [1];\ncheck dual_profile(B);",
       ErrorKind::UnknownCategory, 2, 20},
      {"category A over P(2) primitive [1, 1];", ErrorKind::NonModerate, 1,
       10},
      {"category A over P(4) primitive [1, 2] left [1];",
       ErrorKind::LeftRightMismatch, 1, 10},
      {"category A over P(4) primitive [1];\ncategory B over P(5) primitive "
       "[1];\ndisjoint A, B;",
       ErrorKind::AmbientMismatch, 3, 13},
      {"category A over P(4) primitive [1];\ncategory B over P(4) primitive "
       "[1];\ndisjoint A, B;\nintersect A, B over P(4) = 2;",
       ErrorKind::ConflictingIntersection, 4, 1},
      {"category A over P(4) primitive [1];\ncheck cone_part1(A, n2=0);",
       ErrorKind::InvalidArgument, 2, 21},
  };
  for (const auto& c : cases) {
    try {
      load_workspace(c.source);
      ADD_FAILURE() << "accepted: " << c.source;
    } catch (const HpdError& e) {
      EXPECT_EQ(e.kind(), c.kind) << c.source << "\n" << e.diagnostic();
      ASSERT_TRUE(e.span().has_value()) << c.source;
      EXPECT_EQ(e.span()->line, c.line) << e.diagnostic();
      EXPECT_EQ(e.span()->column, c.column) << e.diagnostic();
    }
  }
}

TEST(Dsl, LexicalErrors) {
  for (const char* src : {"category A over P(4) primitive [1]; @",
                          "category A over P(4) primitive [12a];",
                          "category \xc3\xa9 over P(4) primitive [1];"}) {
    try {
      parse(src);
      ADD_FAILURE() << src;
    } catch (const HpdError& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Syntax);
      EXPECT_TRUE(e.span().has_value());
    }
  }
}

TEST(Dsl, CommentsAndWhitespaceAreIgnored) {
  const auto a = load_workspace("category A over P(4) primitive [1];");
  const auto b = load_workspace(
      "# leading\n  category   A over P( 4 )\n primitive [ 1 ] ; # trailing");
  EXPECT_EQ(a, b);
}

TEST(Dsl, NonModerateAllowedByOption) {
  EXPECT_NO_THROW(load_workspace("category A over P(2) primitive [1, 1];",
                                 ValidateOptions{true}));
}

TEST(Dsl, NegativePrimitiveWarns) {
  const auto ws = load_workspace("category A over P(4) primitive [-1, 2];");
  EXPECT_FALSE(ws.warnings.empty());
}

TEST(Dsl, SymbolicIntersectionOnDisjointPairWarns) {
  const auto ws = load_workspace(R"(
    symbol e;
    category A over P(4) primitive [1];
    category B over P(4) primitive [1];
    disjoint A, B;
    intersect A, B over P(4) = e;
  )");
  EXPECT_FALSE(ws.warnings.empty());
  EXPECT_EQ(ws.intersection("A", "B", 4), InvariantExpr(0));
}
