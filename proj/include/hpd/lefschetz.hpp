#pragma once

// Lefschetz data, provenance terms, SOD expressions and the frozen
// declaration workspace.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hpd/error.hpp"
#include "hpd/invariant.hpp"

namespace hpd {

using Json = nlohmann::ordered_json;

class LefschetzProfile {
 public:
  LefschetzProfile() = default;

  /// Validates and builds a profile. `left` defaults to `right`.
  /// Throws InvalidArgument (N < 2, empty list), NonModerate (m >= N unless
  /// allowed) or LeftRightMismatch.
  static LefschetzProfile build(std::string name, int ambient,
                                std::vector<InvariantExpr> right,
                                std::optional<std::vector<InvariantExpr>> left =
                                    std::nullopt,
                                bool allow_nonmoderate = false);

  /// Profile whose component ranks are `components` (primitives are the
  /// successive differences).
  static LefschetzProfile from_components(
      std::string name, int ambient,
      const std::vector<InvariantExpr>& components,
      bool allow_nonmoderate = false);

  const std::string& name() const { return name_; }
  int ambient() const { return ambient_; }
  int length() const { return static_cast<int>(right_.size()); }
  bool moderate() const { return length() < ambient_; }
  const std::vector<InvariantExpr>& primitives() const { return right_; }
  const std::vector<InvariantExpr>& left_primitives() const { return left_; }
  bool has_explicit_left() const { return explicit_left_; }

  /// Σ_{j>=k} p_j; zero for k >= m.
  InvariantExpr component(int k) const;
  std::vector<InvariantExpr> components() const;
  InvariantExpr total() const;
  /// Σ_{k>=1} component(k).
  InvariantExpr higher_components_sum() const;

  /// Throws NonModerate naming `operation` unless m < N.
  void require_moderate(std::string_view operation) const;

  LefschetzProfile renamed(std::string name) const;
  LefschetzProfile with_ambient(int ambient) const;

  bool operator==(const LefschetzProfile&) const = default;

 private:
  std::string name_;
  int ambient_ = 0;
  std::vector<InvariantExpr> right_;
  std::vector<InvariantExpr> left_;
  bool explicit_left_ = false;
};

/// Weighted total Σ (j+1) p_j of a primitive list.
InvariantExpr weighted_total(const std::vector<InvariantExpr>& primitives);

/// Suffix sums of a primitive list.
std::vector<InvariantExpr> suffix_sums(
    const std::vector<InvariantExpr>& primitives);

namespace base {
inline constexpr std::string_view kV = "P(V)";
inline constexpr std::string_view kVDual = "P(V*)";
inline constexpr std::string_view kVSum = "P(V+V)";
inline constexpr std::string_view kL = "P(L)";
inline constexpr std::string_view kLDual = "P(L*)";
}  // namespace base

class CategoryTerm {
 public:
  enum class Kind {
    Atom,
    Hpd,
    Join,
    FiberProduct,
    PullbackImage,
    ExceptionalPart,
    Twist,
    Component,
    Product,
    Ambient,
  };

  CategoryTerm() = default;

  static CategoryTerm atom(std::string name);
  static CategoryTerm hpd(std::vector<CategoryTerm> of,
                          std::string base = std::string(base::kVDual));
  static CategoryTerm hpd(CategoryTerm of,
                          std::string base = std::string(base::kVDual));
  static CategoryTerm join(std::vector<CategoryTerm> parts);
  static CategoryTerm fiber_product(std::vector<CategoryTerm> parts,
                                    std::string base);
  static CategoryTerm pullback(CategoryTerm of, std::string morphism);
  static CategoryTerm exceptional(CategoryTerm of);
  static CategoryTerm twist(CategoryTerm of, int degree);
  static CategoryTerm component(CategoryTerm of, int index);
  static CategoryTerm product(std::vector<CategoryTerm> parts);
  /// D(base), e.g. D(P(V*)).
  static CategoryTerm ambient(std::string base);

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  int index() const { return index_; }
  const std::vector<CategoryTerm>& children() const { return children_; }

  std::string to_string() const;

  bool operator==(const CategoryTerm&) const = default;

 private:
  Kind kind_ = Kind::Atom;
  std::string label_;  // atom name, base tag or morphism tag
  int index_ = 0;      // twist degree or component index
  std::vector<CategoryTerm> children_;
};

struct SodBlock {
  CategoryTerm term;
  int twist = 0;
  InvariantExpr invariant;
};

struct SodExpr {
  std::string name;
  std::string base;
  std::vector<SodBlock> blocks;

  InvariantExpr total() const;
};

/// Same base, same length and blockwise equal terms, twists and invariants.
/// The display name is ignored.
bool sod_equal(const SodExpr& x, const SodExpr& y);

/// One `check` statement as written in the source.
struct CheckCall {
  std::string name;
  std::vector<std::string> args;
  std::vector<std::pair<std::string, InvariantExpr>> options;
  SourceSpan span;
  std::vector<SourceSpan> arg_spans;
  std::vector<SourceSpan> option_spans;

  const InvariantExpr* option(std::string_view key) const;
  /// "name(A,B,key=value)"
  std::string signature() const;

  bool operator==(const CheckCall& other) const {
    return name == other.name && args == other.args &&
           options == other.options;
  }
};

struct IntersectionKey {
  std::string first;
  std::string second;
  int ambient = 0;

  /// Orders the pair so (A,B) and (B,A) share a key.
  static IntersectionKey make(std::string a, std::string b, int ambient);
  auto operator<=>(const IntersectionKey&) const = default;
};

class Workspace {
 public:
  std::set<std::string> symbols;
  std::map<std::string, LefschetzProfile> categories;
  std::map<IntersectionKey, InvariantExpr> intersections;
  /// Each set sorted; the list sorted and free of duplicates.
  std::vector<std::vector<std::string>> disjoint_sets;
  std::map<std::string, LefschetzProfile> duals;
  /// Source order.
  std::vector<CheckCall> checks;
  std::vector<std::string> warnings;

  const LefschetzProfile& category(const std::string& name) const;
  const LefschetzProfile* dual(const std::string& name) const;

  /// True when some declared disjoint set contains every name.
  bool are_disjoint(const std::vector<std::string>& names) const;

  /// Zero for disjoint pairs, the declared value otherwise.
  std::optional<InvariantExpr> intersection(const std::string& a,
                                            const std::string& b,
                                            int ambient) const;

  bool operator==(const Workspace& other) const {
    return symbols == other.symbols && categories == other.categories &&
           intersections == other.intersections &&
           disjoint_sets == other.disjoint_sets && duals == other.duals &&
           checks == other.checks;
  }
};

Json to_json(const LefschetzProfile& profile);
Json to_json(const SodExpr& sod);
Json to_json(const Workspace& ws);
std::string to_string(const std::vector<InvariantExpr>& values);

}  // namespace hpd
