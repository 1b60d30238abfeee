#pragma once

// SOD-producing constructions as pure functions on invariant data.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hpd/lefschetz.hpp"

namespace hpd {

struct EngineOptions {
  /// Test mode: use N-2 instead of N-3 as the upper index bound of the
  /// join's J' components. Exists only to demonstrate the checks fail.
  bool mutate_jprime_bound = false;
};

SodExpr projective_bundle_sod(const CategoryTerm& cat, const InvariantExpr& inv,
                              int r);

/// Blocks [β*A, (A_Z)_0, ..., (A_Z)_{r-2}].
SodExpr blowup_sod(const InvariantExpr& cat_inv,
                   const InvariantExpr& center_inv, int r,
                   const CategoryTerm& cat = CategoryTerm::atom("A"),
                   const CategoryTerm& center = CategoryTerm::atom("Z"));

/// Blocks [j_*ρ*A_Z, A(1), ..., A(r-1)].
SodExpr hyperplane_sod(const InvariantExpr& cat_inv,
                       const InvariantExpr& base_locus_inv, int r,
                       const CategoryTerm& cat = CategoryTerm::atom("A"),
                       const CategoryTerm& base_locus = CategoryTerm::atom("Z"));

/// (N-1)·total - N·Σ_{k>=1} comp_k. Requires a moderate profile.
InvariantExpr hpd_total(const LefschetzProfile& profile);

/// hpd_total for a bare component list over ambient rank N.
InvariantExpr hpd_total_of_components(
    const std::vector<InvariantExpr>& components, int ambient);

SodExpr universal_hyperplane_sod(const LefschetzProfile& profile);

/// e + (N-2)·a1·a2
InvariantExpr two_hyperplane_rank(const InvariantExpr& a1,
                                  const InvariantExpr& a2,
                                  const InvariantExpr& e, int ambient);

struct NHyperplaneResult {
  SodExpr sod;
  InvariantExpr c_invariant;
  InvariantExpr h_total;
  std::string h_total_source;  // "explicit", "disjoint" or "intersection"
  /// Invariant of C_I keyed by the sorted index subset I (0-based).
  std::map<std::vector<int>, InvariantExpr> subset_invariants;
};

/// n-universal hyperplane blocks and the derived n-HPD invariant. The total
/// of the n-universal hyperplane for the full set comes from `explicit_total`,
/// a declared disjoint set or (n = 2) the declared intersection; conflicting
/// sources throw ConflictingHyperplaneTotal, no source throws Underdetermined.
NHyperplaneResult n_hyperplane_sod(
    const std::vector<LefschetzProfile>& profiles, const Workspace& ws,
    const std::optional<InvariantExpr>& explicit_total = std::nullopt);

/// Variant with every subset total supplied by the caller (indices sorted,
/// size >= 2).
NHyperplaneResult n_hyperplane_sod_with(
    const std::vector<LefschetzProfile>& profiles,
    const std::map<std::vector<int>, InvariantExpr>& subset_totals,
    const std::string& source);

/// Coefficient convolution c_s = Σ_{i1+...+in = s} Π p^{(k)}_{ik}.
std::vector<InvariantExpr> convolve(
    const std::vector<std::vector<InvariantExpr>>& primitive_lists);

/// J̄_i = Σ_{i1+...+in >= i+1-n} Π p^{(k)}_{ik}, i = 0..Σm-1.
std::vector<InvariantExpr> join_bar_components(
    const std::vector<std::vector<InvariantExpr>>& primitive_lists);

/// Two-factor ruled join components; throws AmbientMismatch.
std::vector<InvariantExpr> ruled_join_components(const LefschetzProfile& p,
                                                 const LefschetzProfile& q);

struct JoinComponent {
  InvariantExpr jprime;
  InvariantExpr e_part;
  InvariantExpr value() const { return jprime + e_part; }
};

struct JoinResult {
  std::vector<InvariantExpr> ruled;  // J̄_i
  InvariantExpr intersection;        // e
  InvariantExpr e_invariant;         // E
  std::vector<JoinComponent> components;  // i = 0..N-2
  InvariantExpr total;
  SodExpr sod;

  std::vector<InvariantExpr> component_values() const;
  std::vector<InvariantExpr> jprimes() const;
};

JoinResult join_profile_with(const LefschetzProfile& p,
                             const LefschetzProfile& q,
                             const InvariantExpr& intersection,
                             const EngineOptions& options = {});

/// Resolves the intersection from the workspace; throws
/// UnresolvedIntersection when it is neither declared nor implied.
JoinResult join_profile(const LefschetzProfile& p, const LefschetzProfile& q,
                        const Workspace& ws, const EngineOptions& options = {});

/// Right-hand side of the join bookkeeping identity:
/// Σ J̄_i + (N-1)e - N·Σ_{i>=N-1} J̄_i.
InvariantExpr join_conservation_total(const std::vector<InvariantExpr>& ruled,
                                      const InvariantExpr& intersection,
                                      int ambient);

/// Join components as a profile over the same ambient rank.
LefschetzProfile join_as_profile(const JoinResult& join, std::string name,
                                 int ambient);

/// Disjoint n-fold join; throws MissingDisjointness or AmbientMismatch.
std::vector<InvariantExpr> n_join_profile(
    const std::vector<LefschetzProfile>& profiles, const Workspace& ws);

/// Σ_k total_k Π_{j != k} center_j, the total of an n-fold disjoint join.
InvariantExpr n_join_total(const std::vector<InvariantExpr>& totals,
                           const std::vector<InvariantExpr>& centers);

struct RefinedBlowup {
  int ambient = 0;                        // ell
  std::vector<InvariantExpr> a_prime;     // A_k', k = 0..ell-2
  InvariantExpr c_l;                      // C_L
  InvariantExpr total;
  SodExpr sod;
};

/// Throws InvalidArgument unless 2 <= ell <= N, UnresolvedBaseLocus when the
/// base locus invariant is absent.
RefinedBlowup refined_blowup_profile(
    const LefschetzProfile& p, int ell,
    const std::optional<InvariantExpr>& base_locus);

/// blowup total - ell·Σ_{k>=ell-1} comp_k
InvariantExpr refined_blowup_conservation_total(const LefschetzProfile& p,
                                                int ell,
                                                const InvariantExpr& z);

SodExpr twist_sod(const SodExpr& x, int t);

}  // namespace hpd
