#pragma once

// Duality statements encoded as identities between two independently
// derived invariant expressions.

#include <optional>
#include <string>
#include <vector>

#include "hpd/lefschetz.hpp"
#include "hpd/sod_engine.hpp"

namespace hpd {

enum class CheckStatus { Pass, Fail, Underdetermined };

std::string_view status_name(CheckStatus status);

struct CheckResult {
  std::string name;
  std::optional<InvariantExpr> lhs;  // absent when underdetermined
  std::optional<InvariantExpr> rhs;
  CheckStatus status = CheckStatus::Underdetermined;
  std::optional<Assignment> witness;
  std::vector<std::string> notes;

  /// Pass iff lhs == rhs; a failing result always carries a witness.
  static CheckResult compare(std::string name, InvariantExpr lhs,
                             InvariantExpr rhs,
                             std::vector<std::string> notes = {});
  static CheckResult underdetermined(std::string name, std::string reason);
};

/// Integer point at which `difference` is nonzero, searched in the box
/// {0..max(5, degree)}^symbols; nullopt only for the zero polynomial.
std::optional<Assignment> find_witness(const InvariantExpr& difference);

/// Results of one `check` statement plus the SODs it produced.
struct CheckOutcome {
  std::vector<CheckResult> results;
  std::vector<SodExpr> sods;
  std::vector<std::string> warnings;
};

CheckOutcome check_main_theorem(const LefschetzProfile& p,
                                const LefschetzProfile& q, const Workspace& ws,
                                const EngineOptions& options = {},
                                const std::optional<InvariantExpr>& htotal =
                                    std::nullopt);

CheckOutcome check_n_hpd_center(const std::vector<LefschetzProfile>& profiles,
                                const Workspace& ws,
                                const std::optional<InvariantExpr>& htotal =
                                    std::nullopt);

/// `p` lives over P(V1) with N1 = p.ambient(); N = N1 + n2.
CheckOutcome check_cone_part1(const LefschetzProfile& p, int n2,
                              const Workspace& ws);
CheckOutcome check_cone_part2(const LefschetzProfile& p, int n2,
                              const Workspace& ws);

/// Each profile lives over its own P(V_k); V is their direct sum.
CheckOutcome check_join_linear(const std::vector<LefschetzProfile>& profiles,
                               const Workspace& ws);

CheckOutcome check_dual_profile(const LefschetzProfile& p,
                                const LefschetzProfile* declared_dual);

/// Full P(V) Beilinson profile: primitives (0, ..., 0, 1) of length n.
LefschetzProfile projective_space_profile(const std::string& name, int n,
                                          int ambient);

/// Runs one parsed check statement. Errors are rethrown located at the
/// statement.
CheckOutcome run_check(const CheckCall& call, const Workspace& ws,
                       const EngineOptions& options = {});

/// Names accepted by `check`.
const std::vector<std::string>& known_checks();

/// Argument count, option keys and option kinds of a check statement.
/// Category names are resolved here too.
void validate_check(const CheckCall& call, const Workspace& ws);

Json to_json(const CheckResult& result);

}  // namespace hpd
