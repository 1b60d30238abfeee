#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hpd/duality_checks.hpp"

namespace hpd {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct Report {
  std::string input_digest;
  std::vector<CheckResult> checks;
  std::vector<SodExpr> sods;
  std::vector<std::string> warnings;

  /// Appends results, SODs and not-yet-seen warnings.
  void merge(CheckOutcome outcome);
  void warn(std::string message);
};

/// 0 when every check passes, 1 when any fails, else 3 when any is
/// underdetermined.
int exit_code(const Report& report);

Json to_json(const Report& report);
std::string render_json(const Report& report);
std::string render_text(const Report& report);

std::string sha256_hex(std::string_view data);

/// Runs every check statement of a validated workspace.
Report run_workspace(const Workspace& ws, std::string_view source,
                     const EngineOptions& options = {});

}  // namespace hpd
