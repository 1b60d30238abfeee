#pragma once

// Built-in example cases with checked-in golden values.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hpd/report.hpp"

namespace hpd {

namespace detail {
struct EmbeddedFile {
  std::string_view name;
  std::string_view content;
};
const std::vector<EmbeddedFile>& embedded_catalog_files();
}  // namespace detail

struct CatalogCase {
  std::string name;
  std::string source;  // .hpd text
  std::string golden;  // .golden text, may be empty
};

const std::vector<CatalogCase>& catalog_cases();
const CatalogCase* find_catalog_case(std::string_view name);

/// A derived value recorded in a golden file.
struct Probe {
  std::string key;
  std::vector<InvariantExpr> values;
  bool is_list = false;
  std::string provenance;

  std::string value_text() const;
};

std::vector<Probe> catalog_probes(const CatalogCase& c, const Workspace& ws,
                                  const EngineOptions& options = {});

/// key -> value text, in file order. Throws Syntax on malformed lines.
std::vector<std::pair<std::string, std::string>> parse_golden(
    std::string_view text);

std::string render_golden(const CatalogCase& c,
                          const std::vector<Probe>& probes);

/// Runs the case's checks and compares each probe against the golden.
Report run_catalog_case(const CatalogCase& c, const EngineOptions& options = {});

/// All cases when `name` is empty. Throws InvalidArgument for unknown names.
Report run_catalog(const std::optional<std::string>& name,
                   const EngineOptions& options = {});

}  // namespace hpd
