#include "hpd/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

namespace hpd {

void Report::warn(std::string message) {
  if (std::find(warnings.begin(), warnings.end(), message) == warnings.end())
    warnings.push_back(std::move(message));
}

void Report::merge(CheckOutcome outcome) {
  for (auto& r : outcome.results) checks.push_back(std::move(r));
  for (auto& s : outcome.sods) sods.push_back(std::move(s));
  for (auto& w : outcome.warnings) warn(std::move(w));
}

int exit_code(const Report& report) {
  bool undetermined = false;
  for (const auto& c : report.checks) {
    if (c.status == CheckStatus::Fail) return 1;
    if (c.status == CheckStatus::Underdetermined) undetermined = true;
  }
  return undetermined ? 3 : 0;
}

Json to_json(const Report& report) {
  Json j;
  j["version"] = std::string(kToolVersion);
  j["input_digest"] = report.input_digest;
  Json checks = Json::array();
  for (const auto& c : report.checks) checks.push_back(to_json(c));
  j["checks"] = std::move(checks);
  Json sods = Json::array();
  for (const auto& s : report.sods) sods.push_back(to_json(s));
  j["sods"] = std::move(sods);
  j["warnings"] = Json(report.warnings);
  return j;
}

std::string render_json(const Report& report) {
  return to_json(report).dump(2) + "\n";
}

namespace {

std::string witness_text(const Assignment& w) {
  if (w.empty()) return "(any assignment)";
  std::string out;
  for (const auto& [sym, value] : w) {
    if (!out.empty()) out += ", ";
    out += sym + " = " + value.str();
  }
  return out;
}

}  // namespace

std::string render_text(const Report& report) {
  std::ostringstream out;
  int pass = 0, fail = 0, undetermined = 0;
  for (const auto& c : report.checks) {
    switch (c.status) {
      case CheckStatus::Pass:
        ++pass;
        out << "PASS   ";
        break;
      case CheckStatus::Fail:
        ++fail;
        out << "FAIL   ";
        break;
      case CheckStatus::Underdetermined:
        ++undetermined;
        out << "UNDET  ";
        break;
    }
    out << c.name << "\n";
    if (c.lhs) out << "       lhs = " << c.lhs->to_string() << "\n";
    if (c.rhs) out << "       rhs = " << c.rhs->to_string() << "\n";
    if (c.witness) out << "       witness: " << witness_text(*c.witness) << "\n";
    if (c.status != CheckStatus::Pass)
      for (const auto& n : c.notes) out << "       note: " << n << "\n";
  }
  for (const auto& s : report.sods) {
    out << "sod " << s.name << " over " << s.base << " (" << s.blocks.size()
        << " blocks, total " << s.total().to_string() << ")\n";
    for (const auto& b : s.blocks)
      out << "  " << b.term.to_string() << " <" << b.twist
          << "> : " << b.invariant.to_string() << "\n";
  }
  for (const auto& w : report.warnings) out << "warning: " << w << "\n";
  out << pass << " passed, " << fail << " failed, " << undetermined
      << " underdetermined\n";
  return out.str();
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
  std::ostringstream out;
  out << "sha256:";
  for (unsigned int i = 0; i < length; ++i)
    out << std::hex << std::setw(2) << std::setfill('0')
        << static_cast<int>(digest[i]);
  return out.str();
}

Report run_workspace(const Workspace& ws, std::string_view source,
                     const EngineOptions& options) {
  Report report;
  report.input_digest = sha256_hex(source);
  for (const auto& w : ws.warnings) report.warn(w);
  for (const auto& call : ws.checks) report.merge(run_check(call, ws, options));
  return report;
}

}  // namespace hpd
