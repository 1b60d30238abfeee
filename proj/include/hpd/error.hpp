#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hpd {

enum class ErrorKind {
  Syntax,
  UnknownCheck,
  DuplicateDeclaration,
  UnknownSymbol,
  UnknownCategory,
  NonModerate,
  LeftRightMismatch,
  ConflictingIntersection,
  ConflictingHyperplaneTotal,
  AmbientMismatch,
  UnresolvedIntersection,
  UnresolvedBaseLocus,
  Underdetermined,
  MissingDisjointness,
  JoinNotModerate,
  InvalidArgument,
};

std::string_view error_kind_name(ErrorKind kind);

/// 1-based source location.
struct SourceSpan {
  int line = 0;
  int column = 0;
  bool operator==(const SourceSpan&) const = default;
};

class HpdError : public std::runtime_error {
 public:
  HpdError(ErrorKind kind, const std::string& message,
           std::optional<SourceSpan> span = std::nullopt);

  ErrorKind kind() const { return kind_; }
  const std::optional<SourceSpan>& span() const { return span_; }
  const std::string& message() const { return message_; }

  /// Returns a copy located at `span` unless a location is already set.
  HpdError located(SourceSpan span) const;

  /// "line:col: error[Kind]: message"
  std::string diagnostic() const;

 private:
  ErrorKind kind_;
  std::string message_;
  std::optional<SourceSpan> span_;
};

}  // namespace hpd
