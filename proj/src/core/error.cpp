#include "hpd/error.hpp"

#include <sstream>

namespace hpd {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "Syntax";
    case ErrorKind::UnknownCheck: return "UnknownCheck";
    case ErrorKind::DuplicateDeclaration: return "DuplicateDeclaration";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::UnknownCategory: return "UnknownCategory";
    case ErrorKind::NonModerate: return "NonModerate";
    case ErrorKind::LeftRightMismatch: return "LeftRightMismatch";
    case ErrorKind::ConflictingIntersection: return "ConflictingIntersection";
    case ErrorKind::ConflictingHyperplaneTotal:
      return "ConflictingHyperplaneTotal";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::UnresolvedIntersection: return "UnresolvedIntersection";
    case ErrorKind::UnresolvedBaseLocus: return "UnresolvedBaseLocus";
    case ErrorKind::Underdetermined: return "Underdetermined";
    case ErrorKind::MissingDisjointness: return "MissingDisjointness";
    case ErrorKind::JoinNotModerate: return "JoinNotModerate";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

HpdError::HpdError(ErrorKind kind, const std::string& message,
                   std::optional<SourceSpan> span)
    : std::runtime_error(message), kind_(kind), message_(message),
      span_(span) {}

HpdError HpdError::located(SourceSpan span) const {
  return HpdError(kind_, message_, span_ ? span_ : span);
}

std::string HpdError::diagnostic() const {
  std::ostringstream out;
  if (span_) out << span_->line << ":" << span_->column << ": ";
  out << "error[" << error_kind_name(kind_) << "]: " << message_;
  return out.str();
}

}  // namespace hpd
