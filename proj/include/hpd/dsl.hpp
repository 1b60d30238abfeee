#pragma once

// The .hpd declaration language: parse, validate, canonical print.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hpd/lefschetz.hpp"
#include "hpd/lexer.hpp"

namespace hpd {

struct Name {
  std::string text;
  SourceSpan span;
};

struct PolyList {
  std::vector<InvariantExpr> values;
  std::vector<SymbolRef> refs;
};

struct SymbolDecl {
  std::vector<Name> names;
  SourceSpan span;
};

struct CategoryDecl {
  Name name;
  int ambient = 0;
  PolyList right;
  std::optional<PolyList> left;
  SourceSpan span;
};

struct IntersectDecl {
  Name first;
  Name second;
  int ambient = 0;
  InvariantExpr value;
  std::vector<SymbolRef> refs;
  SourceSpan span;
};

struct DisjointDecl {
  std::vector<Name> names;
  SourceSpan span;
};

struct DualDecl {
  Name name;
  PolyList primitives;
  SourceSpan span;
};

struct CheckStmt {
  CheckCall call;
  std::vector<SymbolRef> refs;  // symbols inside option values
};

using Statement = std::variant<SymbolDecl, CategoryDecl, IntersectDecl,
                               DisjointDecl, DualDecl, CheckStmt>;

struct Ast {
  std::vector<Statement> statements;
};

/// Throws HpdError (Syntax, UnknownCheck, DuplicateDeclaration) with a span.
Ast parse(std::string_view source);

struct ValidateOptions {
  bool allow_nonmoderate = false;
};

/// Resolves references and checks every profile and workspace invariant.
/// Declaration order does not matter.
Workspace validate(const Ast& ast, const ValidateOptions& options = {});

/// parse followed by validate.
Workspace load_workspace(std::string_view source,
                         const ValidateOptions& options = {});

/// Deterministic source text; declarations sorted, checks in source order.
std::string print_canonical(const Workspace& ws);

}  // namespace hpd
