#pragma once

// Tokenizer shared by the polynomial syntax and the .hpd declaration
// language. `#` starts a comment running to end of line.

#include <string>
#include <string_view>
#include <vector>

#include "hpd/error.hpp"
#include "hpd/invariant.hpp"

namespace hpd {

enum class TokenKind {
  Identifier,
  Integer,
  Punct,  // one of ; , ( ) [ ] = + - * ^
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SourceSpan span;

  bool is_punct(char c) const {
    return kind == TokenKind::Punct && text.size() == 1 && text[0] == c;
  }
  bool is_word(std::string_view word) const {
    return kind == TokenKind::Identifier && text == word;
  }
};

/// Splits `source` into tokens; the last token is always End. Throws
/// HpdError(Syntax) on characters outside the language.
std::vector<Token> tokenize(std::string_view source);

std::string describe(const Token& token);

class TokenCursor {
 public:
  explicit TokenCursor(std::vector<Token> tokens);

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at_end() const { return peek().kind == TokenKind::End; }

  bool accept_punct(char c);
  const Token& expect_punct(char c);
  const Token& expect_word(std::string_view word);
  const Token& expect_identifier(std::string_view what);
  const Token& expect_integer(std::string_view what);

  [[noreturn]] void fail(const std::string& message) const;

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

/// A symbol occurrence inside a parsed polynomial.
struct SymbolRef {
  std::string name;
  SourceSpan span;
};

/// Parses one polynomial starting at the cursor, stopping before the first
/// token that cannot continue it. Symbol occurrences are appended to `refs`
/// when non-null.
InvariantExpr parse_polynomial(TokenCursor& cursor,
                               std::vector<SymbolRef>* refs = nullptr);

}  // namespace hpd
