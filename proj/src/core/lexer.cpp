#include "hpd/lexer.hpp"

#include <cctype>
#include <limits>

namespace hpd {
namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
constexpr std::string_view kPunct = ";,()[]=+-*^";

}  // namespace

std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> tokens;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (source[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < source.size()) {
    const char c = source[i];
    if (c == '#') {
      while (i < source.size() && source[i] != '\n') advance(1);
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
        c == '\v') {
      advance(1);
      continue;
    }
    Token tok;
    tok.span = {line, column};
    std::size_t len = 0;
    if (is_ident_start(c)) {
      while (i + len < source.size() && is_ident_char(source[i + len])) ++len;
      tok.kind = TokenKind::Identifier;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i + len < source.size() &&
             std::isdigit(static_cast<unsigned char>(source[i + len])))
        ++len;
      if (i + len < source.size() && is_ident_start(source[i + len]))
        throw HpdError(ErrorKind::Syntax,
                       "malformed number '" +
                           std::string(source.substr(i, len + 1)) + "'",
                       tok.span);
      tok.kind = TokenKind::Integer;
    } else if (kPunct.find(c) != std::string_view::npos) {
      len = 1;
      tok.kind = TokenKind::Punct;
    } else {
      std::string shown = (static_cast<unsigned char>(c) < 0x80 &&
                           std::isprint(static_cast<unsigned char>(c)))
                              ? std::string(1, c)
                              : "non-ASCII byte";
      throw HpdError(ErrorKind::Syntax, "unexpected character '" + shown + "'",
                     tok.span);
    }
    tok.text = std::string(source.substr(i, len));
    advance(len);
    tokens.push_back(std::move(tok));
  }
  Token end;
  end.kind = TokenKind::End;
  end.span = {line, column};
  tokens.push_back(end);
  return tokens;
}

std::string describe(const Token& token) {
  switch (token.kind) {
    case TokenKind::End: return "end of input";
    case TokenKind::Identifier: return "identifier '" + token.text + "'";
    case TokenKind::Integer: return "integer " + token.text;
    case TokenKind::Punct: return "'" + token.text + "'";
  }
  return "token";
}

TokenCursor::TokenCursor(std::vector<Token> tokens)
    : tokens_(std::move(tokens)) {
  if (tokens_.empty() || tokens_.back().kind != TokenKind::End)
    tokens_.push_back(Token{});
}

const Token& TokenCursor::peek(std::size_t ahead) const {
  return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
}

const Token& TokenCursor::next() {
  const Token& tok = tokens_[pos_];
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return tok;
}

bool TokenCursor::accept_punct(char c) {
  if (peek().is_punct(c)) {
    next();
    return true;
  }
  return false;
}

const Token& TokenCursor::expect_punct(char c) {
  if (!peek().is_punct(c))
    fail(std::string("expected '") + c + "', found " + describe(peek()));
  return next();
}

const Token& TokenCursor::expect_word(std::string_view word) {
  if (!peek().is_word(word))
    fail("expected '" + std::string(word) + "', found " + describe(peek()));
  return next();
}

const Token& TokenCursor::expect_identifier(std::string_view what) {
  if (peek().kind != TokenKind::Identifier)
    fail("expected " + std::string(what) + ", found " + describe(peek()));
  return next();
}

const Token& TokenCursor::expect_integer(std::string_view what) {
  if (peek().kind != TokenKind::Integer)
    fail("expected " + std::string(what) + ", found " + describe(peek()));
  return next();
}

void TokenCursor::fail(const std::string& message) const {
  throw HpdError(ErrorKind::Syntax, message, peek().span);
}

namespace {

InvariantExpr parse_sum(TokenCursor& cursor, std::vector<SymbolRef>* refs);

InvariantExpr parse_atom(TokenCursor& cursor, std::vector<SymbolRef>* refs) {
  const Token& tok = cursor.peek();
  if (tok.kind == TokenKind::Integer) {
    cursor.next();
    return InvariantExpr(Integer(tok.text));
  }
  if (tok.kind == TokenKind::Identifier) {
    cursor.next();
    if (refs) refs->push_back({tok.text, tok.span});
    return InvariantExpr::symbol(tok.text);
  }
  if (tok.is_punct('(')) {
    cursor.next();
    InvariantExpr inner = parse_sum(cursor, refs);
    cursor.expect_punct(')');
    return inner;
  }
  cursor.fail("expected a polynomial term, found " + describe(tok));
}

InvariantExpr parse_power(TokenCursor& cursor, std::vector<SymbolRef>* refs) {
  InvariantExpr base = parse_atom(cursor, refs);
  if (cursor.accept_punct('^')) {
    const Token& exp = cursor.expect_integer("an exponent");
    if (exp.text.size() > 4)
      throw HpdError(ErrorKind::Syntax, "exponent too large", exp.span);
    base = base.pow(static_cast<std::uint32_t>(std::stoul(exp.text)));
  }
  return base;
}

InvariantExpr parse_signed(TokenCursor& cursor, std::vector<SymbolRef>* refs) {
  if (cursor.accept_punct('-')) return -parse_signed(cursor, refs);
  if (cursor.accept_punct('+')) return parse_signed(cursor, refs);
  return parse_power(cursor, refs);
}

InvariantExpr parse_product(TokenCursor& cursor,
                            std::vector<SymbolRef>* refs) {
  InvariantExpr value = parse_signed(cursor, refs);
  while (cursor.accept_punct('*')) value *= parse_signed(cursor, refs);
  return value;
}

InvariantExpr parse_sum(TokenCursor& cursor, std::vector<SymbolRef>* refs) {
  InvariantExpr value = parse_product(cursor, refs);
  for (;;) {
    if (cursor.accept_punct('+')) {
      value += parse_product(cursor, refs);
    } else if (cursor.accept_punct('-')) {
      value -= parse_product(cursor, refs);
    } else {
      return value;
    }
  }
}

}  // namespace

InvariantExpr parse_polynomial(TokenCursor& cursor,
                               std::vector<SymbolRef>* refs) {
  return parse_sum(cursor, refs);
}

}  // namespace hpd
