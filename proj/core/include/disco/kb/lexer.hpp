#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace disco::kb {

enum class TokenKind {
  kName,      // [a-z0-9][a-zA-Z0-9_]*
  kVariable,  // [A-Z][a-zA-Z0-9_]*
  kLParen,
  kRParen,
  kComma,
  kDot,
  kImplies,   // :-
  kNotEqual,  // !=
  kEnd,
};

struct Token {
  TokenKind kind;
  std::string_view text;
  std::size_t line;
};

std::string_view token_kind_name(TokenKind kind);

// Tokenizer for the line-oriented Datalog formats. `%` starts a comment that
// runs to end of line.
class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }
  Token next() {
    Token t = current_;
    advance();
    return t;
  }
  // Consumes a token of `kind` or throws ParseError naming `what`.
  Token expect(TokenKind kind, std::string_view what);
  bool accept(TokenKind kind) {
    if (current_.kind != kind) return false;
    advance();
    return true;
  }

 private:
  void advance();

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  Token current_{TokenKind::kEnd, {}, 1};
};

}  // namespace disco::kb
