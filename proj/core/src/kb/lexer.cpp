#include "disco/kb/lexer.hpp"

#include <cctype>

#include "disco/kb/error.hpp"

namespace disco::kb {
namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

std::string_view token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::kName: return "name";
    case TokenKind::kVariable: return "variable";
    case TokenKind::kLParen: return "'('";
    case TokenKind::kRParen: return "')'";
    case TokenKind::kComma: return "','";
    case TokenKind::kDot: return "'.'";
    case TokenKind::kImplies: return "':-'";
    case TokenKind::kNotEqual: return "'!='";
    case TokenKind::kEnd: return "end of input";
  }
  return "token";
}

Token Lexer::expect(TokenKind kind, std::string_view what) {
  if (current_.kind != kind) {
    std::string found = current_.kind == TokenKind::kEnd ? "end of input" : "'" + std::string(current_.text) + "'";
    throw ParseError(current_.line, "expected " + std::string(what) + ", found " + found);
  }
  return next();
}

void Lexer::advance() {
  const std::size_t n = text_.size();
  while (pos_ < n) {
    const char c = text_[pos_];
    if (c == '\n') {
      ++line_;
      ++pos_;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      ++pos_;
    } else if (c == '%') {
      while (pos_ < n && text_[pos_] != '\n') ++pos_;
    } else {
      break;
    }
  }
  if (pos_ >= n) {
    current_ = {TokenKind::kEnd, {}, line_};
    return;
  }
  const std::size_t start = pos_;
  const char c = text_[pos_];
  auto single = [&](TokenKind kind) {
    ++pos_;
    current_ = {kind, text_.substr(start, 1), line_};
  };
  switch (c) {
    case '(': return single(TokenKind::kLParen);
    case ')': return single(TokenKind::kRParen);
    case ',': return single(TokenKind::kComma);
    case '.': return single(TokenKind::kDot);
    case ':':
      if (pos_ + 1 < n && text_[pos_ + 1] == '-') {
        pos_ += 2;
        current_ = {TokenKind::kImplies, text_.substr(start, 2), line_};
        return;
      }
      break;
    case '!':
      if (pos_ + 1 < n && text_[pos_ + 1] == '=') {
        pos_ += 2;
        current_ = {TokenKind::kNotEqual, text_.substr(start, 2), line_};
        return;
      }
      break;
    default:
      break;
  }
  const unsigned char uc = static_cast<unsigned char>(c);
  if (std::islower(uc) || std::isdigit(uc) || std::isupper(uc)) {
    while (pos_ < n && is_word_char(text_[pos_])) ++pos_;
    current_ = {std::isupper(uc) ? TokenKind::kVariable : TokenKind::kName, text_.substr(start, pos_ - start), line_};
    return;
  }
  throw ParseError(line_, "unexpected character '" + std::string(1, c) + "'");
}

}  // namespace disco::kb
