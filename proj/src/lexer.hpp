#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "chronos/error.hpp"

namespace chronos::detail {

enum class Tok { Ident, Var, Int, LBracket, RBracket, LParen, RParen, Comma, Amp, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::string describe(const Token& t);

/// Splits text into tokens. `#` starts a comment running to end of line.
std::vector<Token> tokenize(std::string_view text);

class TokenStream {
 public:
  explicit TokenStream(std::string_view text) : tokens_(tokenize(text)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  bool at(Tok kind) const { return peek().kind == kind; }
  Token take() {
    Token t = peek();
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool accept(Tok kind) {
    if (!at(kind)) return false;
    take();
    return true;
  }
  Token expect(Tok kind, const char* what) {
    if (!at(kind)) fail(std::string("expected ") + what + ", found " + describe(peek()));
    return take();
  }
  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(message, peek().line, peek().column);
  }
  [[noreturn]] void fail_at(const Token& t, const std::string& message) const {
    throw SyntaxError(message, t.line, t.column);
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace chronos::detail
