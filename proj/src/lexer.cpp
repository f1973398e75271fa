#include "lexer.hpp"

#include <cctype>

namespace chronos::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Ident: return "identifier '" + t.text + "'";
    case Tok::Var: return "variable '?" + t.text + "'";
    case Tok::Int: return "number " + t.text;
    case Tok::End: return "end of input";
    default: return "'" + t.text + "'";
  }
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };

  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    int tl = line;
    int tc = column;
    auto single = [&](Tok kind) {
      out.push_back({kind, std::string(1, c), tl, tc});
      advance(1);
    };
    switch (c) {
      case '[': single(Tok::LBracket); continue;
      case ']': single(Tok::RBracket); continue;
      case '(': single(Tok::LParen); continue;
      case ')': single(Tok::RParen); continue;
      case ',': single(Tok::Comma); continue;
      case '&': single(Tok::Amp); continue;
      default: break;
    }
    if (c == '?') {
      std::size_t j = i + 1;
      if (j >= text.size() || !ident_start(text[j]))
        throw SyntaxError("expected variable name after '?'", tl, tc);
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back({Tok::Var, std::string(text.substr(i + 1, j - i - 1)), tl, tc});
      advance(j - i);
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j < text.size() && ident_char(text[j]))
        throw SyntaxError("identifiers must not start with a digit", tl, tc);
      out.push_back({Tok::Int, std::string(text.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", tl, tc);
  }
  out.push_back({Tok::End, "", line, column});
  return out;
}

}  // namespace chronos::detail
