#include "umlsem/dsl/lexer.hpp"

#include <array>
#include <cctype>
#include <limits>

namespace umlsem::dsl {

std::string Token::describe() const {
  switch (kind) {
    case Kind::Ident: return "'" + text + "'";
    case Kind::Int: return "integer " + std::to_string(int_value);
    case Kind::String: return "string literal";
    case Kind::Punct: return "'" + text + "'";
    case Kind::Newline: return "end of line";
    case Kind::End: return "end of input";
  }
  return "token";
}

namespace {

constexpr std::array<std::string_view, 9> kTwoChar = {"..", "->", "--", "==", "!=", "<=", ">=", "&&", "||"};
constexpr std::string_view kOneChar = "{}()[]:;,.<>=!+-*/#";

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

std::vector<Token> tokenize(std::string_view text, std::string_view document) {
  std::vector<Token> out;
  std::string doc(document);
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto here = [&] { return SourcePos{doc, line, col}; };
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };

  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      out.push_back(Token{Token::Kind::Newline, "\n", 0, here()});
      advance(1);
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    SourcePos start = here();
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back(Token{Token::Kind::Ident, std::string(text.substr(i, j - i)), 0, start});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      std::int64_t v = 0;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        int d = text[j] - '0';
        if (v > (std::numeric_limits<std::int64_t>::max() - d) / 10)
          throw SyntaxError(start, {}, "integer literal out of range");
        v = v * 10 + d;
        ++j;
      }
      out.push_back(Token{Token::Kind::Int, std::string(text.substr(i, j - i)), v, start});
      advance(j - i);
      continue;
    }
    if (c == '"') {
      std::string value;
      advance(1);
      bool closed = false;
      while (i < text.size()) {
        char d = text[i];
        if (d == '\n') break;
        if (d == '"') {
          advance(1);
          closed = true;
          break;
        }
        if (d == '\\' && i + 1 < text.size()) {
          char e = text[i + 1];
          value += e == 'n' ? '\n' : e;
          advance(2);
          continue;
        }
        value += d;
        advance(1);
      }
      if (!closed) throw SyntaxError(start, {"closing '\"'"}, "unterminated string literal");
      out.push_back(Token{Token::Kind::String, std::move(value), 0, start});
      continue;
    }
    bool matched = false;
    if (i + 1 < text.size()) {
      std::string_view two = text.substr(i, 2);
      for (auto p : kTwoChar) {
        if (two == p) {
          out.push_back(Token{Token::Kind::Punct, std::string(p), 0, start});
          advance(2);
          matched = true;
          break;
        }
      }
    }
    if (matched) continue;
    if (kOneChar.find(c) != std::string_view::npos) {
      out.push_back(Token{Token::Kind::Punct, std::string(1, c), 0, start});
      advance(1);
      continue;
    }
    std::string shown = std::isprint(static_cast<unsigned char>(c)) ? std::string("character '") + c + "'"
                                                                     : std::string("non-printable character");
    throw SyntaxError(start, {}, shown);
  }
  out.push_back(Token{Token::Kind::End, "", 0, here()});
  return out;
}

}  // namespace umlsem::dsl
