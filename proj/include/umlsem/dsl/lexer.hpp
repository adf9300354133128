#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "umlsem/source.hpp"

namespace umlsem::dsl {

struct Token {
  enum class Kind { Ident, Int, String, Punct, Newline, End };

  Kind kind = Kind::End;
  std::string text;  // identifier / punctuation spelling / decoded string
  std::int64_t int_value = 0;
  SourcePos pos;

  bool is(Kind k, std::string_view t) const { return kind == k && text == t; }
  bool is_punct(std::string_view t) const { return is(Kind::Punct, t); }
  bool is_word(std::string_view t) const { return is(Kind::Ident, t); }
  std::string describe() const;
};

/// Splits a document into tokens. `//` starts a comment running to the end
/// of the line. Newlines are significant (statement separators) and are
/// returned as tokens; the final token is always End.
std::vector<Token> tokenize(std::string_view text, std::string_view document = "<input>");

}  // namespace umlsem::dsl
