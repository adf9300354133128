#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "umlsem/dsl/ast.hpp"
#include "umlsem/dsl/lexer.hpp"

namespace umlsem::dsl::detail {

/// Cursor over a token vector with the small helpers every document
/// grammar needs.
class Cursor {
 public:
  Cursor(std::string_view text, std::string_view document);

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at_end() const { return peek().kind == Token::Kind::End; }

  bool accept_punct(std::string_view p);
  bool accept_word(std::string_view w);
  const Token& expect_punct(std::string_view p);
  const Token& expect_word(std::string_view w);
  /// An identifier that is not one of the reserved words.
  const Token& expect_ident(std::string_view what = "identifier");
  std::int64_t expect_int(std::string_view what = "integer");

  /// Skips newlines and ';'.
  void skip_separators();
  /// Statement end: newline, ';', or (not consumed) '}' / end of input.
  void end_statement();

  [[noreturn]] void fail(std::vector<std::string> expected) const;

  /// Dotted name a.b.C
  std::string qualified_name();

  /// Literal value: integer (optionally negative), true, false, string.
  bool at_literal() const;
  Value literal();

  TypeRef type_ref();
  Expr expression();

  const std::string& document() const { return document_; }

 private:
  Expr parse_or();
  Expr parse_and();
  Expr parse_not();
  Expr parse_cmp();
  Expr parse_add();
  Expr parse_atom();

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::string document_;
};

bool is_reserved(std::string_view word);

/// Parses "pattern list" arguments: literals, '_' and (optionally) binders.
std::vector<ArgPattern> arg_patterns(Cursor& c, bool allow_binders);

}  // namespace umlsem::dsl::detail
