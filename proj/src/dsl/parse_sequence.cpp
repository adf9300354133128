#include <set>

#include "parser_common.hpp"
#include "umlsem/dsl/parser.hpp"

namespace umlsem::dsl {

SequenceDiagramAst parse_sequence_diagram(std::string_view text, std::string_view document) {
  detail::Cursor c(text, document);
  SequenceDiagramAst ast;
  ast.document = std::string(document);
  c.skip_separators();
  if (c.accept_word("seq")) {
    ast.name = c.expect_ident("diagram name").text;
    c.end_statement();
  }
  std::vector<SourcePos> sender_pos;
  std::vector<SourcePos> receiver_pos;
  while (!c.at_end()) {
    const Token& t = c.peek();
    if (t.is_word("lifeline")) {
      Lifeline l;
      l.pos = c.next().pos;
      const Token& role = c.expect_ident("role name");
      l.role = role.text;
      if (ast.find_lifeline(l.role)) throw ResolveError(l.role, role.pos, "duplicate role");
      c.expect_punct(":");
      l.cls = c.qualified_name();
      ast.lifelines.push_back(std::move(l));
    } else if (t.is_word("msg")) {
      Interaction i;
      i.pos = c.next().pos;
      sender_pos.push_back(c.peek().pos);
      i.sender = c.expect_ident("sender role").text;
      c.expect_punct("->");
      receiver_pos.push_back(c.peek().pos);
      i.receiver = c.expect_ident("receiver role").text;
      c.accept_punct(":");
      i.selector = c.expect_ident("message selector").text;
      if (c.peek().is_punct("(")) i.args = detail::arg_patterns(c, /*allow_binders=*/false);
      ast.interactions.push_back(std::move(i));
    } else {
      c.fail({"'lifeline'", "'msg'"});
    }
    c.end_statement();
  }
  if (ast.interactions.empty()) c.fail({"'msg'"});
  for (std::size_t k = 0; k < ast.interactions.size(); ++k) {
    const auto& i = ast.interactions[k];
    if (!ast.find_lifeline(i.sender)) throw ResolveError(i.sender, sender_pos[k], "undeclared role");
    if (!ast.find_lifeline(i.receiver)) throw ResolveError(i.receiver, receiver_pos[k], "undeclared role");
  }
  return ast;
}

}  // namespace umlsem::dsl
