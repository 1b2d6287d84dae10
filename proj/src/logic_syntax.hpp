#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cpsaudit/rules.hpp"
#include "text_cursor.hpp"

namespace cpsaudit::detail {

// Recursive-descent pieces shared by the rule and control parsers.
class LogicParser {
 public:
  LogicParser(std::string_view text, PrefixMap prefixes)
      : cursor_(text), prefixes_(std::move(prefixes)) {}

  TextCursor& cursor() { return cursor_; }
  const PrefixMap& prefixes() const { return prefixes_; }

  // Consumes `@prefix label: <iri> .` if present.
  bool try_prefix_directive();

  Atom parse_atom();
  BodyLiteral parse_literal();
  // One or more comma-separated literals.
  std::vector<BodyLiteral> parse_literals();

  PatternSlot parse_arg();

  // Identifier made of [A-Za-z0-9_-]; empty when none.
  std::string read_identifier();

 private:
  enum class TokenKind { kBare, kCurie, kIri, kString, kInteger };
  struct Token {
    TokenKind kind;
    std::string text;   // bare name, CURIE label, IRI or literal lexical
    std::string local;  // CURIE local part
    std::size_t offset;
  };

  Token read_token();
  PatternSlot to_arg(const Token& token) const;
  Term to_predicate(const Token& token) const;
  Atom finish_atom(const Token& name);

  TextCursor cursor_;
  PrefixMap prefixes_;
};

}  // namespace cpsaudit::detail
