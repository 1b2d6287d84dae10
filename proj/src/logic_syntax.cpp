#include "logic_syntax.hpp"

namespace cpsaudit::detail {

namespace {

bool is_ident_char(char c) {
  return is_alpha(c) || is_digit(c) || c == '_' || c == '-';
}

bool is_variable_name(std::string_view name) {
  if (name.empty()) return false;
  const char first = name.front();
  if (!((first >= 'a' && first <= 'z') || first == '_')) return false;
  for (const char c : name) {
    if (!(is_alpha(c) || is_digit(c) || c == '_')) return false;
  }
  return true;
}

}  // namespace

bool LogicParser::try_prefix_directive() {
  if (!cursor_.try_keyword("@prefix")) return false;
  cursor_.skip_blank();
  const std::size_t at = cursor_.offset();
  const std::string label(cursor_.read_name_chars());
  if (!is_valid_prefix_label(label)) cursor_.fail_at(at, "invalid prefix label");
  cursor_.expect(":", "':' after prefix label");
  cursor_.skip_blank();
  prefixes_[label] = cursor_.read_iri_ref();
  cursor_.skip_blank();
  cursor_.expect(".", "'.' after @prefix directive");
  return true;
}

std::string LogicParser::read_identifier() {
  std::string out;
  while (!cursor_.eof() && is_ident_char(cursor_.peek())) {
    out.push_back(cursor_.peek());
    cursor_.advance();
  }
  return out;
}

LogicParser::Token LogicParser::read_token() {
  cursor_.skip_blank();
  const std::size_t at = cursor_.offset();
  const char c = cursor_.peek();
  if (c == '<') return Token{TokenKind::kIri, cursor_.read_iri_ref(), {}, at};
  if (c == '"' || c == '\'') {
    return Token{TokenKind::kString, cursor_.read_quoted_string(), {}, at};
  }
  if (is_digit(c) || c == '+' || c == '-') {
    return Token{TokenKind::kInteger, cursor_.read_integer(), {}, at};
  }
  const std::string run(cursor_.read_name_chars());
  if (cursor_.peek() == ':' && cursor_.peek(1) != '-') {
    if (!is_valid_prefix_label(run)) cursor_.fail_at(at, "invalid prefix label");
    cursor_.advance();
    return Token{TokenKind::kCurie, run, cursor_.read_local_name(), at};
  }
  std::size_t keep = run.size();
  while (keep > 0 && run[keep - 1] == '.') --keep;
  cursor_.reset(at + keep);
  if (keep == 0) cursor_.fail_at(at, "expected a term");
  return Token{TokenKind::kBare, run.substr(0, keep), {}, at};
}

PatternSlot LogicParser::to_arg(const Token& token) const {
  switch (token.kind) {
    case TokenKind::kIri:
      return Term::iri(token.text);
    case TokenKind::kString:
      return Term::string(token.text);
    case TokenKind::kInteger:
      return Term::integer(token.text);
    case TokenKind::kCurie: {
      const auto it = prefixes_.find(token.text);
      if (it == prefixes_.end()) cursor_.fail_unknown_prefix(token.offset, token.text);
      const std::string iri = it->second + token.local;
      if (!is_valid_iri(iri)) cursor_.fail_at(token.offset, "invalid IRI");
      return Term::iri(iri);
    }
    case TokenKind::kBare:
      if (token.text == "true") return Term::boolean(true);
      if (token.text == "false") return Term::boolean(false);
      if (!is_variable_name(token.text)) {
        cursor_.fail_at(token.offset,
                        "constants must be written as CURIEs or <IRIs>");
      }
      return Variable{token.text};
  }
  cursor_.fail_at(token.offset, "expected a term");
}

Term LogicParser::to_predicate(const Token& token) const {
  switch (token.kind) {
    case TokenKind::kIri:
      return Term::iri(token.text);
    case TokenKind::kCurie:
      return std::get<Term>(to_arg(token));
    case TokenKind::kBare: {
      const auto it = prefixes_.find("");
      if (it == prefixes_.end()) cursor_.fail_unknown_prefix(token.offset, "");
      const std::string iri = it->second + token.text;
      if (!is_valid_iri(iri)) cursor_.fail_at(token.offset, "invalid predicate name");
      return Term::iri(iri);
    }
    default:
      cursor_.fail_at(token.offset, "predicate must be an IRI");
  }
}

Atom LogicParser::finish_atom(const Token& name) {
  cursor_.expect("(", "'('");
  std::vector<PatternSlot> args;
  while (true) {
    cursor_.skip_blank();
    args.push_back(parse_arg());
    cursor_.skip_blank();
    if (cursor_.try_consume(",")) continue;
    cursor_.expect(")", "',' or ')'");
    break;
  }
  if (name.kind == TokenKind::kBare && name.text == "triple" && args.size() == 3) {
    if (const auto* p = std::get_if<Term>(&args[1]); p && !p->is_iri()) {
      cursor_.fail_at(name.offset, "predicate must be an IRI");
    }
    return Atom::binary(args[1], args[0], args[2]);
  }
  if (args.size() > 2) cursor_.fail_at(name.offset, "atoms take one or two arguments");
  const Term predicate = to_predicate(name);
  if (args.size() == 1) return Atom::unary(predicate, args[0]);
  return Atom::binary(predicate, args[0], args[1]);
}

PatternSlot LogicParser::parse_arg() {
  cursor_.skip_blank();
  return to_arg(read_token());
}

Atom LogicParser::parse_atom() {
  const Token name = read_token();
  cursor_.skip_blank();
  if (cursor_.peek() != '(') cursor_.fail("expected '(' after predicate");
  return finish_atom(name);
}

BodyLiteral LogicParser::parse_literal() {
  cursor_.skip_blank();
  if (cursor_.try_keyword("not")) {
    cursor_.skip_blank();
    return BodyLiteral::negated(parse_atom());
  }
  const Token first = read_token();
  cursor_.skip_blank();
  if (cursor_.peek() == '(') return BodyLiteral::positive(finish_atom(first));
  const PatternSlot lhs = to_arg(first);
  cursor_.skip_blank();
  if (cursor_.try_consume("!=")) return BodyLiteral::not_equal(lhs, parse_arg());
  if (cursor_.try_consume("<")) return BodyLiteral::less(lhs, parse_arg());
  cursor_.fail("expected '(', '!=' or '<'");
}

std::vector<BodyLiteral> LogicParser::parse_literals() {
  std::vector<BodyLiteral> out;
  while (true) {
    out.push_back(parse_literal());
    cursor_.skip_blank();
    if (!cursor_.try_consume(",")) return out;
  }
}

}  // namespace cpsaudit::detail
