#include "cpsaudit/turtle.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <map>
#include <tuple>

#include "cpsaudit/error.hpp"
#include "text_cursor.hpp"

namespace cpsaudit {

namespace {

using detail::is_name_char;
using detail::TextCursor;

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

class TurtleParser {
 public:
  TurtleParser(std::string_view text, const PrefixMap& base, Section section)
      : cursor_(text), prefixes_(base), section_(section) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(text)));
    skolem_base_ = std::string(kSkolemNamespace) + buf + "-b";
  }

  Graph run() {
    while (true) {
      cursor_.skip_blank();
      if (cursor_.eof()) break;
      if (cursor_.peek() == '@') {
        directive();
      } else if (sparql_keyword("PREFIX")) {
        prefix_body(/*dotted=*/false);
      } else if (sparql_keyword("BASE")) {
        cursor_.fail("base IRIs are not supported");
      } else {
        statement();
        cursor_.skip_blank();
        cursor_.expect(".", "'.' after statement");
      }
    }
    for (const auto& [label, iri] : prefixes_) graph_.bind_prefix(label, iri);
    return std::move(graph_);
  }

 private:
  bool sparql_keyword(std::string_view word) {
    const auto rest = cursor_.text().substr(cursor_.offset());
    if (rest.size() <= word.size()) return false;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (std::toupper(static_cast<unsigned char>(rest[i])) != word[i]) {
        return false;
      }
    }
    if (!detail::is_space(rest[word.size()])) return false;
    cursor_.advance(word.size());
    return true;
  }

  // True when `word` starts here and is not the beginning of a longer name.
  bool keyword(std::string_view word) {
    if (!cursor_.starts_with(word)) return false;
    const char next = cursor_.peek(word.size());
    if (next == ':') return false;
    if (next == '.') {
      const char after = cursor_.peek(word.size() + 1);
      if (is_name_char(after) || after == ':') return false;
    } else if (is_name_char(next)) {
      return false;
    }
    cursor_.advance(word.size());
    return true;
  }

  void directive() {
    if (cursor_.try_keyword("@prefix")) {
      prefix_body(/*dotted=*/true);
      return;
    }
    if (cursor_.starts_with("@base")) {
      cursor_.fail("base IRIs are not supported");
    }
    cursor_.fail("unknown directive");
  }

  void prefix_body(bool dotted) {
    cursor_.skip_blank();
    const std::size_t at = cursor_.offset();
    const std::string label(cursor_.read_name_chars());
    if (!is_valid_prefix_label(label)) cursor_.fail_at(at, "invalid prefix label");
    cursor_.expect(":", "':' after prefix label");
    cursor_.skip_blank();
    const std::string iri = cursor_.read_iri_ref();
    if (dotted) {
      cursor_.skip_blank();
      cursor_.expect(".", "'.' after @prefix directive");
    }
    prefixes_[label] = iri;
  }

  Term fresh_blank() {
    return Term::iri(skolem_base_ + std::to_string(blank_counter_++));
  }

  Term labelled_blank() {
    cursor_.advance(2);  // "_:"
    const std::size_t at = cursor_.offset();
    const std::string label = cursor_.read_local_name();
    if (label.empty()) cursor_.fail_at(at, "empty blank node label");
    const auto it = blank_labels_.find(label);
    if (it != blank_labels_.end()) return it->second;
    const Term node = fresh_blank();
    blank_labels_.emplace(label, node);
    return node;
  }

  Term prefixed_name() {
    const std::size_t at = cursor_.offset();
    const std::string label(cursor_.read_name_chars());
    if (cursor_.peek() != ':') {
      cursor_.fail_at(at, label.empty() ? "unexpected character"
                                        : "expected prefixed name");
    }
    if (!is_valid_prefix_label(label)) cursor_.fail_at(at, "invalid prefix label");
    cursor_.advance();
    const std::string local = cursor_.read_local_name();
    const auto it = prefixes_.find(label);
    if (it == prefixes_.end()) cursor_.fail_unknown_prefix(at, label);
    const std::string iri = it->second + local;
    if (!is_valid_iri(iri)) cursor_.fail_at(at, "prefixed name expands to an invalid IRI");
    return Term::iri(iri);
  }

  Term iri() {
    if (cursor_.peek() == '<') return Term::iri(cursor_.read_iri_ref());
    return prefixed_name();
  }

  Term subject() {
    const char c = cursor_.peek();
    if (c == '<') return iri();
    if (c == '_' && cursor_.peek(1) == ':') return labelled_blank();
    if (c == '[') return blank_property_list();
    if (c == '(') cursor_.fail("collections are not supported");
    if (c == '"' || c == '\'' || detail::is_digit(c) || c == '+' || c == '-') {
      cursor_.fail("literal not allowed as subject");
    }
    return prefixed_name();
  }

  Term verb() {
    if (keyword("a")) return rdf("type");
    const char c = cursor_.peek();
    if (c == '[' || c == '"' || c == '\'' || (c == '_' && cursor_.peek(1) == ':')) {
      cursor_.fail("predicate must be an IRI");
    }
    return iri();
  }

  Term literal_string() {
    std::string value = cursor_.read_quoted_string();
    if (cursor_.peek() == '@') cursor_.fail("language tags are not supported");
    if (!cursor_.try_consume("^^")) return Term::string(std::move(value));
    const std::size_t at = cursor_.offset();
    const Term datatype = iri();
    try {
      if (datatype == xsd("string")) return Term::string(std::move(value));
      if (datatype == xsd("integer")) return Term::integer(std::move(value));
      if (datatype == xsd("boolean")) return Term::boolean(value);
    } catch (const InvalidTerm& e) {
      cursor_.fail_at(at, e.what());
    }
    cursor_.fail_at(at, "unsupported datatype");
  }

  Term object() {
    const char c = cursor_.peek();
    if (c == '[') return blank_property_list();
    if (c == '(') cursor_.fail("collections are not supported");
    if (c == '"' || c == '\'') return literal_string();
    if (detail::is_digit(c) || c == '+' || c == '-') {
      return Term::integer(cursor_.read_integer());
    }
    if (c == '.' && detail::is_digit(cursor_.peek(1))) {
      cursor_.fail("decimal literals are not supported");
    }
    if (c == '<') return iri();
    if (c == '_' && cursor_.peek(1) == ':') return labelled_blank();
    if (keyword("true")) return Term::boolean(true);
    if (keyword("false")) return Term::boolean(false);
    return prefixed_name();
  }

  void emit(const Term& s, const Term& p, const Term& o) {
    graph_.insert(Triple{s, p, o}, section_);
  }

  void predicate_object_list(const Term& subj) {
    while (true) {
      cursor_.skip_blank();
      const Term pred = verb();
      while (true) {
        cursor_.skip_blank();
        const Term obj = object();
        emit(subj, pred, obj);
        cursor_.skip_blank();
        if (!cursor_.try_consume(",")) break;
      }
      if (!cursor_.try_consume(";")) return;
      cursor_.skip_blank();
      while (cursor_.try_consume(";")) cursor_.skip_blank();
      const char next = cursor_.peek();
      if (cursor_.eof() || next == '.' || next == ']') return;
    }
  }

  Term blank_property_list() {
    const std::size_t start = cursor_.offset();
    cursor_.expect("[", "'['");
    const Term node = fresh_blank();
    cursor_.skip_blank();
    if (cursor_.try_consume("]")) return node;
    if (++depth_ > kMaxDepth) cursor_.fail_at(start, "blank nodes nested too deeply");
    predicate_object_list(node);
    cursor_.skip_blank();
    if (!cursor_.try_consume("]")) cursor_.fail("expected ']'");
    --depth_;
    return node;
  }

  void statement() {
    const bool bracketed = cursor_.peek() == '[';
    const Term subj = subject();
    cursor_.skip_blank();
    if (bracketed && cursor_.peek() == '.') return;
    predicate_object_list(subj);
  }

  static constexpr int kMaxDepth = 256;

  TextCursor cursor_;
  PrefixMap prefixes_;
  Section section_;
  Graph graph_;
  std::string skolem_base_;
  std::size_t blank_counter_ = 0;
  std::map<std::string, Term> blank_labels_;
  int depth_ = 0;
};

bool is_compact_local(std::string_view local) {
  if (local.empty()) return true;
  auto inner = [](char c) {
    return detail::is_alpha(c) || detail::is_digit(c) || c == '_' || c == '-' ||
           c == '.';
  };
  const char first = local.front();
  const char last = local.back();
  if (!(detail::is_alpha(first) || detail::is_digit(first) || first == '_')) {
    return false;
  }
  if (last == '.') return false;
  return std::all_of(local.begin(), local.end(), inner);
}

}  // namespace

Graph parse_turtle(std::string_view text, const PrefixMap& base_prefixes,
                   Section section) {
  try {
    return TurtleParser(text, base_prefixes, section).run();
  } catch (const InvalidTerm& e) {
    // Anything the grammar let through but the term model rejects.
    throw ParseError(SourceLocation{}, e.what(), "");
  }
}

std::optional<std::string> compact_iri(const PrefixMap& prefixes,
                                       std::string_view iri) {
  std::optional<std::string> best;
  std::size_t best_len = 0;
  for (const auto& [label, ns] : prefixes) {
    if (ns.empty() || !iri.starts_with(ns)) continue;
    const auto local = iri.substr(ns.size());
    if (!is_compact_local(local)) continue;
    if (!best || ns.size() > best_len) {
      best = label + ":" + std::string(local);
      best_len = ns.size();
    }
  }
  return best;
}

std::string escape_string(std::string_view value) {
  std::string out;
  out.reserve(value.size() + 2);
  for (const char c : value) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X", static_cast<unsigned>(c));
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  return out;
}

std::string render_term(const Term& term, const PrefixMap& prefixes) {
  switch (term.kind()) {
    case TermKind::kIri:
      if (auto curie = compact_iri(prefixes, term.lexical())) return *curie;
      return "<" + term.lexical() + ">";
    case TermKind::kString:
      return "\"" + escape_string(term.lexical()) + "\"";
    case TermKind::kInteger:
    case TermKind::kBoolean:
      return term.lexical();
  }
  return term.lexical();
}

std::string render_term(const Term& term) { return render_term(term, PrefixMap{}); }

std::string term_text(const Term& term) {
  if (term.is_iri()) return term.lexical();
  return render_term(term);
}

std::string render_triple(const Triple& triple, const PrefixMap& prefixes) {
  const std::string predicate =
      triple.predicate == rdf("type") ? "a" : render_term(triple.predicate, prefixes);
  return render_term(triple.subject, prefixes) + " " + predicate + " " +
         render_term(triple.object, prefixes) + " .";
}

std::string serialize_turtle(const Graph& graph, std::optional<Section> only) {
  std::string out;
  for (const auto& [label, iri] : graph.prefixes()) {
    out += "@prefix " + label + ": <" + iri + "> .\n";
  }
  using Key = std::tuple<std::string, std::string, std::string>;
  std::vector<std::pair<Key, Triple>> rows;
  for (std::size_t i = 0; i < graph.size(); ++i) {
    if (only && graph.section_at(i) != *only) continue;
    Triple t = graph.triple_at(i);
    Key key{t.subject.lexical(), t.predicate.lexical(), render_term(t.object)};
    rows.emplace_back(std::move(key), std::move(t));
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (!rows.empty()) out += "\n";
  for (const auto& row : rows) {
    out += render_triple(row.second, graph.prefixes());
    out += "\n";
  }
  return out;
}

}  // namespace cpsaudit
