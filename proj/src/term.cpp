#include "cpsaudit/term.hpp"

#include <algorithm>
#include <functional>

#include "cpsaudit/error.hpp"

namespace cpsaudit {

namespace {

bool is_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string format_location(const SourceLocation& where) {
  return std::to_string(where.line) + ":" + std::to_string(where.column);
}

}  // namespace

ParseError::ParseError(SourceLocation where, std::string message,
                       std::string snippet)
    : Error(format_location(where) + ": " + message +
            (snippet.empty() ? std::string() : " near '" + snippet + "'")),
      where_(where),
      message_(std::move(message)),
      snippet_(std::move(snippet)) {}

UnknownPrefix::UnknownPrefix(std::string label,
                             std::optional<SourceLocation> where)
    : Error((where ? format_location(*where) + ": " : std::string()) +
            "unknown prefix '" + label + ":'"),
      label_(std::move(label)),
      where_(where) {}

namespace {
std::string join_cycle(const std::vector<std::string>& cycle) {
  std::string out = "negative cycle through ";
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (i) out += " -> ";
    out += cycle[i];
  }
  return out;
}
}  // namespace

NegativeCycle::NegativeCycle(std::vector<std::string> cycle)
    : Error(join_cycle(cycle)), cycle_(std::move(cycle)) {}

IterationLimit::IterationLimit(std::size_t limit)
    : Error("saturation exceeded " + std::to_string(limit) + " iterations"),
      limit_(limit) {}

bool is_valid_iri(std::string_view iri) {
  if (iri.empty() || !is_alpha(iri.front())) return false;
  std::size_t colon = std::string_view::npos;
  for (std::size_t i = 0; i < iri.size(); ++i) {
    const char c = iri[i];
    if (static_cast<unsigned char>(c) <= 0x20) return false;
    switch (c) {
      case '<': case '>': case '"': case '{': case '}':
      case '|': case '^': case '`': case '\\':
        return false;
      default:
        break;
    }
    if (colon == std::string_view::npos) {
      if (c == ':') {
        colon = i;
      } else if (!(is_alpha(c) || is_digit(c) || c == '+' || c == '-' ||
                   c == '.')) {
        colon = 0;  // not a scheme character; no scheme possible
      }
    }
  }
  return colon != std::string_view::npos && colon > 0;
}

bool is_integer_lexical(std::string_view lexical) {
  std::size_t i = 0;
  if (i < lexical.size() && (lexical[i] == '+' || lexical[i] == '-')) ++i;
  if (i == lexical.size()) return false;
  return std::all_of(lexical.begin() + static_cast<std::ptrdiff_t>(i),
                     lexical.end(), is_digit);
}

Term Term::iri(std::string value) {
  if (!is_valid_iri(value)) {
    throw InvalidTerm("invalid IRI '" + value + "'");
  }
  return Term(TermKind::kIri, std::move(value));
}

Term Term::string(std::string value) {
  return Term(TermKind::kString, std::move(value));
}

Term Term::integer(std::string lexical) {
  if (!is_integer_lexical(lexical)) {
    throw InvalidTerm("invalid integer literal '" + lexical + "'");
  }
  return Term(TermKind::kInteger, std::move(lexical));
}

Term Term::integer(long long value) {
  return Term(TermKind::kInteger, std::to_string(value));
}

Term Term::boolean(bool value) {
  return Term(TermKind::kBoolean, value ? "true" : "false");
}

Term Term::boolean(std::string_view lexical) {
  if (lexical != "true" && lexical != "false") {
    throw InvalidTerm("invalid boolean literal '" + std::string(lexical) + "'");
  }
  return Term(TermKind::kBoolean, std::string(lexical));
}

std::size_t TermHash::operator()(const Term& t) const noexcept {
  return std::hash<std::string>{}(t.lexical()) * 31 +
         static_cast<std::size_t>(t.kind());
}

Triple Triple::make(Term subject, Term predicate, Term object) {
  if (!subject.is_iri()) throw InvalidTerm("triple subject must be an IRI");
  if (!predicate.is_iri()) throw InvalidTerm("triple predicate must be an IRI");
  return Triple{std::move(subject), std::move(predicate), std::move(object)};
}

std::string_view to_string(Section section) {
  switch (section) {
    case Section::kTbox: return "tbox";
    case Section::kAbox: return "abox";
    case Section::kDerived: return "derived";
  }
  return "?";
}

PrefixMap standard_prefixes() {
  return PrefixMap{{"rdf", std::string(ns::kRdf)},
                   {"rdfs", std::string(ns::kRdfs)},
                   {"sh", std::string(ns::kSh)},
                   {"xsd", std::string(ns::kXsd)}};
}

bool is_valid_prefix_label(std::string_view label) {
  if (label.empty()) return true;
  if (!is_alpha(label.front()) || label.back() == '.') return false;
  return std::all_of(label.begin(), label.end(), [](char c) {
    return is_alpha(c) || is_digit(c) || c == '_' || c == '-' || c == '.';
  });
}

Term expand_curie(const PrefixMap& prefixes, std::string_view curie) {
  const auto colon = curie.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidTerm("'" + std::string(curie) + "' is not a CURIE");
  }
  const std::string label(curie.substr(0, colon));
  const auto it = prefixes.find(label);
  if (it == prefixes.end()) throw UnknownPrefix(label);
  return Term::iri(it->second + std::string(curie.substr(colon + 1)));
}

Term rdf(std::string_view local) {
  return Term::iri(std::string(ns::kRdf) + std::string(local));
}
Term rdfs(std::string_view local) {
  return Term::iri(std::string(ns::kRdfs) + std::string(local));
}
Term sh(std::string_view local) {
  return Term::iri(std::string(ns::kSh) + std::string(local));
}
Term xsd(std::string_view local) {
  return Term::iri(std::string(ns::kXsd) + std::string(local));
}

}  // namespace cpsaudit
