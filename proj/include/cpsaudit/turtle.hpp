#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "cpsaudit/graph.hpp"
#include "cpsaudit/term.hpp"

namespace cpsaudit {

// Namespace under which blank nodes are skolemized.
inline constexpr std::string_view kSkolemNamespace = "urn:cpsaudit:genid:";

// Parses the supported Turtle subset into a graph whose triples all carry
// `section`: @prefix / PREFIX directives, CURIEs, <IRIs>, `a`, `;` and `,`
// lists, string / integer / boolean literals (with optional ^^xsd datatype),
// `[ ... ]` and `_:label` blank nodes, `#` comments.
//
// Blank nodes become IRIs under kSkolemNamespace, numbered in document order
// and salted with a hash of the text.
//
// Collections, long strings, language tags, decimals, doubles and @base are
// rejected with a ParseError. Unbound CURIE labels raise UnknownPrefix with a
// location.
Graph parse_turtle(std::string_view text,
                   const PrefixMap& base_prefixes = standard_prefixes(),
                   Section section = Section::kAbox);

// Deterministic Turtle: prefixes sorted by label, then one `s p o .` line per
// triple sorted by (subject IRI, predicate IRI, object). With `only` set,
// emits that section alone.
std::string serialize_turtle(const Graph& graph,
                             std::optional<Section> only = std::nullopt);

// Shortest CURIE for `iri` that re-parses to the same IRI, if any.
std::optional<std::string> compact_iri(const PrefixMap& prefixes,
                                       std::string_view iri);

// Turtle rendering: CURIE or <iri> for IRIs, quoted / bare literals.
std::string render_term(const Term& term, const PrefixMap& prefixes);
std::string render_term(const Term& term);

// Plain text form used in JSON: the IRI itself, or the Turtle literal.
std::string term_text(const Term& term);

std::string render_triple(const Triple& triple, const PrefixMap& prefixes);

std::string escape_string(std::string_view value);

}  // namespace cpsaudit
