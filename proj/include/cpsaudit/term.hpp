#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>

namespace cpsaudit {

namespace ns {
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kSh = "http://www.w3.org/ns/shacl#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
}  // namespace ns

enum class TermKind : std::uint8_t { kIri, kString, kInteger, kBoolean };

// An IRI or a literal. Literals carry one of three datatypes; equality is
// structural (kind + lexical form).
//
// Ordering puts IRIs before literals and otherwise compares lexical forms,
// which is also the order used by the `<` comparison in rules and controls.
class Term {
 public:
  // Placeholder value (empty IRI); never produced by the factories below.
  Term() = default;

  static Term iri(std::string value);
  static Term string(std::string value);
  // Throws InvalidTerm unless `lexical` matches [+-]?[0-9]+.
  static Term integer(std::string lexical);
  static Term integer(long long value);
  static Term boolean(bool value);
  // Throws InvalidTerm unless `lexical` is exactly "true" or "false".
  static Term boolean(std::string_view lexical);
  // Without this, a string literal would pick the bool overload.
  static Term boolean(const char* lexical) { return boolean(std::string_view(lexical)); }

  TermKind kind() const { return kind_; }
  const std::string& lexical() const { return lexical_; }
  bool is_iri() const { return kind_ == TermKind::kIri; }
  bool is_literal() const { return kind_ != TermKind::kIri; }

  friend auto operator<=>(const Term&, const Term&) = default;
  friend bool operator==(const Term&, const Term&) = default;

 private:
  Term(TermKind kind, std::string lexical)
      : kind_(kind), lexical_(std::move(lexical)) {}

  TermKind kind_ = TermKind::kIri;
  std::string lexical_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept;
};

bool is_valid_iri(std::string_view iri);
bool is_integer_lexical(std::string_view lexical);

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  // Throws InvalidTerm when subject or predicate is not an IRI.
  static Triple make(Term subject, Term predicate, Term object);

  friend auto operator<=>(const Triple&, const Triple&) = default;
  friend bool operator==(const Triple&, const Triple&) = default;
};

enum class Section : std::uint8_t { kTbox, kAbox, kDerived };

std::string_view to_string(Section section);

// Prefix label -> namespace IRI.
using PrefixMap = std::map<std::string, std::string>;

// rdf, rdfs, sh and xsd bound to their standard namespaces.
PrefixMap standard_prefixes();

bool is_valid_prefix_label(std::string_view label);

// Throws UnknownPrefix when the label is unbound and InvalidTerm when `curie`
// has no ':' or the expansion is not a valid IRI.
Term expand_curie(const PrefixMap& prefixes, std::string_view curie);

struct Variable {
  std::string name;
  friend auto operator<=>(const Variable&, const Variable&) = default;
  friend bool operator==(const Variable&, const Variable&) = default;
};

using PatternSlot = std::variant<Term, Variable>;

struct TriplePattern {
  PatternSlot subject;
  PatternSlot predicate;
  PatternSlot object;
  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

// Variable name -> bound term.
using Binding = std::map<std::string, Term>;

Term rdf(std::string_view local);
Term rdfs(std::string_view local);
Term sh(std::string_view local);
Term xsd(std::string_view local);

}  // namespace cpsaudit
