#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpsaudit/graph.hpp"
#include "cpsaudit/term.hpp"

namespace cpsaudit {

// p(x) stands for the triple pattern (x, rdf:type, p); p(x, y) for (x, p, y).
//
// The predicate is normally an IRI. The generic form `triple(s, p, o)` is a
// binary atom whose predicate is a variable; the built-in RDFS rules need it.
struct Atom {
  PatternSlot predicate;
  std::vector<PatternSlot> args;  // one or two

  static Atom unary(Term cls, PatternSlot arg);
  static Atom binary(PatternSlot predicate, PatternSlot subject,
                     PatternSlot object);

  bool is_unary() const { return args.size() == 1; }
  TriplePattern pattern() const;

  friend bool operator==(const Atom&, const Atom&) = default;
};

enum class LiteralKind { kPositive, kNegated, kNotEqual, kLess };

// One body element: an atom (positive or under `not`) or a comparison.
// `x < y` compares terms in Term order; it lets symmetric patterns pick one
// orientation of a pair.
struct BodyLiteral {
  LiteralKind kind = LiteralKind::kPositive;
  Atom atom;               // kPositive / kNegated
  PatternSlot lhs, rhs;    // kNotEqual / kLess

  static BodyLiteral positive(Atom atom);
  static BodyLiteral negated(Atom atom);
  static BodyLiteral not_equal(PatternSlot lhs, PatternSlot rhs);
  static BodyLiteral less(PatternSlot lhs, PatternSlot rhs);

  bool is_atom() const {
    return kind == LiteralKind::kPositive || kind == LiteralKind::kNegated;
  }

  friend bool operator==(const BodyLiteral&, const BodyLiteral&) = default;
};

struct Rule {
  std::string id;
  Atom head;
  std::vector<BodyLiteral> body;

  // Set on rules produced by specialize_rules(): the generic rule's id and
  // the values substituted for its schema variables.
  std::string origin_id;
  Binding presets;

  const std::string& source_id() const {
    return origin_id.empty() ? id : origin_id;
  }
};

// Rules with unique ids plus the prefixes they were written with (used only
// for rendering).
class RuleSet {
 public:
  RuleSet() = default;

  // Throws DuplicateRule.
  void add(Rule rule);
  void append(const RuleSet& other);

  const std::vector<Rule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }
  const Rule* find(std::string_view id) const;

  const PrefixMap& prefixes() const { return prefixes_; }
  PrefixMap& prefixes() { return prefixes_; }

 private:
  std::vector<Rule> rules_;
  std::map<std::string, std::size_t, std::less<>> index_;
  PrefixMap prefixes_ = standard_prefixes();
};

// Namespace bare predicate names resolve against when the rule file does not
// bind the empty prefix.
inline constexpr std::string_view kDefaultRuleNamespace = "http://example.org/";

// Standard prefixes plus "" and ex, both bound to kDefaultRuleNamespace.
PrefixMap default_rule_prefixes();

struct RuleParseOptions {
  PrefixMap prefixes = default_rule_prefixes();
  // Rules without a `rule <name>:` label get id `<positional_prefix><n>`.
  std::string positional_prefix = "rule-";
};

// Prolog-style rules:
//
//   @prefix ex: <http://example.org/> .
//   rule r1: ex:b(a) :- ex:c(a), not ex:d(a, z), a != ex:x.
//
// Lowercase-initial bare identifiers in argument position are variables;
// constants are CURIEs, <IRIs>, "strings", integers, true / false. A bare
// predicate name resolves against the empty prefix.
RuleSet parse_rules(std::string_view text,
                    const RuleParseOptions& options = RuleParseOptions{});

struct SafetyViolation {
  std::string variable;
  std::string reason;
  friend bool operator==(const SafetyViolation&, const SafetyViolation&) = default;
};

// Empty iff every head variable and every comparison variable occurs in a
// positive body atom and every variable of a negated atom is either
// positively bound or occurs in that single negated atom only.
std::vector<SafetyViolation> check_safety(const Rule& rule);

// Throws SafetyError describing every unsafe rule.
void require_safe(const RuleSet& rules);

// What an atom can match: a predicate IRI, narrowed to one class for
// rdf:type atoms. Absent members are wildcards.
struct PredicateKey {
  std::optional<Term> predicate;
  std::optional<Term> cls;

  static PredicateKey of(const Atom& atom);
  bool overlaps(const PredicateKey& other) const;
  std::string render(const PrefixMap& prefixes) const;

  friend auto operator<=>(const PredicateKey&, const PredicateKey&) = default;
  friend bool operator==(const PredicateKey&, const PredicateKey&) = default;
};

struct Stratification {
  // Rule ids per stratum, each stratum sorted.
  std::vector<std::vector<std::string>> strata;
  // Head key -> last stratum in which a rule derives it.
  std::map<PredicateKey, std::size_t> derived_in;

  std::size_t stratum_of(std::string_view rule_id) const;
};

// Minimal rule-level stratification. Rule r depends on rule s when a body
// atom of r may match the head of s; negated dependencies force a strictly
// higher stratum. Throws NegativeCycle.
Stratification stratify(const RuleSet& rules);

// Type propagation and transitivity for rdfs:subClassOf, the same pair for
// rdfs:subPropertyOf, and rdfs:domain / rdfs:range typing.
RuleSet rdfs_rules();

// Rules whose predicate (or rdf:type class) positions hold variables match
// every key, which would make them depend on everything. When those
// variables are all bound by positive atoms with fixed keys (the "guard"),
// each guard solution in `graph` yields one copy of the rule with the
// variables replaced; the guard atoms stay in the body. Other rules are kept
// unchanged. Output is sorted by id.
RuleSet specialize_rules(const RuleSet& rules, const Graph& graph);

std::string render_atom(const Atom& atom, const PrefixMap& prefixes);
std::string render_literal(const BodyLiteral& literal, const PrefixMap& prefixes);
std::string render_rule(const Rule& rule, const PrefixMap& prefixes);
std::string render_slot(const PatternSlot& slot, const PrefixMap& prefixes);

}  // namespace cpsaudit
