#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cpsaudit/graph.hpp"
#include "cpsaudit/rules.hpp"

namespace cpsaudit {

// One way a derived triple was produced.
struct Derivation {
  Triple triple;
  std::string rule_id;
  Binding bindings;
  std::size_t iteration = 0;  // >= 1; input facts have iteration 0
  // Instantiated positive body atoms, in body order.
  std::vector<Triple> premises;
  // Instantiated negated atoms (fresh variables left in place); none of them
  // matched when the rule fired.
  std::vector<TriplePattern> absent;
};

struct SaturationOptions {
  std::size_t max_iterations = 10000;
  // Per-triple cap on recorded derivations.
  std::size_t derivation_cap = 8;
};

struct SaturationResult {
  Graph graph;  // input plus DERIVED triples
  std::vector<Derivation> derivations;  // ordered by (iteration, rule id)
  RuleSet evaluated_rules;              // after specialization
  Stratification stratification;
  std::size_t iterations = 0;

  std::size_t derived_count() const { return graph.count(Section::kDerived); }
};

// Stratified semi-naive evaluation to the unique fixpoint. Strata run in
// order; each stratum iterates until a round adds nothing, joining only
// against the previous round's new triples. Negated atoms are checked
// against everything derived so far, which for a stratified program means
// the completed lower strata plus the input.
//
// Head instances that are not valid triples (literal subject or predicate)
// are dropped. Throws NegativeCycle (checked first), SafetyError, IterationLimit.
SaturationResult saturate(const Graph& input, const RuleSet& rules,
                          const SaturationOptions& options = {});

struct ExplanationNode {
  Triple fact;
  // Empty for asserted facts (leaves).
  std::string rule_id;
  Binding bindings;
  std::size_t iteration = 0;
  std::vector<TriplePattern> absent;
  std::vector<ExplanationNode> children;

  bool derived() const { return !rule_id.empty(); }
  std::size_t depth() const;
};

// Derivation tree for `triple`, always following the earliest recorded
// derivation, so every child was known strictly before its parent. Throws
// NotDerived when the triple has no derivation.
ExplanationNode explain(const std::vector<Derivation>& derivations,
                        const Triple& triple);

// Indented text form, two spaces per level.
std::string render_explanation(const ExplanationNode& node,
                               const PrefixMap& prefixes);

}  // namespace cpsaudit
