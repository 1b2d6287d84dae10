#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpsaudit/graph.hpp"
#include "cpsaudit/rules.hpp"

namespace cpsaudit {

enum class Severity { kViolation, kWarning };

std::string_view to_string(Severity severity);

// One sh:property of a node shape.
struct PropertyRequirement {
  Term path;
  std::size_t min_count = 1;
  std::optional<std::size_t> max_count;
  // Non-empty: every value must be typed with at least one of these.
  std::vector<Term> allowed_classes;
  std::optional<Term> datatype;
};

// Completeness constraint on every instance of target_class.
struct ClassShape {
  Term id;
  Term target_class;
  std::vector<PropertyRequirement> requirements;
};

// Reads every sh:NodeShape with an sh:targetClass (one ClassShape per
// target class), sorted by (id, target class). sh:minCount defaults to 1.
// Throws MalformedShape.
std::vector<ClassShape> load_shacl_subset(const Graph& shapes);

// Security or safety control: every solution of a violation pattern for a
// focus bound by the target atom is a finding.
//
//   control network-separation severity Violation "{x} reaches {y}"
//     :- ana:OperationalHost(x) | ana:OfficeHost(y), ana:connected(x, y)
//                               ; ana:OfficeHost(y), ana:connected(y, x) .
//
// `;` separates alternative patterns; a (focus, bindings) pair found by
// several alternatives is reported once.
struct ControlShape {
  std::string id;
  Severity severity = Severity::kViolation;
  std::string message;  // {var} placeholders
  Atom target;
  std::string focus;
  std::vector<std::vector<BodyLiteral>> alternatives;
};

// Throws ParseError, or SafetyError when a pattern variable in a negated
// atom or comparison is neither the focus nor bound by an earlier positive
// atom (fresh variables of a single negated atom excepted), or when a
// message placeholder is not bound in every alternative.
std::vector<ControlShape> parse_control_shapes(
    std::string_view text, const PrefixMap& prefixes = default_rule_prefixes());

struct ValidationResult {
  std::string shape;  // shape IRI for class shapes, control id otherwise
  Severity severity = Severity::kViolation;
  Term focus;
  Binding bindings;
  std::string message;

  friend bool operator==(const ValidationResult&, const ValidationResult&) = default;
};

struct ValidationReport {
  bool conforms = true;
  std::vector<ValidationResult> results;

  // Sorts results by (severity, shape, focus, message, bindings) and
  // recomputes conforms.
  void finalize();
  std::size_t violation_count() const;
};

// One result per (focus, requirement) count failure and per offending value
// (wrong class or datatype).
ValidationReport validate_classes(const Graph& graph,
                                  const std::vector<ClassShape>& shapes);

// One result per distinct (focus, bindings) solution. Bindings hold every
// non-fresh pattern variable except the focus.
ValidationReport validate_controls(const Graph& graph,
                                   const std::vector<ControlShape>& shapes);

enum class ReportFormat { kText, kJson };

// Text: `SEVERITY shape focus: message` per result, or "conforms: true".
// JSON: {"conforms", "results": [{"bindings", "focus", "message",
// "severity", "shape"}]} with sorted keys; terms as raw IRIs or Turtle
// literals.
std::string render_report(const ValidationReport& report, ReportFormat format,
                          const PrefixMap& prefixes);

}  // namespace cpsaudit
