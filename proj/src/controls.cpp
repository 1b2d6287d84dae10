#include <algorithm>
#include <set>

#include "cpsaudit/error.hpp"
#include "cpsaudit/shapes.hpp"
#include "cpsaudit/turtle.hpp"
#include "evaluator.hpp"
#include "logic_syntax.hpp"

namespace cpsaudit {

namespace {

void slot_vars(const PatternSlot& slot, std::vector<std::string>& out) {
  if (const auto* v = std::get_if<Variable>(&slot)) out.push_back(v->name);
}

std::vector<std::string> vars_of(const BodyLiteral& lit) {
  std::vector<std::string> out;
  if (lit.is_atom()) {
    slot_vars(lit.atom.predicate, out);
    for (const auto& arg : lit.atom.args) slot_vars(arg, out);
  } else {
    slot_vars(lit.lhs, out);
    slot_vars(lit.rhs, out);
  }
  return out;
}

bool is_placeholder_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return detail::is_alpha(c) || detail::is_digit(c) || c == '_';
  });
}

// Replaces each {name} placeholder with value(name).
template <typename Value>
std::string expand_template(const std::string& text, Value&& value) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '{') {
      const auto close = text.find('}', i + 1);
      if (close != std::string::npos) {
        const std::string name = text.substr(i + 1, close - i - 1);
        if (is_placeholder_name(name)) {
          out += value(name);
          i = close + 1;
          continue;
        }
      }
    }
    out.push_back(text[i++]);
  }
  return out;
}

std::set<std::string> placeholders(const std::string& message) {
  std::set<std::string> out;
  expand_template(message, [&](const std::string& name) {
    out.insert(name);
    return std::string();
  });
  return out;
}

// Order-sensitive safety for one alternative; empty when safe.
std::vector<std::string> control_safety(const ControlShape& shape,
                                        const std::vector<BodyLiteral>& pattern) {
  std::vector<std::string> problems;
  std::set<std::string> bound{shape.focus};
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const auto& lit = pattern[i];
    const auto vars = vars_of(lit);
    switch (lit.kind) {
      case LiteralKind::kPositive:
        bound.insert(vars.begin(), vars.end());
        break;
      case LiteralKind::kNegated:
        for (const auto& v : vars) {
          if (bound.count(v)) continue;
          bool elsewhere = false;
          for (std::size_t j = 0; j < pattern.size(); ++j) {
            if (j == i) continue;
            const auto other = vars_of(pattern[j]);
            elsewhere = elsewhere || std::find(other.begin(), other.end(), v) != other.end();
          }
          if (elsewhere) {
            problems.push_back("variable " + v +
                               " in a negated atom is not bound by an earlier positive atom");
          }
        }
        break;
      case LiteralKind::kNotEqual:
      case LiteralKind::kLess:
        for (const auto& v : vars) {
          if (!bound.count(v)) {
            problems.push_back("variable " + v +
                               " in a comparison is not bound by an earlier positive atom");
          }
        }
        break;
    }
  }
  for (const auto& name : placeholders(shape.message)) {
    if (!bound.count(name)) problems.push_back("message placeholder {" + name + "} is unbound");
  }
  return problems;
}

}  // namespace

std::vector<ControlShape> parse_control_shapes(std::string_view text,
                                               const PrefixMap& prefixes) {
  detail::LogicParser parser(text, prefixes);
  auto& cursor = parser.cursor();
  std::vector<ControlShape> out;
  std::string unsafe;
  while (true) {
    cursor.skip_blank();
    if (cursor.eof()) break;
    if (cursor.peek() == '@') {
      if (!parser.try_prefix_directive()) cursor.fail("unknown directive");
      continue;
    }
    const std::size_t start = cursor.offset();
    if (!cursor.try_keyword("control")) cursor.fail("expected 'control'");
    cursor.skip_blank();
    ControlShape shape;
    shape.id = parser.read_identifier();
    if (shape.id.empty()) cursor.fail("expected control id");
    for (const auto& existing : out) {
      if (existing.id == shape.id) cursor.fail_at(start, "duplicate control '" + shape.id + "'");
    }
    cursor.skip_blank();
    if (cursor.try_keyword("severity")) {
      cursor.skip_blank();
      const std::size_t at = cursor.offset();
      const std::string level = parser.read_identifier();
      if (level == "Violation") {
        shape.severity = Severity::kViolation;
      } else if (level == "Warning") {
        shape.severity = Severity::kWarning;
      } else {
        cursor.fail_at(at, "severity must be Violation or Warning");
      }
      cursor.skip_blank();
    }
    if (cursor.peek() != '"' && cursor.peek() != '\'') cursor.fail("expected message string");
    shape.message = cursor.read_quoted_string();
    cursor.skip_blank();
    cursor.expect(":-", "':-' after control message");

    cursor.skip_blank();
    const std::size_t target_at = cursor.offset();
    shape.target = parser.parse_atom();
    std::set<std::string> target_vars;
    for (const auto& v : vars_of(BodyLiteral::positive(shape.target))) target_vars.insert(v);
    if (target_vars.size() != 1) {
      cursor.fail_at(target_at, "target atom must contain exactly one variable");
    }
    shape.focus = *target_vars.begin();
    cursor.skip_blank();
    cursor.expect("|", "'|' after target atom");
    do {
      shape.alternatives.push_back(parser.parse_literals());
      cursor.skip_blank();
    } while (cursor.try_consume(";"));
    cursor.expect(".", "'.' at end of control");

    for (const auto& pattern : shape.alternatives) {
      for (const auto& problem : control_safety(shape, pattern)) {
        if (!unsafe.empty()) unsafe += "; ";
        unsafe += "control '" + shape.id + "': " + problem;
      }
    }
    out.push_back(std::move(shape));
  }
  if (!unsafe.empty()) throw SafetyError(unsafe);
  return out;
}

ValidationReport validate_controls(const Graph& graph,
                                   const std::vector<ControlShape>& shapes) {
  ValidationReport report;
  for (const auto& shape : shapes) {
    std::set<std::pair<Term, Binding>> seen;
    std::set<std::string> external = placeholders(shape.message);
    external.insert(shape.focus);
    for (const auto& pattern : shape.alternatives) {
      std::vector<BodyLiteral> body{BodyLiteral::positive(shape.target)};
      body.insert(body.end(), pattern.begin(), pattern.end());

      detail::TermTable terms(graph);
      detail::VariableTable vars;
      const auto compiled = detail::compile_body(body, external, vars, terms);
      const auto plan =
          detail::make_plan(compiled, std::vector<bool>(vars.size(), false), 0);
      std::vector<TermId> binding(vars.size(), detail::kUnbound);
      detail::Executor(graph, terms, compiled)
          .run(plan, {}, binding, [&](const std::vector<TermId>& b) {
            const Term focus = terms.term(b[*vars.find(shape.focus)]);
            Binding bound;
            for (std::uint32_t v = 0; v < vars.size(); ++v) {
              if (compiled.fresh[v] || vars.names()[v] == shape.focus) continue;
              if (b[v] != detail::kUnbound) bound.emplace(vars.names()[v], terms.term(b[v]));
            }
            if (!seen.emplace(focus, bound).second) return;
            const std::string message =
                expand_template(shape.message, [&](const std::string& name) {
                  if (name == shape.focus) return render_term(focus, graph.prefixes());
                  const auto it = bound.find(name);
                  return it == bound.end() ? "{" + name + "}"
                                           : render_term(it->second, graph.prefixes());
                });
            report.results.push_back(
                ValidationResult{shape.id, shape.severity, focus, bound, message});
          });
    }
  }
  report.finalize();
  return report;
}

}  // namespace cpsaudit
