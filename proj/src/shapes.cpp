#include "cpsaudit/shapes.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <tuple>

#include "cpsaudit/error.hpp"
#include "cpsaudit/turtle.hpp"

namespace cpsaudit {

std::string_view to_string(Severity severity) {
  return severity == Severity::kViolation ? "Violation" : "Warning";
}

namespace {

std::vector<Term> objects(const Graph& graph, const Term& subject, const Term& predicate) {
  std::vector<Term> out;
  for (const auto& b : graph.match({subject, predicate, Variable{"o"}})) {
    out.push_back(b.at("o"));
  }
  return out;
}

std::string shape_name(const Graph& graph, const Term& node) {
  return render_term(node, graph.prefixes());
}

std::optional<Term> single(const Graph& graph, const Term& shape, const Term& node,
                           const Term& predicate) {
  const auto values = objects(graph, node, predicate);
  if (values.empty()) return std::nullopt;
  if (values.size() > 1) {
    throw MalformedShape("shape " + shape_name(graph, shape) + ": property " +
                         shape_name(graph, node) + " has several " +
                         shape_name(graph, predicate) + " values");
  }
  return values.front();
}

std::size_t read_count(const Graph& graph, const Term& shape, const Term& node,
                       const Term& value, const Term& predicate) {
  const auto bad = [&] {
    return MalformedShape("shape " + shape_name(graph, shape) + ": " +
                          shape_name(graph, predicate) + " of " + shape_name(graph, node) +
                          " must be a non-negative integer");
  };
  if (value.kind() != TermKind::kInteger || value.lexical().front() == '-') throw bad();
  try {
    return static_cast<std::size_t>(std::stoull(value.lexical()));
  } catch (const std::exception&) {
    throw bad();
  }
}

PropertyRequirement read_property(const Graph& graph, const Term& shape, const Term& node) {
  if (!node.is_iri()) {
    throw MalformedShape("shape " + shape_name(graph, shape) +
                         ": sh:property value must be a node");
  }
  PropertyRequirement req;
  const auto path = single(graph, shape, node, sh("path"));
  if (!path) {
    throw MalformedShape("shape " + shape_name(graph, shape) + ": property " +
                         shape_name(graph, node) + " has no sh:path");
  }
  if (!path->is_iri()) {
    throw MalformedShape("shape " + shape_name(graph, shape) + ": sh:path must be an IRI");
  }
  req.path = *path;
  if (const auto v = single(graph, shape, node, sh("minCount"))) {
    req.min_count = read_count(graph, shape, node, *v, sh("minCount"));
  }
  if (const auto v = single(graph, shape, node, sh("maxCount"))) {
    req.max_count = read_count(graph, shape, node, *v, sh("maxCount"));
    if (*req.max_count < req.min_count) {
      throw MalformedShape("shape " + shape_name(graph, shape) + ": property " +
                           shape_name(graph, node) + " has sh:minCount above sh:maxCount");
    }
  }
  for (const auto& cls : objects(graph, node, sh("class"))) {
    if (!cls.is_iri()) {
      throw MalformedShape("shape " + shape_name(graph, shape) + ": sh:class must be an IRI");
    }
    req.allowed_classes.push_back(cls);
  }
  if (const auto v = single(graph, shape, node, sh("datatype"))) {
    if (!v->is_iri()) {
      throw MalformedShape("shape " + shape_name(graph, shape) +
                           ": sh:datatype must be an IRI");
    }
    req.datatype = *v;
  }
  return req;
}

std::optional<Term> datatype_of(const Term& term) {
  switch (term.kind()) {
    case TermKind::kString: return xsd("string");
    case TermKind::kInteger: return xsd("integer");
    case TermKind::kBoolean: return xsd("boolean");
    case TermKind::kIri: break;
  }
  return std::nullopt;
}

}  // namespace

std::vector<ClassShape> load_shacl_subset(const Graph& graph) {
  std::vector<ClassShape> out;
  for (const auto& b : graph.match({Variable{"s"}, rdf("type"), sh("NodeShape")})) {
    const Term& shape = b.at("s");
    const auto targets = objects(graph, shape, sh("targetClass"));
    if (targets.empty()) continue;
    std::vector<PropertyRequirement> reqs;
    for (const auto& node : objects(graph, shape, sh("property"))) {
      reqs.push_back(read_property(graph, shape, node));
    }
    std::stable_sort(reqs.begin(), reqs.end(),
                     [](const PropertyRequirement& a, const PropertyRequirement& b) {
                       return a.path < b.path;
                     });
    for (const auto& target : targets) {
      if (!target.is_iri()) {
        throw MalformedShape("shape " + shape_name(graph, shape) +
                             ": sh:targetClass must be an IRI");
      }
      out.push_back(ClassShape{shape, target, reqs});
    }
  }
  std::sort(out.begin(), out.end(), [](const ClassShape& a, const ClassShape& b) {
    return std::tie(a.id, a.target_class) < std::tie(b.id, b.target_class);
  });
  return out;
}

void ValidationReport::finalize() {
  std::sort(results.begin(), results.end(), [](const ValidationResult& a,
                                               const ValidationResult& b) {
    return std::tie(a.severity, a.shape, a.focus, a.message, a.bindings) <
           std::tie(b.severity, b.shape, b.focus, b.message, b.bindings);
  });
  results.erase(std::unique(results.begin(), results.end()), results.end());
  conforms = violation_count() == 0;
}

std::size_t ValidationReport::violation_count() const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [](const ValidationResult& r) {
        return r.severity == Severity::kViolation;
      }));
}

ValidationReport validate_classes(const Graph& graph, const std::vector<ClassShape>& shapes) {
  ValidationReport report;
  const auto& px = graph.prefixes();
  for (const auto& shape : shapes) {
    const std::string shape_id = shape.id.lexical();
    for (const auto& b : graph.match({Variable{"x"}, rdf("type"), shape.target_class})) {
      const Term& focus = b.at("x");
      for (const auto& req : shape.requirements) {
        const auto values = objects(graph, focus, req.path);
        const std::string path = render_term(req.path, px);
        auto add = [&](Binding bindings, std::string message) {
          bindings.emplace("path", req.path);
          report.results.push_back(ValidationResult{shape_id, Severity::kViolation, focus,
                                                    std::move(bindings), std::move(message)});
        };
        if (values.size() < req.min_count) {
          add({}, "path " + path + " needs at least " + std::to_string(req.min_count) +
                      " value(s), found " + std::to_string(values.size()));
        }
        if (req.max_count && values.size() > *req.max_count) {
          add({}, "path " + path + " allows at most " + std::to_string(*req.max_count) +
                      " value(s), found " + std::to_string(values.size()));
        }
        for (const auto& value : values) {
          if (!req.allowed_classes.empty()) {
            const bool typed = value.is_iri() &&
                std::any_of(req.allowed_classes.begin(), req.allowed_classes.end(),
                            [&](const Term& cls) {
                              return graph.contains(Triple{value, rdf("type"), cls});
                            });
            if (!typed) {
              std::string classes;
              for (const auto& cls : req.allowed_classes) {
                classes += (classes.empty() ? "" : " | ") + render_term(cls, px);
              }
              add({{"value", value}}, "value " + render_term(value, px) + " at path " + path +
                                          " is not a " + classes);
            }
          }
          if (req.datatype && datatype_of(value) != req.datatype) {
            add({{"value", value}}, "value " + render_term(value, px) + " at path " + path +
                                        " is not of datatype " +
                                        render_term(*req.datatype, px));
          }
        }
      }
    }
  }
  report.finalize();
  return report;
}

std::string render_report(const ValidationReport& report, ReportFormat format,
                          const PrefixMap& prefixes) {
  if (format == ReportFormat::kJson) {
    nlohmann::json results = nlohmann::json::array();
    for (const auto& r : report.results) {
      nlohmann::json bindings = nlohmann::json::object();
      for (const auto& [name, value] : r.bindings) bindings[name] = term_text(value);
      results.push_back({{"bindings", bindings},
                         {"focus", term_text(r.focus)},
                         {"message", r.message},
                         {"severity", std::string(to_string(r.severity))},
                         {"shape", r.shape}});
    }
    nlohmann::json doc = {{"conforms", report.conforms}, {"results", results}};
    return doc.dump() + "\n";
  }

  if (report.results.empty()) return "conforms: true\n";
  std::string out;
  for (const auto& r : report.results) {
    std::string shape = r.shape;
    if (is_valid_iri(shape)) shape = render_term(Term::iri(shape), prefixes);
    out += std::string(to_string(r.severity)) + " " + shape + " " +
           render_term(r.focus, prefixes) + ": " + r.message + "\n";
  }
  return out;
}

}  // namespace cpsaudit
