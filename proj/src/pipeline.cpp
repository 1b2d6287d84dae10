#include "cpsaudit/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "cpsaudit/error.hpp"
#include "cpsaudit/turtle.hpp"

namespace cpsaudit {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(path.string(), "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw LoadError(path.string(), "read failed");
  return buffer.str();
}

namespace {

template <typename F>
auto with_context(const fs::path& path, F&& f) {
  try {
    return f();
  } catch (const LoadError&) {
    throw;
  } catch (const Error& e) {
    throw LoadError(path.string(), e.what());
  }
}

}  // namespace

RuleSet load_rule_file(const fs::path& path) {
  const std::string text = read_file(path);
  return with_context(path, [&] {
    RuleParseOptions options;
    options.positional_prefix = path.stem().string() + "-";
    return parse_rules(text, options);
  });
}

Graph load_turtle_file(const fs::path& path, Section section) {
  const std::string text = read_file(path);
  return with_context(path, [&] { return parse_turtle(text, standard_prefixes(), section); });
}

std::vector<ControlShape> load_control_file(const fs::path& path) {
  const std::string text = read_file(path);
  return with_context(path, [&] { return parse_control_shapes(text); });
}

Inputs load_inputs(const RunConfig& config, bool require_abox) {
  if (config.max_iterations < 1) throw Error("max-iterations must be at least 1");
  if (require_abox && config.abox.empty()) throw Error("at least one --abox file is required");

  Inputs in;
  auto add_graph = [&](const fs::path& path, Section section) {
    const Graph g = load_turtle_file(path, section);
    with_context(path, [&] {
      in.graph = merge(in.graph, g);
      return 0;
    });
  };
  for (const auto& path : config.tbox) add_graph(path, Section::kTbox);
  for (const auto& path : config.abox) add_graph(path, Section::kAbox);

  if (config.rdfs) in.rules = rdfs_rules();
  for (const auto& path : config.rules) {
    const RuleSet file_rules = load_rule_file(path);
    with_context(path, [&] {
      in.rules.append(file_rules);
      return 0;
    });
  }

  for (const auto& path : config.shapes) {
    const Graph g = load_turtle_file(path, Section::kTbox);
    auto shapes = with_context(path, [&] { return load_shacl_subset(g); });
    in.class_shapes.insert(in.class_shapes.end(), shapes.begin(), shapes.end());
  }
  std::stable_sort(in.class_shapes.begin(), in.class_shapes.end(),
                   [](const ClassShape& a, const ClassShape& b) {
                     return std::tie(a.id, a.target_class) < std::tie(b.id, b.target_class);
                   });

  std::set<std::string> control_ids;
  for (const auto& path : config.controls) {
    for (auto& control : load_control_file(path)) {
      if (!control_ids.insert(control.id).second) {
        throw LoadError(path.string(), "duplicate control '" + control.id + "'");
      }
      in.controls.push_back(std::move(control));
    }
  }
  return in;
}

ExitCode CheckOutcome::exit_code() const {
  if (!control_report) return ExitCode::kClassFailures;
  return control_report->conforms ? ExitCode::kConforms : ExitCode::kViolations;
}

const ValidationReport& CheckOutcome::final_report() const {
  return control_report ? *control_report : class_report;
}

CheckOutcome run_check(const Inputs& inputs, const SaturationOptions& options) {
  CheckOutcome outcome;
  outcome.saturation = saturate(inputs.graph, inputs.rules, options);
  outcome.class_report = validate_classes(outcome.saturation.graph, inputs.class_shapes);
  if (outcome.class_report.conforms) {
    outcome.control_report = validate_controls(outcome.saturation.graph, inputs.controls);
  }
  return outcome;
}

namespace {

SaturationOptions options_of(const RunConfig& config) {
  SaturationOptions options;
  options.max_iterations = config.max_iterations;
  return options;
}

template <typename F>
int guarded(std::ostream& err, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kError);
  }
}

PrefixMap display_prefixes(const Inputs& inputs) {
  PrefixMap prefixes = inputs.graph.prefixes();
  for (const auto& [label, iri] : inputs.rules.prefixes()) {
    // A namespace the data already names keeps that name (ex:b, not :b).
    const bool named = std::any_of(prefixes.begin(), prefixes.end(),
                                   [&](const auto& entry) { return entry.second == iri; });
    if (!named) prefixes.try_emplace(label, iri);
  }
  return prefixes;
}

}  // namespace

int cmd_check(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Inputs inputs = load_inputs(config, true);
    const CheckOutcome outcome = run_check(inputs, options_of(config));
    out << render_report(outcome.final_report(), config.format, inputs.graph.prefixes());
    if (!outcome.control_report) {
      err << "class constraints failed; controls not evaluated\n";
    }
    return static_cast<int>(outcome.exit_code());
  });
}

int cmd_infer(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Inputs inputs = load_inputs(config, false);
    const SaturationResult result = saturate(inputs.graph, inputs.rules, options_of(config));
    out << serialize_turtle(result.graph);
    return static_cast<int>(ExitCode::kConforms);
  });
}

int cmd_explain(const RunConfig& config, const std::string& triple_spec, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    const Inputs inputs = load_inputs(config, false);
    const PrefixMap prefixes = display_prefixes(inputs);
    Graph spec;
    try {
      spec = parse_turtle(triple_spec + " .", prefixes);
    } catch (const Error& e) {
      throw Error(std::string("triple spec: ") + e.what());
    }
    if (spec.size() != 1) throw Error("triple spec must denote exactly one triple");
    const Triple triple = spec.triple_at(0);

    const SaturationResult result = saturate(inputs.graph, inputs.rules, options_of(config));
    const auto section = result.graph.section_of(triple);
    if (!section) {
      err << "not in the saturated graph: " << render_triple(triple, prefixes) << "\n";
      return static_cast<int>(ExitCode::kNotExplained);
    }
    if (*section != Section::kDerived) {
      err << "asserted in " << to_string(*section)
          << ", not derived: " << render_triple(triple, prefixes) << "\n";
      return static_cast<int>(ExitCode::kNotExplained);
    }
    out << render_explanation(explain(result.derivations, triple), prefixes);
    return static_cast<int>(ExitCode::kConforms);
  });
}

int cmd_strata(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Inputs inputs = load_inputs(config, false);
    // Generic RDFS rules are specialized against the loaded graph first, so
    // the strata are those saturation actually uses.
    const SaturationResult result = saturate(inputs.graph, inputs.rules, options_of(config));
    const PrefixMap prefixes = display_prefixes(inputs);
    const auto& strata = result.stratification.strata;
    for (std::size_t i = 0; i < strata.size(); ++i) {
      out << "stratum " << i << "\n";
      for (const auto& id : strata[i]) {
        const Rule* rule = result.evaluated_rules.find(id);
        out << "  " << id << " -> " << PredicateKey::of(rule->head).render(prefixes) << "\n";
      }
    }
    return static_cast<int>(ExitCode::kConforms);
  });
}

}  // namespace cpsaudit
