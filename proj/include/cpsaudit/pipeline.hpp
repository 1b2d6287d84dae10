#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cpsaudit/graph.hpp"
#include "cpsaudit/rules.hpp"
#include "cpsaudit/saturate.hpp"
#include "cpsaudit/shapes.hpp"

namespace cpsaudit {

enum class ExitCode : int {
  kConforms = 0,
  kViolations = 1,
  kClassFailures = 2,  // controls were not evaluated
  kError = 3,          // load, parse, safety, stratification, iteration cap
  kNotExplained = 4,   // explain: triple absent or not derived
};

struct RunConfig {
  std::vector<std::filesystem::path> tbox;
  std::vector<std::filesystem::path> abox;
  std::vector<std::filesystem::path> rules;
  std::vector<std::filesystem::path> shapes;
  std::vector<std::filesystem::path> controls;
  bool rdfs = true;
  ReportFormat format = ReportFormat::kText;
  std::size_t max_iterations = 10000;
};

// Everything a run needs, parsed.
struct Inputs {
  Graph graph;  // TBOX and ABOX files merged
  RuleSet rules;  // RDFS package first when enabled
  std::vector<ClassShape> class_shapes;
  std::vector<ControlShape> controls;
};

std::string read_file(const std::filesystem::path& path);

// Rule files get ids "<file stem>-<n>" for unlabelled rules. Any failure is
// rethrown as LoadError naming the file.
RuleSet load_rule_file(const std::filesystem::path& path);
Graph load_turtle_file(const std::filesystem::path& path, Section section);
std::vector<ControlShape> load_control_file(const std::filesystem::path& path);

// Throws LoadError (and Error for an invalid config).
Inputs load_inputs(const RunConfig& config, bool require_abox);

struct CheckOutcome {
  SaturationResult saturation;
  ValidationReport class_report;
  std::optional<ValidationReport> control_report;  // unset when gated

  ExitCode exit_code() const;
  // The report that decides the outcome: control report if it ran.
  const ValidationReport& final_report() const;
};

// Saturate, validate class shapes, and validate controls only when every
// class shape holds.
CheckOutcome run_check(const Inputs& inputs, const SaturationOptions& options = {});

// Subcommands. Reports go to `out`, diagnostics to `err`; the return value is
// the process exit code.
int cmd_check(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_infer(const RunConfig& config, std::ostream& out, std::ostream& err);
// `triple_spec` is "subject predicate object" in Turtle terms (CURIEs, <IRIs>,
// literals, `a`), with the prefixes of the loaded graph and rule files.
int cmd_explain(const RunConfig& config, const std::string& triple_spec,
                std::ostream& out, std::ostream& err);
int cmd_strata(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace cpsaudit
