// cpsaudit: saturate a layered knowledge graph and check it against class
// shapes and security / safety controls.

#include <CLI11.hpp>
#include <iostream>

#include "cpsaudit/corpus.hpp"
#include "cpsaudit/pipeline.hpp"

namespace {

using cpsaudit::RunConfig;

void append(std::vector<std::filesystem::path>& to, const std::vector<std::filesystem::path>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rule-based validation of cyber-physical power system models"};
  app.require_subcommand(1);

  RunConfig config;
  std::string corpus;
  std::string format = "text";
  bool no_rdfs = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tbox", config.tbox, "T-Box Turtle files")->check(CLI::ExistingFile);
    cmd->add_option("--abox", config.abox, "A-Box Turtle files")->check(CLI::ExistingFile);
    cmd->add_option("--rules", config.rules, "Rule files")->check(CLI::ExistingFile);
    cmd->add_option("--shapes", config.shapes, "Class shape Turtle files")
        ->check(CLI::ExistingFile);
    cmd->add_option("--controls", config.controls, "Control shape files")
        ->check(CLI::ExistingFile);
    cmd->add_option("--corpus", corpus,
                    "Add the ontology, rules, shapes and controls of a corpus directory")
        ->check(CLI::ExistingDirectory);
    cmd->add_flag("--no-rdfs", no_rdfs, "Do not add the built-in RDFS rules");
    cmd->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--max-iterations", config.max_iterations, "Saturation iteration cap")
        ->check(CLI::PositiveNumber);
  };

  auto* check = app.add_subcommand("check", "Saturate and validate; report findings");
  auto* infer = app.add_subcommand("infer", "Print the saturated graph as Turtle");
  auto* explain = app.add_subcommand("explain", "Print the derivation tree of a triple");
  auto* strata = app.add_subcommand("strata", "Print the rule strata");
  std::string triple_spec;
  explain->add_option("triple", triple_spec, "\"subject predicate object\", e.g. \"ex:a a ex:b\"")
      ->required();
  for (auto* cmd : {check, infer, explain, strata}) add_common(cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(cpsaudit::ExitCode::kError);
  }

  config.rdfs = !no_rdfs;
  config.format = format == "json" ? cpsaudit::ReportFormat::kJson : cpsaudit::ReportFormat::kText;
  if (!corpus.empty()) {
    try {
      const RunConfig bundled = cpsaudit::corpus_config(corpus);
      append(config.tbox, bundled.tbox);
      append(config.rules, bundled.rules);
      append(config.shapes, bundled.shapes);
      append(config.controls, bundled.controls);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return static_cast<int>(cpsaudit::ExitCode::kError);
    }
  }

  if (check->parsed()) return cpsaudit::cmd_check(config, std::cout, std::cerr);
  if (infer->parsed()) return cpsaudit::cmd_infer(config, std::cout, std::cerr);
  if (explain->parsed()) return cpsaudit::cmd_explain(config, triple_spec, std::cout, std::cerr);
  return cpsaudit::cmd_strata(config, std::cout, std::cerr);
}
