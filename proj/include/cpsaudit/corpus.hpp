#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cpsaudit/graph.hpp"
#include "cpsaudit/pipeline.hpp"
#include "cpsaudit/rules.hpp"
#include "cpsaudit/shapes.hpp"

namespace cpsaudit {

// Layer namespaces of the bundled ontology and the scenario namespace.
namespace corpus_ns {
inline constexpr std::string_view kSgam = "http://example.org/cps/sgam#";
inline constexpr std::string_view kPandapower = "http://example.org/cps/pandapower#";
inline constexpr std::string_view kInterop = "http://example.org/cps/interop#";
inline constexpr std::string_view kAnalysis = "http://example.org/cps/analysis#";
inline constexpr std::string_view kShapes = "http://example.org/cps/shapes#";
inline constexpr std::string_view kPlant = "http://example.org/plant#";
}  // namespace corpus_ns

struct ExpectedViolation {
  std::string shape;
  Term focus;
  Binding bindings;

  friend bool operator==(const ExpectedViolation&, const ExpectedViolation&) = default;
};

struct Scenario {
  std::string name;
  Graph data;  // ABOX
  std::vector<ExpectedViolation> expected;  // sorted
};

enum class NetworkVariant { kConformant, kMisconfigured };
enum class FrequencyVariant { kIndependentPaths, kSharedSubstation };

// Office, DMZ and operational subnets with one host each; firewall rules
// office subnet -> DMZ subnet and historian (DMZ host) -> operational subnet.
// The misconfigured variant adds office subnet -> operational subnet.
Scenario build_network_scenario(NetworkVariant variant);

// Field station, three measurements, a load frequency controller fed with
// all three. Independent paths: one substation per measurement. Shared
// substation: m1 and m2 both go through substation 1.
Scenario build_frequency_scenario(FrequencyVariant variant);

struct Corpus {
  std::filesystem::path root;
  Graph tbox;
  RuleSet rules;  // RDFS package plus rules/*.rules
  std::vector<ClassShape> class_shapes;
  std::vector<ControlShape> controls;
  RunConfig config;  // the same inputs as CLI flags (no ABOX files)
};

// CPSAUDIT_CORPUS if set, else the directory the library was built against.
std::filesystem::path default_corpus_dir();

// Run configuration listing the corpus TBOX, rule, shape and control files
// (no ABOX).
RunConfig corpus_config(const std::filesystem::path& root = default_corpus_dir());

// Loads ontology/*.ttl, rules/*.rules, shapes/*.ttl and controls/*.controls
// in file name order. Throws LoadError naming the file.
Corpus load_corpus(const std::filesystem::path& root = default_corpus_dir());

// scenarios/<name>/data.ttl and expected.json, sorted by name.
std::vector<Scenario> load_scenarios(const std::filesystem::path& root = default_corpus_dir());

// Expected violations as (shape, focus, bindings), comparable with
// Scenario::expected.
std::vector<ExpectedViolation> violations_of(const ValidationReport& report);

// Merges the scenario into the corpus TBOX and runs the full check.
CheckOutcome run_scenario(const Corpus& corpus, const Scenario& scenario,
                          const SaturationOptions& options = {});

}  // namespace cpsaudit
