// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "cpsaudit/corpus.hpp"
#include "cpsaudit/error.hpp"
#include "cpsaudit/turtle.hpp"
#include "oracle/controls.hpp"
#include "oracle/naive.hpp"
#include "oracle/random.hpp"

using namespace cpsaudit;

namespace {

// Pinned limits.
constexpr double kCaseStudySeconds = 1.0;
constexpr double kRandomizedSeconds = 30.0;
constexpr int kRuleSets = 200;
constexpr std::size_t kMaxRules = 5;
constexpr std::size_t kMaxConstants = 8;
constexpr std::size_t kMaxFacts = 20;
constexpr int kControlGraphs = 100;
constexpr std::size_t kMaxNodes = 10;
constexpr std::size_t kDagClasses = 10;
constexpr int kDags = 20;
constexpr int kRoundTrips = 100;
constexpr int kFuzzInputs = 2000;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Term plant(const std::string& local) { return Term::iri(std::string(corpus_ns::kPlant) + local); }

const Scenario& scenario(const std::vector<Scenario>& all, const std::string& name) {
  for (const auto& s : all) {
    if (s.name == name) return s;
  }
  throw std::runtime_error("missing scenario " + name);
}

// Violation-severity control results of one scenario.
std::vector<ValidationResult> control_violations(const Corpus& corpus, const Scenario& s) {
  const auto outcome = run_scenario(corpus, s);
  if (!outcome.control_report) throw std::runtime_error(s.name + ": class shapes failed");
  std::vector<ValidationResult> out;
  for (const auto& r : outcome.control_report->results) {
    if (r.severity == Severity::kViolation) out.push_back(r);
  }
  return out;
}

Verdict ac1() {
  Verdict v;
  const auto start = Clock::now();
  const Corpus corpus = load_corpus();
  const auto scenarios = load_scenarios();
  const auto& bad = scenario(scenarios, "network-misconfigured");
  const auto found = control_violations(corpus, bad);
  v.require(found.size() == 1, "misconfigured: " + std::to_string(found.size()) + " violations");
  if (found.size() == 1) {
    v.require(found[0].shape == "network-separation", "shape " + found[0].shape);
    v.require(found[0].focus == plant("scada"), "focus " + found[0].focus.lexical());
    v.require(found[0].bindings.count("y") && found[0].bindings.at("y") == plant("office-pc"),
              "office host not bound");
  }
  // Committed hand-evaluation oracle.
  ValidationReport report;
  report.results = found;
  v.require(violations_of(report) == bad.expected, "differs from expected.json");
  const auto ok = control_violations(corpus, scenario(scenarios, "network-conformant"));
  v.require(ok.empty(), "conformant: " + std::to_string(ok.size()) + " violations");
  const double t = seconds_since(start);
  v.require(t < kCaseStudySeconds, "took " + std::to_string(t) + " s");
  return v;
}

Verdict ac2() {
  Verdict v;
  const auto start = Clock::now();
  const Corpus corpus = load_corpus();
  const auto scenarios = load_scenarios();
  const auto& shared = scenario(scenarios, "frequency-shared-substation");
  const auto found = control_violations(corpus, shared);
  v.require(found.size() == 1, "shared: " + std::to_string(found.size()) + " violations");
  if (found.size() == 1) {
    v.require(found[0].shape == "lfc-redundancy", "shape " + found[0].shape);
    const auto& b = found[0].bindings;
    v.require(b.count("m1") && b.count("m2") && b.at("m1") == plant("m1") && b.at("m2") == plant("m2"),
              "co-routed pair not bound");
  }
  ValidationReport report;
  report.results = found;
  v.require(violations_of(report) == shared.expected, "differs from expected.json");
  const auto ok = control_violations(corpus, scenario(scenarios, "frequency-independent-paths"));
  v.require(ok.empty(), "independent: " + std::to_string(ok.size()) + " violations");
  const double t = seconds_since(start);
  v.require(t < kCaseStudySeconds, "took " + std::to_string(t) + " s");
  return v;
}

Verdict ac3() {
  Verdict v;
  const Term a = Term::iri("http://example.org/a");
  Graph g;
  g.insert({a, rdf("type"), Term::iri("http://example.org/c")}, Section::kAbox);
  const auto r = saturate(g, parse_rules("ex:b(a) :- ex:c(a)."));
  const auto derived = r.graph.triples(Section::kDerived);
  v.require(derived == std::vector<Triple>{{a, rdf("type"), Term::iri("http://example.org/b")}},
            std::to_string(derived.size()) + " derived triples");
  return v;
}

Verdict ac4() {
  Verdict v;
  PrefixMap p = standard_prefixes();
  p["ex"] = "http://example.org/";
  const auto shapes = load_shacl_subset(parse_turtle(
      "ex:parentShape a sh:NodeShape ; sh:targetClass ex:Parent ;"
      " sh:property [ sh:path ex:hasChild ; ] .",
      p));
  const auto ok = validate_classes(parse_turtle("ex:p a ex:Parent . ex:p ex:hasChild ex:c .", p), shapes);
  v.require(ok.conforms && ok.results.empty(), "full graph does not conform");
  const auto bad = validate_classes(parse_turtle("ex:p a ex:Parent .", p), shapes);
  v.require(!bad.conforms && bad.results.size() == 1, std::to_string(bad.results.size()) + " results");
  if (bad.results.size() == 1) {
    v.require(bad.results[0].message.find("at least 1") != std::string::npos, bad.results[0].message);
  }
  return v;
}

struct RandomProgram {
  oracle::Facts facts;
  std::vector<Rule> rules;
};

std::vector<RandomProgram> programs(std::uint64_t seed, int count, bool negation) {
  oracle::Rng rng(seed);
  std::vector<RandomProgram> out;
  for (int i = 0; i < count; ++i) {
    const std::size_t constants = 1 + oracle::pick(rng, kMaxConstants);
    RandomProgram p;
    p.rules = oracle::random_rules(rng, 1 + oracle::pick(rng, kMaxRules), constants, negation);
    p.facts = oracle::random_facts(rng, constants, oracle::pick(rng, kMaxFacts + 1));
    out.push_back(std::move(p));
  }
  return out;
}

oracle::Facts derived_of(const SaturationResult& r) {
  const auto t = r.graph.triples(Section::kDerived);
  return {t.begin(), t.end()};
}

Verdict ac5() {
  Verdict v;
  const auto start = Clock::now();
  int index = 0, productive = 0;
  for (const auto& p : programs(5, kRuleSets, false)) {
    const auto r = saturate(oracle::to_graph(p.facts), oracle::to_rule_set(p.rules));
    const auto closure = oracle::naive_saturate(p.facts, {p.rules});
    oracle::Facts expected;
    for (const auto& t : closure) {
      if (!p.facts.count(t)) expected.insert(t);
    }
    v.require(derived_of(r) == expected, "program " + std::to_string(index) + " differs");
    productive += !expected.empty();
    ++index;
  }
  const double t = seconds_since(start);
  v.require(t < kRandomizedSeconds, "took " + std::to_string(t) + " s");
  if (v.pass) {
    v.detail = std::to_string(index) + " programs, " + std::to_string(productive) + " deriving";
  }
  return v;
}

Verdict ac6() {
  Verdict v;
  const auto start = Clock::now();
  oracle::Rng rng(6);
  PrefixMap p = default_rule_prefixes();
  int checked = 0, flagged = 0;
  while (checked < kControlGraphs) {
    const std::size_t nodes = 1 + oracle::pick(rng, kMaxNodes);
    const std::string text = oracle::random_control_text(rng, nodes);
    std::vector<ControlShape> shapes;
    try {
      shapes = parse_control_shapes(text, p);
    } catch (const SafetyError&) {
      continue;
    }
    const Graph g = oracle::random_node_graph(rng, nodes);
    std::set<oracle::Finding> got;
    for (const auto& r : validate_controls(g, shapes).results) got.emplace(r.focus, r.bindings);
    v.require(got == oracle::brute_force_controls(g, shapes.at(0)), "differs on: " + text);
    flagged += !got.empty();
    ++checked;
  }
  const double t = seconds_since(start);
  v.require(t < kRandomizedSeconds, "took " + std::to_string(t) + " s");
  if (v.pass) {
    v.detail = std::to_string(checked) + " graphs, " + std::to_string(flagged) + " with findings";
  }
  return v;
}

Verdict ac7() {
  Verdict v;
  int checked = 0;
  for (const bool negation : {false, true}) {
    for (const auto& p : programs(negation ? 71 : 5, kRuleSets, negation)) {
      const RuleSet rules = oracle::to_rule_set(p.rules);
      SaturationResult r;
      try {
        r = saturate(oracle::to_graph(p.facts), rules);
      } catch (const NegativeCycle&) {
        continue;
      }
      std::set<PatternSlot> heads;
      for (const auto& rule : p.rules) heads.insert(rule.head.pattern().predicate);
      const std::size_t c = oracle::constants_of(p.facts, p.rules).size();
      v.require(r.derived_count() <= heads.size() * c * c, "bound exceeded");
      const auto again = saturate(r.graph, rules);
      v.require(again.graph.size() == r.graph.size(), "re-saturation added triples");
      ++checked;
    }
  }
  if (v.pass) v.detail = std::to_string(checked) + " programs";
  return v;
}

Verdict ac8() {
  Verdict v;
  oracle::Rng rng(8);
  for (int round = 0; round < kDags; ++round) {
    bool reach[kDagClasses][kDagClasses] = {};
    Graph g;
    for (std::size_t i = 0; i < kDagClasses; ++i) {
      for (std::size_t j = i + 1; j < kDagClasses; ++j) {
        if (oracle::chance(rng, 0.2)) {
          reach[i][j] = true;
          g.insert({oracle::klass(i), rdfs("subClassOf"), oracle::klass(j)}, Section::kTbox);
        }
      }
    }
    for (std::size_t k = 0; k < kDagClasses; ++k) {
      for (std::size_t i = 0; i < kDagClasses; ++i) {
        for (std::size_t j = 0; j < kDagClasses; ++j) {
          reach[i][j] = reach[i][j] || (reach[i][k] && reach[k][j]);
        }
      }
    }
    std::set<std::pair<Term, Term>> expected;
    for (std::size_t n = 0; n < 12; ++n) {
      const std::size_t cls = oracle::pick(rng, kDagClasses);
      g.insert({oracle::constant(n), rdf("type"), oracle::klass(cls)}, Section::kAbox);
      expected.emplace(oracle::constant(n), oracle::klass(cls));
      for (std::size_t j = 0; j < kDagClasses; ++j) {
        if (reach[cls][j]) expected.emplace(oracle::constant(n), oracle::klass(j));
      }
    }
    const auto r = saturate(g, rdfs_rules());
    std::set<std::pair<Term, Term>> got;
    for (const auto& b : r.graph.match({Variable{"x"}, rdf("type"), Variable{"c"}})) {
      got.emplace(b.at("x"), b.at("c"));
    }
    v.require(got == expected, "DAG " + std::to_string(round) + " differs");
  }
  return v;
}

struct Captured {
  int status = -1;
  std::string out;
};

Captured run_cli(const std::string& args) {
  const std::string command = std::string("'") + CPSAUDIT_CLI + "' " + args + " 2>/dev/null";
  Captured c;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return c;
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) c.out.append(buffer, n);
  const int raw = pclose(pipe);
  c.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return c;
}

Verdict ac9() {
  Verdict v;
  const std::string corpus = "--corpus '" + default_corpus_dir().string() + "'";
  int runs = 0;
  for (const auto& s : load_scenarios()) {
    const std::string abox =
        "--abox '" + (default_corpus_dir() / "scenarios" / s.name / "data.ttl").string() + "'";
    const std::string target = s.name.rfind("network", 0) == 0 ? "\"ex:scada a net:Host\""
                                                                : "\"ex:m1 a sgam:InformationObject\"";
    const std::vector<std::string> commands = {
        "check " + corpus + " " + abox,
        "check --format json " + corpus + " " + abox,
        "infer " + corpus + " " + abox,
        "strata " + corpus + " " + abox,
        "explain " + target + " " + corpus + " " + abox,
    };
    for (const auto& args : commands) {
      const Captured first = run_cli(args);
      const Captured second = run_cli(args);
      v.require(first.status >= 0 && first.status <= 4, "abnormal exit: " + args);
      v.require(!first.out.empty(), "no output: " + args);
      v.require(first.out == second.out, "stdout differs: " + args);
      v.require(first.status == second.status, "exit code differs: " + args);
      runs += 2;
    }
  }
  if (v.pass) v.detail = std::to_string(runs) + " runs";
  return v;
}

Verdict ac10() {
  Verdict v;
  oracle::Rng rng(10);
  for (int i = 0; i < kRoundTrips; ++i) {
    const Graph g = oracle::random_turtle_graph(rng);
    try {
      v.require(parse_turtle(serialize_turtle(g)) == g, "round trip " + std::to_string(i));
    } catch (const std::exception& e) {
      v.require(false, std::string("round trip threw: ") + e.what());
    }
  }
  PrefixMap p = standard_prefixes();
  p["ex"] = "http://example.org/";
  const std::string doc = serialize_turtle(oracle::random_turtle_graph(rng));
  for (int i = 0; i < kFuzzInputs; ++i) {
    const std::string text = i % 2 ? oracle::random_bytes(rng, 200) : oracle::mutate(rng, doc);
    try {
      parse_turtle(text, p);
    } catch (const ParseError& e) {
      v.require(e.line() >= 1 && e.column() >= 1, "unpositioned error");
    } catch (const UnknownPrefix& e) {
      v.require(e.where().has_value(), "unpositioned prefix error");
    } catch (const std::exception& e) {
      v.require(false, std::string("unexpected error: ") + e.what());
    }
  }
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"AC1 network separation case study", ac1},
      {"AC2 redundant communication case study", ac2},
      {"AC3 augmentation worked example", ac3},
      {"AC4 parent shape worked example", ac4},
      {"AC5 semi-naive equals naive", ac5},
      {"AC6 controls equal brute force", ac6},
      {"AC7 termination bound and idempotence", ac7},
      {"AC8 RDFS subclass closure", ac8},
      {"AC9 CLI determinism", ac9},
      {"AC10 Turtle round trip and fuzzing", ac10},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("threw: ") + e.what();
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS " : "FAIL ") << name;
    if (!v.detail.empty()) std::cout << " (" << v.detail << ")";
    std::cout << std::endl;
  }
  return failed;
}
