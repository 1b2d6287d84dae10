#include "cpsaudit/corpus.hpp"

#include <algorithm>
#include <cstdlib>
#include <nlohmann/json.hpp>
#include <tuple>

#include "cpsaudit/error.hpp"
#include "cpsaudit/turtle.hpp"

namespace cpsaudit {

namespace fs = std::filesystem;

namespace {

Term in(std::string_view ns, std::string_view local) {
  return Term::iri(std::string(ns) + std::string(local));
}

Term plant(std::string_view local) { return in(corpus_ns::kPlant, local); }
Term net(std::string_view local) { return in(corpus_ns::kInterop, local); }
Term ana(std::string_view local) { return in(corpus_ns::kAnalysis, local); }
Term sgam(std::string_view local) { return in(corpus_ns::kSgam, local); }

class Builder {
 public:
  Builder() {
    graph_.bind_prefix("ex", std::string(corpus_ns::kPlant));
    graph_.bind_prefix("net", std::string(corpus_ns::kInterop));
    graph_.bind_prefix("ana", std::string(corpus_ns::kAnalysis));
    graph_.bind_prefix("sgam", std::string(corpus_ns::kSgam));
  }
  void add(const Term& s, const Term& p, const Term& o) {
    graph_.insert(Triple{s, p, o}, Section::kAbox);
  }
  void type(const Term& s, const Term& cls) { add(s, rdf("type"), cls); }
  Graph take() { return std::move(graph_); }

 private:
  Graph graph_;
};

void sort_expected(std::vector<ExpectedViolation>& v) {
  std::sort(v.begin(), v.end(), [](const ExpectedViolation& a, const ExpectedViolation& b) {
    return std::tie(a.shape, a.focus, a.bindings) < std::tie(b.shape, b.focus, b.bindings);
  });
}

std::vector<fs::path> files_with(const fs::path& dir, std::string_view extension) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == extension) {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Scenario build_network_scenario(NetworkVariant variant) {
  Builder b;
  for (const auto* subnet : {"office-net", "dmz-net", "ops-net"}) b.type(plant(subnet), net("Subnet"));

  b.type(plant("office-pc"), ana("OfficeHost"));
  b.add(plant("office-pc"), net("hostInSubnet"), plant("office-net"));
  b.type(plant("historian"), ana("DmzHost"));
  b.add(plant("historian"), net("hostInSubnet"), plant("dmz-net"));
  b.type(plant("scada"), ana("OperationalHost"));
  b.add(plant("scada"), net("hostInSubnet"), plant("ops-net"));

  auto firewall = [&](const char* id, const char* from, const char* to) {
    b.type(plant(id), net("FirewallRule"));
    b.add(plant(id), net("source"), plant(from));
    b.add(plant(id), net("destination"), plant(to));
  };
  firewall("fw-office-dmz", "office-net", "dmz-net");
  firewall("fw-historian-ops", "historian", "ops-net");

  Scenario s;
  if (variant == NetworkVariant::kMisconfigured) {
    firewall("fw-office-ops", "office-net", "ops-net");
    s.name = "network-misconfigured";
    s.expected.push_back(
        {"network-separation", plant("scada"), {{"y", plant("office-pc")}}});
  } else {
    s.name = "network-conformant";
  }
  s.data = b.take();
  return s;
}

Scenario build_frequency_scenario(FrequencyVariant variant) {
  Builder b;
  const Term fs_block = plant("field-station");
  const Term lfc = plant("lfc");
  b.type(fs_block, sgam("FunctionBlock"));
  b.add(fs_block, sgam("domain"), Term::string("Transmission"));
  b.add(fs_block, sgam("zone"), Term::string("Field"));
  b.type(lfc, ana("LoadFrequencyController"));
  b.add(lfc, sgam("domain"), Term::string("Transmission"));
  b.add(lfc, sgam("zone"), Term::string("Operation"));
  for (const auto* m : {"m1", "m2", "m3"}) {
    b.add(lfc, ana("inputMeasurement"), plant(m));
    b.type(plant(m), ana("Measurement"));
  }

  // Station i carries `measurements` from the field station to the controller.
  auto route = [&](int i, std::vector<const char*> measurements) {
    const std::string n = std::to_string(i);
    const Term station = plant("substation-" + n);
    b.type(station, sgam("FunctionBlock"));
    b.add(station, sgam("zone"), Term::string("Station"));
    const Term in_flow = plant("flow-fs-ss" + n);
    const Term out_flow = plant("flow-ss" + n + "-lfc");
    for (const auto& [flow, from, to] :
         {std::tuple{in_flow, fs_block, station}, std::tuple{out_flow, station, lfc}}) {
      b.type(flow, sgam("InformationObjectFlow"));
      b.add(flow, sgam("source"), from);
      b.add(flow, sgam("destination"), to);
      for (const auto* m : measurements) b.add(flow, sgam("payload"), plant(m));
    }
  };

  Scenario s;
  if (variant == FrequencyVariant::kSharedSubstation) {
    route(1, {"m1", "m2"});
    route(2, {"m3"});
    s.name = "frequency-shared-substation";
    s.expected.push_back(
        {"lfc-redundancy", lfc, {{"m1", plant("m1")}, {"m2", plant("m2")}}});
  } else {
    route(1, {"m1"});
    route(2, {"m2"});
    route(3, {"m3"});
    s.name = "frequency-independent-paths";
  }
  s.data = b.take();
  return s;
}

fs::path default_corpus_dir() {
  if (const char* env = std::getenv("CPSAUDIT_CORPUS"); env && *env) return env;
#ifdef CPSAUDIT_CORPUS_DIR
  return CPSAUDIT_CORPUS_DIR;
#else
  return "corpus";
#endif
}

RunConfig corpus_config(const fs::path& root) {
  if (!fs::is_directory(root)) throw LoadError(root.string(), "corpus directory not found");
  RunConfig config;
  config.tbox = files_with(root / "ontology", ".ttl");
  config.rules = files_with(root / "rules", ".rules");
  config.shapes = files_with(root / "shapes", ".ttl");
  config.controls = files_with(root / "controls", ".controls");
  return config;
}

Corpus load_corpus(const fs::path& root) {
  Corpus c;
  c.root = root;
  c.config = corpus_config(root);
  Inputs inputs = load_inputs(c.config, false);
  c.tbox = std::move(inputs.graph);
  c.rules = std::move(inputs.rules);
  c.class_shapes = std::move(inputs.class_shapes);
  c.controls = std::move(inputs.controls);
  return c;
}

std::vector<Scenario> load_scenarios(const fs::path& root) {
  std::vector<Scenario> out;
  const fs::path dir = root / "scenarios";
  if (!fs::is_directory(dir)) return out;
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  for (const auto& d : dirs) {
    Scenario s;
    s.name = d.filename().string();
    s.data = load_turtle_file(d / "data.ttl", Section::kAbox);
    const fs::path expected_path = d / "expected.json";
    const std::string text = read_file(expected_path);
    try {
      const auto doc = nlohmann::json::parse(text);
      for (const auto& v : doc.at("violations")) {
        ExpectedViolation e;
        e.shape = v.at("shape").get<std::string>();
        e.focus = Term::iri(v.at("focus").get<std::string>());
        for (const auto& [name, value] : v.at("bindings").items()) {
          e.bindings.emplace(name, Term::iri(value.get<std::string>()));
        }
        s.expected.push_back(std::move(e));
      }
    } catch (const nlohmann::json::exception& e) {
      throw LoadError(expected_path.string(), e.what());
    } catch (const Error& e) {
      throw LoadError(expected_path.string(), e.what());
    }
    sort_expected(s.expected);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<ExpectedViolation> violations_of(const ValidationReport& report) {
  std::vector<ExpectedViolation> out;
  for (const auto& r : report.results) out.push_back({r.shape, r.focus, r.bindings});
  sort_expected(out);
  return out;
}

CheckOutcome run_scenario(const Corpus& corpus, const Scenario& scenario,
                          const SaturationOptions& options) {
  Inputs inputs;
  inputs.graph = merge(corpus.tbox, scenario.data);
  inputs.rules = corpus.rules;
  inputs.class_shapes = corpus.class_shapes;
  inputs.controls = corpus.controls;
  return run_check(inputs, options);
}

}  // namespace cpsaudit
