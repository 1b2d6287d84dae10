#pragma once

// Seeded generators for the property tests.

#include <random>
#include <string>
#include <vector>

#include "cpsaudit/graph.hpp"
#include "cpsaudit/rules.hpp"
#include "cpsaudit/shapes.hpp"
#include "naive.hpp"

namespace oracle {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}
inline bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline Term ex(const std::string& local) { return Term::iri("http://example.org/" + local); }
inline Term constant(std::size_t i) { return ex("c" + std::to_string(i)); }
inline Term predicate(std::size_t i) { return ex("p" + std::to_string(i)); }
inline Term klass(std::size_t i) { return ex("C" + std::to_string(i)); }

inline constexpr std::size_t kPredicates = 3;
inline constexpr std::size_t kClasses = 2;

inline Facts random_facts(Rng& rng, std::size_t n_constants, std::size_t n_facts) {
  Facts out;
  for (std::size_t i = 0; i < n_facts; ++i) {
    const Term s = constant(pick(rng, n_constants));
    if (chance(rng, 0.3)) {
      out.insert(Triple{s, cpsaudit::rdf("type"), klass(pick(rng, kClasses))});
    } else {
      out.insert(Triple{s, predicate(pick(rng, kPredicates)), constant(pick(rng, n_constants))});
    }
  }
  return out;
}

inline cpsaudit::Atom random_atom(Rng& rng, const std::vector<PatternSlot>& args_pool) {
  auto arg = [&] { return args_pool[pick(rng, args_pool.size())]; };
  if (chance(rng, 0.3)) return cpsaudit::Atom::unary(klass(pick(rng, kClasses)), arg());
  return cpsaudit::Atom::binary(predicate(pick(rng, kPredicates)), arg(), arg());
}

inline std::vector<std::string> atom_variables(const cpsaudit::Atom& atom) {
  std::vector<std::string> out;
  for (const auto& a : atom.args) {
    if (const auto* v = std::get_if<Variable>(&a)) out.push_back(v->name);
  }
  return out;
}

// Safe rules over p0..p2 and C0..C1. With `negation`, bodies may also carry
// one negated atom (possibly with a fresh variable) and one disequality;
// the result may then be unstratifiable.
inline std::vector<Rule> random_rules(Rng& rng, std::size_t n_rules, std::size_t n_constants,
                                      bool negation) {
  static const char* const kVars[] = {"x", "y", "z", "w"};
  std::vector<Rule> out;
  for (std::size_t r = 0; r < n_rules; ++r) {
    std::vector<PatternSlot> pool;
    for (const auto* v : kVars) pool.push_back(Variable{v});
    pool.push_back(constant(pick(rng, n_constants)));

    Rule rule;
    rule.id = "r" + std::to_string(r);
    std::vector<std::string> bound;
    const std::size_t n_body = 1 + pick(rng, 3);
    for (std::size_t i = 0; i < n_body; ++i) {
      const auto atom = random_atom(rng, pool);
      for (const auto& v : atom_variables(atom)) bound.push_back(v);
      rule.body.push_back(BodyLiteral::positive(atom));
    }
    std::vector<PatternSlot> head_pool;
    for (const auto& v : bound) head_pool.push_back(Variable{v});
    head_pool.push_back(constant(pick(rng, n_constants)));

    if (negation && chance(rng, 0.6)) {
      auto neg_pool = head_pool;
      if (chance(rng, 0.3)) neg_pool.push_back(Variable{"fresh"});
      rule.body.push_back(BodyLiteral::negated(random_atom(rng, neg_pool)));
    }
    if (negation && bound.size() >= 2 && chance(rng, 0.3)) {
      rule.body.push_back(BodyLiteral::not_equal(Variable{bound[pick(rng, bound.size())]},
                                                 Variable{bound[pick(rng, bound.size())]}));
    }
    rule.head = random_atom(rng, head_pool);
    out.push_back(std::move(rule));
  }
  return out;
}

inline cpsaudit::RuleSet to_rule_set(const std::vector<Rule>& rules) {
  cpsaudit::RuleSet out;
  for (const auto& r : rules) out.add(r);
  return out;
}

inline cpsaudit::Graph to_graph(const Facts& facts) {
  cpsaudit::Graph g;
  g.bind_prefix("ex", "http://example.org/");
  for (const auto& t : facts) g.insert(t, cpsaudit::Section::kAbox);
  return g;
}

inline Facts to_facts(const cpsaudit::Graph& g) {
  const auto triples = g.triples();
  return Facts(triples.begin(), triples.end());
}

// Graph over nodes c0..c<n-1> for control checks.
inline cpsaudit::Graph random_node_graph(Rng& rng, std::size_t nodes) {
  return to_graph(random_facts(rng, nodes, 1 + pick(rng, 20)));
}

// Control text with a target C0(x) or C1(x) and 1..3 pattern literals; may
// be unsafe (the caller re-draws on SafetyError).
inline std::string random_control_text(Rng& rng, std::size_t nodes) {
  static const char* const kVars[] = {"x", "a", "b"};
  auto arg = [&]() -> std::string {
    if (chance(rng, 0.15)) return "ex:c" + std::to_string(pick(rng, nodes));
    return kVars[pick(rng, 3)];
  };
  auto atom = [&]() -> std::string {
    if (chance(rng, 0.3)) return "ex:C" + std::to_string(pick(rng, kClasses)) + "(" + arg() + ")";
    return "ex:p" + std::to_string(pick(rng, kPredicates)) + "(" + arg() + ", " + arg() + ")";
  };
  std::string text = "control c severity Violation \"found\" :- ex:C" +
                     std::to_string(pick(rng, kClasses)) + "(x) | ";
  const std::size_t n = 1 + pick(rng, 3);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) text += ", ";
    const auto kind = pick(rng, 10);
    if (kind < 5) {
      text += atom();
    } else if (kind < 8) {
      text += "not " + atom();
    } else if (kind < 9) {
      text += arg() + " != " + arg();
    } else {
      text += arg() + " < " + arg();
    }
  }
  return text + " .";
}

// Graph with IRIs that do and do not compact, and literals with escapes.
inline cpsaudit::Graph random_turtle_graph(Rng& rng) {
  static const std::vector<std::string> kStrings = {
      "", "plain", "with \"quotes\"", "back\\slash", "line\nbreak", "tab\there",
      "caf\xC3\xA9", "\xE6\xBC\xA2\xE5\xAD\x97", "cr\rlf", "ctl\x01", "'single'", "# not a comment"};
  static const std::vector<std::string> kIris = {
      "http://example.org/a", "http://example.org/b-c", "http://example.org/d_e",
      "http://example.org/f.g", "http://example.org/ends.", "http://example.org/x/y",
      "http://other.net/z#frag", "urn:uuid:1234", "http://example.org/", "http://example.org/1st"};
  cpsaudit::Graph g;
  g.bind_prefix("ex", "http://example.org/");
  if (chance(rng, 0.5)) g.bind_prefix("o", "http://other.net/z#");
  const std::size_t n = pick(rng, 25);
  auto iri = [&] { return Term::iri(kIris[pick(rng, kIris.size())]); };
  for (std::size_t i = 0; i < n; ++i) {
    Term object;
    switch (pick(rng, 5)) {
      case 0: object = Term::string(kStrings[pick(rng, kStrings.size())]); break;
      case 1: {
        const long long v = static_cast<long long>(pick(rng, 2000)) - 1000;
        object = Term::integer(v);
        break;
      }
      case 2: object = Term::boolean(chance(rng, 0.5)); break;
      default: object = iri(); break;
    }
    g.insert(Triple{iri(), chance(rng, 0.2) ? cpsaudit::rdf("type") : iri(), object},
             cpsaudit::Section::kAbox);
  }
  return g;
}

inline std::string random_bytes(Rng& rng, std::size_t max_len) {
  static const std::string kTokens[] = {"@prefix", "ex:", "<http://e.org/>", " ", ".", ";",
                                        ",", "a", "[", "]", "(", "\"", "'", "\\", "#",
                                        "_:b", "^^", "xsd:integer", "1", "-", "\n", ":"};
  std::string out;
  const std::size_t len = pick(rng, max_len + 1);
  while (out.size() < len) {
    if (chance(rng, 0.5)) {
      out += kTokens[pick(rng, std::size(kTokens))];
    } else {
      out.push_back(static_cast<char>(pick(rng, 256)));
    }
  }
  return out;
}

inline std::string mutate(Rng& rng, std::string text) {
  const std::size_t edits = 1 + pick(rng, 4);
  for (std::size_t i = 0; i < edits && !text.empty(); ++i) {
    const std::size_t at = pick(rng, text.size());
    switch (pick(rng, 3)) {
      case 0: text.erase(at, 1 + pick(rng, 4)); break;
      case 1: text.insert(at, 1, static_cast<char>(pick(rng, 256))); break;
      default: text[at] = static_cast<char>(pick(rng, 256)); break;
    }
  }
  return text;
}

}  // namespace oracle
