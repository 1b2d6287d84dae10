#include <gtest/gtest.h>

#include "cpsaudit/error.hpp"
#include "cpsaudit/rules.hpp"
#include "cpsaudit/saturate.hpp"
#include "oracle/random.hpp"

using namespace cpsaudit;

namespace {

Term ex(const std::string& local) { return Term::iri("http://example.org/" + local); }

Rule one_rule(const std::string& text) {
  const RuleSet rules = parse_rules(text);
  EXPECT_EQ(rules.size(), 1u);
  return rules.rules().at(0);
}

}  // namespace

TEST(ParseRules, WorkedExample) {
  const Rule r = one_rule("isB(a) :- isC(a).");
  EXPECT_EQ(r.id, "rule-1");
  EXPECT_EQ(r.head.pattern(), (TriplePattern{Variable{"a"}, rdf("type"), ex("isB")}));
  ASSERT_EQ(r.body.size(), 1u);
  EXPECT_EQ(r.body[0], BodyLiteral::positive(Atom::unary(ex("isC"), Variable{"a"})));
}

TEST(ParseRules, Empty) {
  EXPECT_TRUE(parse_rules("").empty());
  EXPECT_TRUE(parse_rules("# only a comment\n").empty());
}

TEST(ParseRules, ConnectivityRule) {
  const Rule r = one_rule(
      "connected(x,y) :- source(fw,sn1),\n"
      "                  destination(fw,sn2),\n"
      "                  hostInSubnet(x, sn1),\n"
      "                  hostInSubnet(y,sn2).");
  ASSERT_EQ(r.body.size(), 4u);
  for (const auto& lit : r.body) EXPECT_EQ(lit.kind, LiteralKind::kPositive);
  EXPECT_EQ(r.body[2].atom.pattern(),
            (TriplePattern{Variable{"x"}, ex("hostInSubnet"), Variable{"sn1"}}));
  EXPECT_TRUE(check_safety(r).empty());
}

TEST(ParseRules, LabelsPrefixesAndLiterals) {
  const RuleSet rules = parse_rules(
      "@prefix q: <http://q.org/> .\n"
      "rule first: q:p(x, \"s\") :- q:r(x, 5), not q:s(x, true), x != q:c.\n"
      "q:t(x) :- q:u(x), x < <http://q.org/z>.\n");
  ASSERT_EQ(rules.size(), 2u);
  EXPECT_EQ(rules.rules()[0].id, "first");
  EXPECT_EQ(rules.rules()[1].id, "rule-2");
  const Rule& r = rules.rules()[0];
  EXPECT_EQ(r.body[1].kind, LiteralKind::kNegated);
  EXPECT_EQ(r.body[2].kind, LiteralKind::kNotEqual);
  EXPECT_EQ(r.body[0].atom.args[1], PatternSlot{Term::integer(5)});
  EXPECT_EQ(rules.rules()[1].body[1].kind, LiteralKind::kLess);
  EXPECT_EQ(rules.prefixes().at("q"), "http://q.org/");
}

TEST(ParseRules, GenericTripleAtom) {
  const Rule r = one_rule("triple(s, q, o) :- triple(s, p, o), rdfs:subPropertyOf(p, q).");
  EXPECT_EQ(r.head.predicate, PatternSlot{Variable{"q"}});
}

TEST(ParseRules, Errors) {
  for (const std::string text : {"p(x) :- q(x)", "p(x) q(x).", "p(x, y, z) :- q(x).",
                                 "p() :- q(x).", "rule a: p(x) :- .", "p(x) :- x != .",
                                 "p(x) :- not x != y."}) {
    EXPECT_THROW(parse_rules(text), ParseError) << text;
  }
  EXPECT_THROW(parse_rules("zz:p(x) :- q(x)."), UnknownPrefix);
  // Within one text the duplicate is reported with its position.
  try {
    parse_rules("rule a: p(x) :- q(x). rule a: r(x) :- q(x).");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 23u);
    EXPECT_NE(e.message().find("duplicate"), std::string::npos);
  }
  RuleSet merged = parse_rules("rule a: p(x) :- q(x).");
  EXPECT_THROW(merged.append(parse_rules("rule a: r(x) :- q(x).")), DuplicateRule);
  try {
    parse_rules("p(x) :- q(x).\n  p(x) :- ;");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Safety, Examples) {
  EXPECT_TRUE(check_safety(one_rule("p(x) :- q(x).")).empty());

  const auto head = check_safety(one_rule("p(x,y) :- q(x)."));
  ASSERT_EQ(head.size(), 1u);
  EXPECT_EQ(head[0].variable, "y");
  EXPECT_NE(head[0].reason.find("head"), std::string::npos);

  const auto diseq = check_safety(one_rule("p(x) :- q(x), not r(x,z), z != x."));
  ASSERT_EQ(diseq.size(), 1u);
  EXPECT_EQ(diseq[0].variable, "z");
  EXPECT_NE(diseq[0].reason.find("disequality"), std::string::npos);
}

TEST(Safety, FreshVariableInOneNegatedAtom) {
  EXPECT_TRUE(check_safety(one_rule("p(x) :- q(x), not r(x, z).")).empty());
  const auto shared = check_safety(one_rule("p(x) :- q(x), not r(x, z), not s(z)."));
  ASSERT_EQ(shared.size(), 1u);
  EXPECT_EQ(shared[0].variable, "z");
  EXPECT_THROW(require_safe(parse_rules("p(x,y) :- q(x).")), SafetyError);
}

TEST(Stratify, FrequencyRules) {
  const RuleSet rules = parse_rules(
      "rule sharedForwarder: sharedForwarder(m1, m2) :- forwards(f, m1), forwards(f, m2), m1 != m2.\n"
      "rule independent: independent(m1, m2) :- measurement(m1), measurement(m2), m1 != m2,\n"
      "    not sharedForwarder(m1, m2).\n");
  const Stratification s = stratify(rules);
  ASSERT_EQ(s.strata.size(), 2u);
  EXPECT_EQ(s.stratum_of("sharedForwarder"), 0u);
  EXPECT_EQ(s.stratum_of("independent"), 1u);
}

TEST(Stratify, NegativeCycle) {
  try {
    stratify(parse_rules("p(x) :- not p(x)."));
    FAIL();
  } catch (const NegativeCycle& e) {
    ASSERT_FALSE(e.cycle().empty());
    EXPECT_NE(e.cycle().front().find(":p"), std::string::npos);
  }
  EXPECT_THROW(stratify(parse_rules("p(x) :- q(x), not r(x). r(x) :- q(x), p(x).")),
               NegativeCycle);
}

TEST(Stratify, PositiveIsOneStratum) {
  const Stratification s =
      stratify(parse_rules("p(x) :- q(x). q(x) :- p(x). r(x, y) :- p(x), q(y)."));
  EXPECT_EQ(s.strata.size(), 1u);
  EXPECT_EQ(stratify(RuleSet{}).strata.size(), 0u);
}

TEST(Stratify, MinimalAndDeterministic) {
  const RuleSet rules = parse_rules(
      "rule c: c(x) :- a(x), not b(x). rule b: b(x) :- a(x). rule d: d(x) :- a(x).");
  const Stratification s = stratify(rules);
  EXPECT_EQ(s.stratum_of("b"), 0u);
  EXPECT_EQ(s.stratum_of("d"), 0u);
  EXPECT_EQ(s.stratum_of("c"), 1u);
  EXPECT_EQ(s.strata, stratify(rules).strata);
}

// Rule-level strata agree with the predicate-level oracle: every rule sits
// above whatever it negates and no lower than what it uses.
TEST(StratifyProperty, RespectsDependencies) {
  oracle::Rng rng(31);
  int checked = 0;
  for (int round = 0; round < 300; ++round) {
    const auto rules = oracle::random_rules(rng, 1 + oracle::pick(rng, 5), 4, true);
    bool oracle_ok = true;
    try {
      oracle::predicate_strata(rules);
    } catch (const std::runtime_error&) {
      oracle_ok = false;
    }
    const RuleSet set = oracle::to_rule_set(rules);
    if (!oracle_ok) {
      EXPECT_THROW(stratify(set), NegativeCycle);
      continue;
    }
    const Stratification s = stratify(set);
    ++checked;
    for (const auto& r : rules) {
      for (const auto& lit : r.body) {
        if (!lit.is_atom()) continue;
        for (const auto& other : rules) {
          if (!PredicateKey::of(lit.atom).overlaps(PredicateKey::of(other.head))) continue;
          if (lit.kind == LiteralKind::kNegated) {
            EXPECT_GT(s.stratum_of(r.id), s.stratum_of(other.id));
          } else {
            EXPECT_GE(s.stratum_of(r.id), s.stratum_of(other.id));
          }
        }
      }
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Rdfs, SubclassTyping) {
  Graph g;
  g.insert({ex("A"), rdfs("subClassOf"), ex("B")}, Section::kTbox);
  g.insert({ex("x"), rdf("type"), ex("A")}, Section::kAbox);
  EXPECT_TRUE(saturate(g, rdfs_rules()).graph.contains({ex("x"), rdf("type"), ex("B")}));
}

TEST(Rdfs, SubclassChain) {
  Graph g;
  g.insert({ex("A"), rdfs("subClassOf"), ex("B")}, Section::kTbox);
  g.insert({ex("B"), rdfs("subClassOf"), ex("C")}, Section::kTbox);
  const auto r = saturate(g, rdfs_rules());
  EXPECT_EQ(r.graph.section_of({ex("A"), rdfs("subClassOf"), ex("C")}), Section::kDerived);
}

TEST(Rdfs, DomainRangeAndSubproperty) {
  Graph g;
  g.insert({ex("p"), rdfs("domain"), ex("D")}, Section::kTbox);
  g.insert({ex("p"), rdfs("range"), ex("R")}, Section::kTbox);
  g.insert({ex("p"), rdfs("subPropertyOf"), ex("q")}, Section::kTbox);
  g.insert({ex("s"), ex("p"), ex("o")}, Section::kAbox);
  g.insert({ex("s"), ex("p"), Term::integer(3)}, Section::kAbox);
  const auto r = saturate(g, rdfs_rules());
  EXPECT_TRUE(r.graph.contains({ex("s"), rdf("type"), ex("D")}));
  EXPECT_TRUE(r.graph.contains({ex("o"), rdf("type"), ex("R")}));
  EXPECT_TRUE(r.graph.contains({ex("s"), ex("q"), ex("o")}));
  EXPECT_TRUE(r.graph.contains({ex("s"), ex("q"), Term::integer(3)}));
  // Range typing skips literal objects.
  EXPECT_EQ(r.derived_count(), 4u);
}

TEST(Rdfs, PackageIsPositiveAndSafe) {
  const RuleSet rules = rdfs_rules();
  EXPECT_EQ(rules.size(), 6u);
  EXPECT_NO_THROW(require_safe(rules));
  for (const auto& r : rules.rules()) {
    for (const auto& lit : r.body) EXPECT_EQ(lit.kind, LiteralKind::kPositive);
  }
}

TEST(Specialize, WildcardRulesAreCopiedPerSchemaFact) {
  Graph g;
  g.bind_prefix("ex", "http://example.org/");
  g.insert({ex("A"), rdfs("subClassOf"), ex("B")}, Section::kTbox);
  g.insert({ex("p"), rdfs("domain"), ex("D")}, Section::kTbox);
  const RuleSet s = specialize_rules(rdfs_rules(), g);
  std::vector<std::string> ids;
  for (const auto& r : s.rules()) ids.push_back(r.id);
  EXPECT_TRUE(std::is_sorted(ids.begin(), ids.end()));
  const Rule* sub = nullptr;
  for (const auto& r : s.rules()) {
    if (r.origin_id == "rdfs-subclass-type") sub = &r;
  }
  ASSERT_NE(sub, nullptr);
  EXPECT_EQ(sub->presets.at("c"), ex("A"));
  EXPECT_EQ(sub->presets.at("d"), ex("B"));
}

TEST(Render, RuleRoundTrip) {
  const RuleSet rules = parse_rules("rule r: ex:p(x, y) :- ex:q(x), not ex:r(x, z), x != y, ex:s(y, x).");
  const std::string text = render_rule(rules.rules()[0], rules.prefixes());
  const RuleSet back = parse_rules(text);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back.rules()[0].head, rules.rules()[0].head);
  EXPECT_EQ(back.rules()[0].body, rules.rules()[0].body);
}
