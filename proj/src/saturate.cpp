#include "cpsaudit/saturate.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "cpsaudit/error.hpp"
#include "cpsaudit/turtle.hpp"
#include "evaluator.hpp"

namespace cpsaudit {

namespace {

using detail::CompiledAtom;
using detail::CompiledBody;
using detail::Executor;
using detail::kUnbound;
using detail::TermTable;
using detail::VariableTable;
using detail::Window;

PatternSlot substitute(const PatternSlot& slot, const Binding& binding) {
  if (const auto* v = std::get_if<Variable>(&slot)) {
    if (const auto it = binding.find(v->name); it != binding.end()) return it->second;
  }
  return slot;
}

Atom substitute(const Atom& atom, const Binding& binding) {
  Atom out{substitute(atom.predicate, binding), {}};
  for (const auto& arg : atom.args) out.args.push_back(substitute(arg, binding));
  return out;
}

TriplePattern substitute(const TriplePattern& p, const Binding& binding) {
  return TriplePattern{substitute(p.subject, binding), substitute(p.predicate, binding),
                       substitute(p.object, binding)};
}

// Variables standing in predicate or rdf:type-class positions.
std::set<std::string> schema_variables(const Rule& rule) {
  std::set<std::string> out;
  auto visit = [&](const Atom& atom) {
    if (const auto* v = std::get_if<Variable>(&atom.predicate)) out.insert(v->name);
    const auto* p = std::get_if<Term>(&atom.predicate);
    if (p && *p == rdf("type") && atom.args.size() == 2) {
      if (const auto* v = std::get_if<Variable>(&atom.args[1])) out.insert(v->name);
    }
  };
  visit(rule.head);
  for (const auto& lit : rule.body) {
    if (lit.is_atom()) visit(lit.atom);
  }
  return out;
}

bool is_keyed(const Atom& atom) {
  const PredicateKey key = PredicateKey::of(atom);
  return key.predicate && (*key.predicate != rdf("type") || key.cls);
}

void specialize_one(const Rule& rule, const Graph& graph, RuleSet& out,
                    const PrefixMap& prefixes) {
  const auto wild = schema_variables(rule);
  if (wild.empty()) {
    out.add(rule);
    return;
  }
  std::vector<BodyLiteral> guards;
  std::set<std::string> covered;
  for (const auto& lit : rule.body) {
    if (lit.kind != LiteralKind::kPositive || !is_keyed(lit.atom)) continue;
    guards.push_back(lit);
    const TriplePattern p = lit.atom.pattern();
    for (const auto* slot : {&p.subject, &p.predicate, &p.object}) {
      if (const auto* v = std::get_if<Variable>(slot)) covered.insert(v->name);
    }
  }
  if (!std::includes(covered.begin(), covered.end(), wild.begin(), wild.end())) {
    out.add(rule);
    return;
  }

  TermTable terms(graph);
  VariableTable vars;
  const CompiledBody body = detail::compile_body(guards, wild, vars, terms);
  const auto plan = detail::make_plan(body, std::vector<bool>(vars.size(), false));
  std::vector<TermId> binding(vars.size(), kUnbound);
  std::set<std::vector<Term>> solutions;
  Executor(graph, terms, body).run(plan, {}, binding, [&](const std::vector<TermId>& b) {
    std::vector<Term> projection;
    for (const auto& name : wild) projection.push_back(terms.term(b[*vars.find(name)]));
    solutions.insert(std::move(projection));
  });

  std::set<std::string> predicate_vars;
  auto note_predicate = [&](const Atom& atom) {
    if (const auto* v = std::get_if<Variable>(&atom.predicate)) predicate_vars.insert(v->name);
  };
  note_predicate(rule.head);
  for (const auto& lit : rule.body) {
    if (lit.is_atom()) note_predicate(lit.atom);
  }

  for (const auto& projection : solutions) {
    Binding presets;
    std::string suffix;
    bool valid = true;
    std::size_t k = 0;
    for (const auto& name : wild) {
      const Term& value = projection[k++];
      if (predicate_vars.count(name) && !value.is_iri()) valid = false;
      presets.emplace(name, value);
      suffix += (suffix.empty() ? "" : ",") + name + "=" + render_term(value, prefixes);
    }
    if (!valid) continue;
    Rule copy;
    copy.id = rule.id + "[" + suffix + "]";
    copy.origin_id = rule.source_id();
    copy.presets = rule.presets;
    copy.presets.insert(presets.begin(), presets.end());
    copy.head = substitute(rule.head, presets);
    for (const auto& lit : rule.body) {
      BodyLiteral l = lit;
      if (l.is_atom()) {
        l.atom = substitute(l.atom, presets);
      } else {
        l.lhs = substitute(l.lhs, presets);
        l.rhs = substitute(l.rhs, presets);
      }
      copy.body.push_back(std::move(l));
    }
    out.add(std::move(copy));
  }
}

struct CompiledRule {
  const Rule* rule = nullptr;
  VariableTable vars;
  CompiledAtom head;
  CompiledBody body;
  std::vector<std::size_t> positives;
  std::vector<std::size_t> full_plan;
  std::vector<std::vector<std::size_t>> delta_plans;  // one per positive
};

struct RunOutput {
  Graph graph;
  std::vector<Derivation> derivations;
  std::size_t iterations = 0;
};

class Run {
 public:
  Run(const Graph& input, const RuleSet& rules, const Stratification& strata,
      const SaturationOptions& options)
      : graph_(input), terms_(graph_), rules_(rules), strata_(strata), options_(options) {
    stamps_.assign(graph_.size(), 0);
  }

  RunOutput execute() {
    std::unordered_map<std::string, CompiledRule> compiled;
    for (const auto& rule : rules_.rules()) compiled.emplace(rule.id, compile(rule));

    for (const auto& stratum : strata_.strata) {
      std::vector<CompiledRule*> members;
      for (const auto& id : stratum) members.push_back(&compiled.at(id));
      std::sort(members.begin(), members.end(), [](const CompiledRule* a, const CompiledRule* b) {
        return std::pair(a->rule->source_id(), a->rule->id) <
               std::pair(b->rule->source_id(), b->rule->id);
      });
      run_stratum(members);
    }

    std::stable_sort(derivations_.begin(), derivations_.end(),
                     [](const Derivation& a, const Derivation& b) {
                       return std::pair(a.iteration, a.rule_id) <
                              std::pair(b.iteration, b.rule_id);
                     });
    return RunOutput{std::move(graph_), std::move(derivations_), iteration_};
  }

 private:
  CompiledRule compile(const Rule& rule) {
    CompiledRule c;
    c.rule = &rule;
    c.head = detail::compile_atom(rule.head, c.vars, terms_);
    std::set<std::string> external;
    for (const auto& name : c.vars.names()) external.insert(name);
    c.body = detail::compile_body(rule.body, external, c.vars, terms_);
    for (std::size_t i = 0; i < c.body.literals.size(); ++i) {
      if (c.body.literals[i].kind == LiteralKind::kPositive) c.positives.push_back(i);
    }
    const std::vector<bool> unbound(c.vars.size(), false);
    c.full_plan = detail::make_plan(c.body, unbound);
    for (const auto i : c.positives) c.delta_plans.push_back(detail::make_plan(c.body, unbound, i));
    return c;
  }

  void run_stratum(const std::vector<CompiledRule*>& members) {
    for (std::size_t round = 0;; ++round) {
      ++iteration_;
      if (iteration_ > options_.max_iterations) throw IterationLimit(options_.max_iterations);
      const auto now = static_cast<std::uint32_t>(iteration_);
      pending_.clear();
      pending_set_.clear();

      for (auto* rule : members) {
        const std::size_t n = rule->body.literals.size();
        if (round == 0) {
          const std::vector<Window> windows(n, Window{0, now - 1});
          evaluate(*rule, rule->full_plan, windows);
          continue;
        }
        for (std::size_t k = 0; k < rule->positives.size(); ++k) {
          std::vector<Window> windows(n, Window{0, now - 1});
          for (std::size_t j = 0; j < rule->positives.size(); ++j) {
            const std::size_t li = rule->positives[j];
            if (j < k) windows[li] = Window{0, now - 2};
            if (j == k) windows[li] = Window{now - 1, now - 1};
          }
          evaluate(*rule, rule->delta_plans[k], windows);
        }
      }

      if (pending_.empty()) return;
      for (const auto& t : pending_) {
        graph_.insert_ids(t, Section::kDerived);
        stamps_.push_back(now);
      }
    }
  }

  void evaluate(const CompiledRule& rule, const std::vector<std::size_t>& plan,
                const std::vector<Window>& windows) {
    std::vector<TermId> binding(rule.vars.size(), kUnbound);
    Executor executor(graph_, terms_, rule.body, stamps_);
    executor.run(plan, windows, binding, [&](const std::vector<TermId>& b) {
      auto value = [&](const detail::Slot& s) { return s.variable ? b[s.value] : s.value; };
      const IdTriple t{value(rule.head.slots[0]), value(rule.head.slots[1]),
                       value(rule.head.slots[2])};
      if (!terms_.term(t.s).is_iri() || !terms_.term(t.p).is_iri()) return;
      if (const auto existing = graph_.find(t)) {
        if (stamps_[*existing] == 0) return;  // part of the input
      } else if (pending_set_.insert(t).second) {
        pending_.push_back(t);
      }
      record(rule, t, b);
    });
  }

  void record(const CompiledRule& rule, const IdTriple& t, const std::vector<TermId>& b) {
    auto& count = derivation_counts_[t];
    if (count >= options_.derivation_cap) return;
    ++count;

    Derivation d;
    d.triple = Triple{terms_.term(t.s), terms_.term(t.p), terms_.term(t.o)};
    d.rule_id = rule.rule->source_id();
    d.iteration = iteration_;
    d.bindings = rule.rule->presets;
    for (std::uint32_t v = 0; v < rule.vars.size(); ++v) {
      if (b[v] != kUnbound) d.bindings[rule.vars.names()[v]] = terms_.term(b[v]);
    }
    for (const auto& lit : rule.rule->body) {
      if (!lit.is_atom()) continue;
      const TriplePattern p = substitute(lit.atom.pattern(), d.bindings);
      if (lit.kind == LiteralKind::kPositive) {
        d.premises.push_back(Triple{std::get<Term>(p.subject), std::get<Term>(p.predicate),
                                    std::get<Term>(p.object)});
      } else {
        d.absent.push_back(p);
      }
    }
    derivations_.push_back(std::move(d));
  }

  Graph graph_;
  TermTable terms_;
  const RuleSet& rules_;
  const Stratification& strata_;
  const SaturationOptions& options_;

  std::vector<std::uint32_t> stamps_;
  std::size_t iteration_ = 0;
  std::vector<IdTriple> pending_;
  std::unordered_set<IdTriple, IdTripleHash> pending_set_;
  std::unordered_map<IdTriple, std::size_t, IdTripleHash> derivation_counts_;
  std::vector<Derivation> derivations_;
};

}  // namespace

RuleSet specialize_rules(const RuleSet& rules, const Graph& graph) {
  std::vector<const Rule*> sorted;
  for (const auto& rule : rules.rules()) sorted.push_back(&rule);
  std::sort(sorted.begin(), sorted.end(),
            [](const Rule* a, const Rule* b) { return a->id < b->id; });
  RuleSet staged;
  PrefixMap prefixes = rules.prefixes();
  for (const auto& [label, iri] : graph.prefixes()) prefixes.try_emplace(label, iri);
  for (const auto* rule : sorted) specialize_one(*rule, graph, staged, prefixes);

  std::vector<Rule> ordered = staged.rules();
  std::sort(ordered.begin(), ordered.end(),
            [](const Rule& a, const Rule& b) { return a.id < b.id; });
  RuleSet out;
  out.prefixes() = rules.prefixes();
  for (auto& rule : ordered) out.add(std::move(rule));
  return out;
}

SaturationResult saturate(const Graph& input, const RuleSet& rules,
                          const SaturationOptions& options) {
  // Guard solutions only grow as the union of seen graphs grows, so this
  // settles after a bounded number of passes.
  Graph seen = input;
  RuleSet current = specialize_rules(rules, seen);
  bool checked = false;
  while (true) {
    Stratification strata = stratify(current);
    // After stratify, so a rule like `p(x) :- not p(x).` reports its cycle.
    if (!checked) require_safe(rules);
    checked = true;
    RunOutput run = Run(input, current, strata, options).execute();

    for (std::size_t i = 0; i < run.graph.size(); ++i) {
      if (run.graph.section_at(i) == Section::kDerived && !seen.contains(run.graph.triple_at(i))) {
        seen.insert(run.graph.triple_at(i), Section::kDerived);
      }
    }
    RuleSet next = specialize_rules(rules, seen);
    if (next.size() == current.size()) {
      SaturationResult result;
      result.graph = std::move(run.graph);
      result.derivations = std::move(run.derivations);
      result.evaluated_rules = std::move(current);
      result.stratification = std::move(strata);
      result.iterations = run.iterations;
      return result;
    }
    current = std::move(next);
  }
}

namespace {

using DerivationIndex = std::map<Triple, std::vector<const Derivation*>>;

ExplanationNode build(const DerivationIndex& index, const Derivation& d) {
  ExplanationNode node;
  node.fact = d.triple;
  node.rule_id = d.rule_id;
  node.bindings = d.bindings;
  node.iteration = d.iteration;
  node.absent = d.absent;
  for (const auto& premise : d.premises) {
    const auto it = index.find(premise);
    const Derivation* earliest = nullptr;
    if (it != index.end()) {
      for (const auto* candidate : it->second) {
        if (candidate->iteration < d.iteration &&
            (!earliest || candidate->iteration < earliest->iteration)) {
          earliest = candidate;
        }
      }
    }
    if (earliest) {
      node.children.push_back(build(index, *earliest));
    } else {
      ExplanationNode leaf;
      leaf.fact = premise;
      node.children.push_back(std::move(leaf));
    }
  }
  return node;
}

std::string render_pattern(const TriplePattern& p, const PrefixMap& prefixes) {
  auto slot = [&](const PatternSlot& s) {
    if (const auto* v = std::get_if<Variable>(&s)) return "?" + v->name;
    return render_term(std::get<Term>(s), prefixes);
  };
  return slot(p.subject) + " " + slot(p.predicate) + " " + slot(p.object);
}

void render_into(const ExplanationNode& node, const PrefixMap& prefixes, std::size_t depth,
                 std::string& out) {
  const std::string indent(depth * 2, ' ');
  out += indent + render_triple(node.fact, prefixes);
  if (!node.derived()) {
    out += "  [asserted]\n";
    return;
  }
  out += "  <- " + node.rule_id + " {";
  bool first = true;
  for (const auto& [name, value] : node.bindings) {
    out += (first ? "" : ", ") + name + "=" + render_term(value, prefixes);
    first = false;
  }
  out += "} (iteration " + std::to_string(node.iteration) + ")\n";
  for (const auto& child : node.children) render_into(child, prefixes, depth + 1, out);
  for (const auto& p : node.absent) {
    out += indent + "  not " + render_pattern(p, prefixes) + "\n";
  }
}

}  // namespace

std::size_t ExplanationNode::depth() const {
  std::size_t deepest = 0;
  for (const auto& child : children) deepest = std::max(deepest, child.depth() + 1);
  return deepest;
}

ExplanationNode explain(const std::vector<Derivation>& derivations, const Triple& triple) {
  DerivationIndex index;
  for (const auto& d : derivations) index[d.triple].push_back(&d);
  const auto it = index.find(triple);
  if (it == index.end()) throw NotDerived("triple has no recorded derivation");
  const Derivation* earliest = it->second.front();
  for (const auto* d : it->second) {
    if (d->iteration < earliest->iteration) earliest = d;
  }
  return build(index, *earliest);
}

std::string render_explanation(const ExplanationNode& node, const PrefixMap& prefixes) {
  std::string out;
  render_into(node, prefixes, 0, out);
  return out;
}

}  // namespace cpsaudit
