#include "cpsaudit/rules.hpp"

#include <algorithm>
#include <set>

#include "cpsaudit/error.hpp"
#include "cpsaudit/turtle.hpp"
#include "logic_syntax.hpp"

namespace cpsaudit {

Atom Atom::unary(Term cls, PatternSlot arg) {
  return Atom{std::move(cls), {std::move(arg)}};
}

Atom Atom::binary(PatternSlot predicate, PatternSlot subject, PatternSlot object) {
  return Atom{std::move(predicate), {std::move(subject), std::move(object)}};
}

TriplePattern Atom::pattern() const {
  if (is_unary()) return TriplePattern{args[0], rdf("type"), predicate};
  return TriplePattern{args[0], predicate, args[1]};
}

BodyLiteral BodyLiteral::positive(Atom atom) {
  return BodyLiteral{LiteralKind::kPositive, std::move(atom), {}, {}};
}
BodyLiteral BodyLiteral::negated(Atom atom) {
  return BodyLiteral{LiteralKind::kNegated, std::move(atom), {}, {}};
}
BodyLiteral BodyLiteral::not_equal(PatternSlot lhs, PatternSlot rhs) {
  return BodyLiteral{LiteralKind::kNotEqual, {}, std::move(lhs), std::move(rhs)};
}
BodyLiteral BodyLiteral::less(PatternSlot lhs, PatternSlot rhs) {
  return BodyLiteral{LiteralKind::kLess, {}, std::move(lhs), std::move(rhs)};
}

void RuleSet::add(Rule rule) {
  if (index_.count(rule.id)) throw DuplicateRule("duplicate rule id '" + rule.id + "'");
  index_.emplace(rule.id, rules_.size());
  rules_.push_back(std::move(rule));
}

void RuleSet::append(const RuleSet& other) {
  for (const auto& rule : other.rules()) add(rule);
  for (const auto& [label, iri] : other.prefixes()) prefixes_.try_emplace(label, iri);
}

const Rule* RuleSet::find(std::string_view id) const {
  const auto it = index_.find(id);
  return it == index_.end() ? nullptr : &rules_[it->second];
}

PrefixMap default_rule_prefixes() {
  PrefixMap prefixes = standard_prefixes();
  prefixes.emplace("", std::string(kDefaultRuleNamespace));
  prefixes.emplace("ex", std::string(kDefaultRuleNamespace));
  return prefixes;
}

RuleSet parse_rules(std::string_view text, const RuleParseOptions& options) {
  detail::LogicParser parser(text, options.prefixes);
  auto& cursor = parser.cursor();
  RuleSet out;
  std::size_t position = 0;
  while (true) {
    cursor.skip_blank();
    if (cursor.eof()) break;
    if (cursor.peek() == '@') {
      if (!parser.try_prefix_directive()) cursor.fail("unknown directive");
      continue;
    }
    const std::size_t start = cursor.offset();
    ++position;
    std::string id;
    if (cursor.try_keyword("rule")) {
      cursor.skip_blank();
      id = parser.read_identifier();
      if (!id.empty() && cursor.peek() == ':' && detail::is_space(cursor.peek(1))) {
        cursor.advance();
      } else {
        id.clear();
        cursor.reset(start);
      }
    }
    if (id.empty()) id = options.positional_prefix + std::to_string(position);

    Rule rule;
    rule.id = id;
    rule.head = parser.parse_atom();
    cursor.skip_blank();
    cursor.expect(":-", "':-' after rule head");
    rule.body = parser.parse_literals();
    cursor.skip_blank();
    cursor.expect(".", "'.' at end of rule");
    try {
      out.add(std::move(rule));
    } catch (const DuplicateRule& e) {
      cursor.fail_at(start, e.what());
    }
  }
  out.prefixes() = parser.prefixes();
  return out;
}

namespace {

void collect_vars(const PatternSlot& slot, std::vector<std::string>& out) {
  if (const auto* v = std::get_if<Variable>(&slot)) out.push_back(v->name);
}

std::vector<std::string> atom_vars(const Atom& atom) {
  std::vector<std::string> out;
  collect_vars(atom.predicate, out);
  for (const auto& arg : atom.args) collect_vars(arg, out);
  return out;
}

std::vector<std::string> literal_vars(const BodyLiteral& lit) {
  if (lit.is_atom()) return atom_vars(lit.atom);
  std::vector<std::string> out;
  collect_vars(lit.lhs, out);
  collect_vars(lit.rhs, out);
  return out;
}

}  // namespace

std::vector<SafetyViolation> check_safety(const Rule& rule) {
  std::set<std::string> positive;
  std::vector<std::string> order;
  auto note = [&](const std::vector<std::string>& vars) {
    for (const auto& v : vars) {
      if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
    }
  };
  note(atom_vars(rule.head));
  for (const auto& lit : rule.body) {
    const auto vars = literal_vars(lit);
    note(vars);
    if (lit.kind == LiteralKind::kPositive) positive.insert(vars.begin(), vars.end());
  }

  std::vector<SafetyViolation> out;
  const auto head_vars = atom_vars(rule.head);
  for (const auto& var : order) {
    if (positive.count(var)) continue;
    if (std::find(head_vars.begin(), head_vars.end(), var) != head_vars.end()) {
      out.push_back({var, "unbound in head: occurs in no positive body atom"});
      continue;
    }
    std::size_t negated_atoms = 0;
    bool in_comparison = false;
    for (const auto& lit : rule.body) {
      const auto vars = literal_vars(lit);
      if (std::find(vars.begin(), vars.end(), var) == vars.end()) continue;
      if (lit.kind == LiteralKind::kNegated) ++negated_atoms;
      if (lit.kind == LiteralKind::kNotEqual || lit.kind == LiteralKind::kLess) {
        in_comparison = true;
      }
    }
    if (in_comparison) {
      out.push_back({var, "in disequality/comparison but not positively bound"});
    } else if (negated_atoms > 1) {
      out.push_back({var, "shared by negated atoms but not positively bound"});
    }
  }
  return out;
}

void require_safe(const RuleSet& rules) {
  std::string message;
  for (const auto& rule : rules.rules()) {
    for (const auto& violation : check_safety(rule)) {
      if (!message.empty()) message += "; ";
      message += "rule '" + rule.id + "': variable " + violation.variable + " " +
                 violation.reason;
    }
  }
  if (!message.empty()) throw SafetyError(message);
}

PredicateKey PredicateKey::of(const Atom& atom) {
  const auto* predicate = std::get_if<Term>(&atom.predicate);
  if (!predicate) return PredicateKey{};
  if (atom.is_unary()) return PredicateKey{rdf("type"), *predicate};
  if (*predicate == rdf("type")) {
    if (const auto* cls = std::get_if<Term>(&atom.args[1])) {
      return PredicateKey{*predicate, *cls};
    }
  }
  return PredicateKey{*predicate, std::nullopt};
}

bool PredicateKey::overlaps(const PredicateKey& other) const {
  if (!predicate || !other.predicate) return true;
  if (*predicate != *other.predicate) return false;
  if (cls && other.cls) return *cls == *other.cls;
  return true;
}

std::string PredicateKey::render(const PrefixMap& prefixes) const {
  if (!predicate) return "*";
  if (*predicate == rdf("type")) {
    return "a " + (cls ? render_term(*cls, prefixes) : std::string("*"));
  }
  return render_term(*predicate, prefixes);
}

std::size_t Stratification::stratum_of(std::string_view rule_id) const {
  for (std::size_t i = 0; i < strata.size(); ++i) {
    if (std::find(strata[i].begin(), strata[i].end(), rule_id) != strata[i].end()) {
      return i;
    }
  }
  throw Error("rule '" + std::string(rule_id) + "' is not stratified");
}

RuleSet rdfs_rules() {
  static constexpr std::string_view kText = R"(
rule rdfs-subclass-type: rdf:type(x, d) :- rdf:type(x, c), rdfs:subClassOf(c, d).
rule rdfs-subclass-trans: rdfs:subClassOf(a, c) :- rdfs:subClassOf(a, b), rdfs:subClassOf(b, c).
rule rdfs-subproperty-value: triple(s, q, o) :- triple(s, p, o), rdfs:subPropertyOf(p, q).
rule rdfs-subproperty-trans: rdfs:subPropertyOf(a, c) :- rdfs:subPropertyOf(a, b), rdfs:subPropertyOf(b, c).
rule rdfs-domain: rdf:type(s, c) :- rdfs:domain(p, c), triple(s, p, o).
rule rdfs-range: rdf:type(o, c) :- rdfs:range(p, c), triple(s, p, o).
)";
  RuleParseOptions options;
  options.prefixes = standard_prefixes();
  return parse_rules(kText, options);
}

std::string render_slot(const PatternSlot& slot, const PrefixMap& prefixes) {
  if (const auto* v = std::get_if<Variable>(&slot)) return v->name;
  return render_term(std::get<Term>(slot), prefixes);
}

std::string render_atom(const Atom& atom, const PrefixMap& prefixes) {
  if (std::holds_alternative<Variable>(atom.predicate)) {
    return "triple(" + render_slot(atom.args[0], prefixes) + ", " +
           render_slot(atom.predicate, prefixes) + ", " +
           render_slot(atom.args[1], prefixes) + ")";
  }
  std::string out = render_slot(atom.predicate, prefixes) + "(";
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    if (i) out += ", ";
    out += render_slot(atom.args[i], prefixes);
  }
  return out + ")";
}

std::string render_literal(const BodyLiteral& literal, const PrefixMap& prefixes) {
  switch (literal.kind) {
    case LiteralKind::kPositive:
      return render_atom(literal.atom, prefixes);
    case LiteralKind::kNegated:
      return "not " + render_atom(literal.atom, prefixes);
    case LiteralKind::kNotEqual:
      return render_slot(literal.lhs, prefixes) + " != " +
             render_slot(literal.rhs, prefixes);
    case LiteralKind::kLess:
      return render_slot(literal.lhs, prefixes) + " < " +
             render_slot(literal.rhs, prefixes);
  }
  return {};
}

std::string render_rule(const Rule& rule, const PrefixMap& prefixes) {
  std::string out = render_atom(rule.head, prefixes) + " :- ";
  for (std::size_t i = 0; i < rule.body.size(); ++i) {
    if (i) out += ", ";
    out += render_literal(rule.body[i], prefixes);
  }
  return out + ".";
}

}  // namespace cpsaudit
