#include "evaluator.hpp"

#include <algorithm>

#include "cpsaudit/error.hpp"

namespace cpsaudit::detail {

TermId TermTable::resolve(const Term& term) {
  if (mutable_) return mutable_->intern(term);
  if (const auto id = graph_->lookup(term)) return *id;
  const auto [it, inserted] = overflow_ids_.try_emplace(
      term, static_cast<TermId>(base_ + overflow_.size()));
  if (inserted) overflow_.push_back(term);
  return it->second;
}

std::uint32_t VariableTable::index(const std::string& name) {
  const auto [it, inserted] =
      ids_.try_emplace(name, static_cast<std::uint32_t>(names_.size()));
  if (inserted) names_.push_back(name);
  return it->second;
}

std::optional<std::uint32_t> VariableTable::find(const std::string& name) const {
  const auto it = ids_.find(name);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

Slot compile_slot(const PatternSlot& slot, VariableTable& vars, TermTable& terms) {
  if (const auto* v = std::get_if<Variable>(&slot)) return Slot{true, vars.index(v->name)};
  return Slot{false, terms.resolve(std::get<Term>(slot))};
}

CompiledAtom compile_atom(const Atom& atom, VariableTable& vars, TermTable& terms) {
  const TriplePattern p = atom.pattern();
  return CompiledAtom{{compile_slot(p.subject, vars, terms),
                       compile_slot(p.predicate, vars, terms),
                       compile_slot(p.object, vars, terms)}};
}

namespace {

void add_var(const Slot& slot, std::vector<std::uint32_t>& out) {
  if (slot.variable && std::find(out.begin(), out.end(), slot.value) == out.end()) {
    out.push_back(slot.value);
  }
}

}  // namespace

CompiledBody compile_body(const std::vector<BodyLiteral>& body,
                          const std::set<std::string>& external,
                          VariableTable& vars, TermTable& terms) {
  CompiledBody out;
  for (const auto& lit : body) {
    CompiledLiteral c;
    c.kind = lit.kind;
    if (lit.is_atom()) {
      c.atom = compile_atom(lit.atom, vars, terms);
      for (const auto& slot : c.atom.slots) add_var(slot, c.vars);
    } else {
      c.lhs = compile_slot(lit.lhs, vars, terms);
      c.rhs = compile_slot(lit.rhs, vars, terms);
      add_var(c.lhs, c.vars);
      add_var(c.rhs, c.vars);
    }
    out.literals.push_back(std::move(c));
  }

  // A variable is fresh when it occurs in exactly one literal, that literal
  // is negated, and nothing outside the body uses it.
  out.fresh.assign(vars.size(), false);
  for (std::uint32_t v = 0; v < vars.size(); ++v) {
    if (external.count(vars.names()[v])) continue;
    std::size_t uses = 0;
    bool negated_only = true;
    for (const auto& lit : out.literals) {
      if (std::find(lit.vars.begin(), lit.vars.end(), v) == lit.vars.end()) continue;
      ++uses;
      if (lit.kind != LiteralKind::kNegated) negated_only = false;
    }
    out.fresh[v] = uses == 1 && negated_only;
  }
  for (auto& lit : out.literals) {
    for (const auto v : lit.vars) {
      if (!out.fresh[v]) lit.required.push_back(v);
    }
  }
  return out;
}

std::vector<std::size_t> make_plan(const CompiledBody& body, std::vector<bool> bound,
                                   std::optional<std::size_t> first) {
  const std::size_t n = body.literals.size();
  if (bound.size() < body.fresh.size()) bound.resize(body.fresh.size(), false);
  std::vector<bool> placed(n, false);
  std::vector<std::size_t> plan;

  auto place = [&](std::size_t i) {
    placed[i] = true;
    plan.push_back(i);
    if (body.literals[i].kind == LiteralKind::kPositive) {
      for (const auto v : body.literals[i].vars) bound[v] = true;
    }
  };
  auto ready = [&](std::size_t i) {
    const auto& req = body.literals[i].required;
    return std::all_of(req.begin(), req.end(), [&](std::uint32_t v) { return bound[v]; });
  };

  while (plan.size() < n) {
    bool progressed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (placed[i] || body.literals[i].kind == LiteralKind::kPositive) continue;
      if (ready(i)) {
        place(i);
        progressed = true;
      }
    }
    if (progressed) continue;
    if (first && !placed[*first]) {
      place(*first);
      continue;
    }
    std::optional<std::size_t> best;
    int best_score = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (placed[i] || body.literals[i].kind != LiteralKind::kPositive) continue;
      int score = 0;
      for (const auto& slot : body.literals[i].atom.slots) {
        if (!slot.variable || bound[slot.value]) ++score;
      }
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    if (!best) throw SafetyError("body literal can never have its variables bound");
    place(*best);
  }
  return plan;
}

}  // namespace cpsaudit::detail
