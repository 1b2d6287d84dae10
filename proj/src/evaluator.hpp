#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cpsaudit/graph.hpp"
#include "cpsaudit/rules.hpp"

namespace cpsaudit::detail {

inline constexpr TermId kUnbound = std::numeric_limits<TermId>::max();

// Term ids for evaluation. Over a mutable graph constants are interned into
// it; over a read-only graph unknown constants get ids past the graph's
// range, which no stored triple can match.
class TermTable {
 public:
  explicit TermTable(Graph& graph) : graph_(&graph), mutable_(&graph) {}
  explicit TermTable(const Graph& graph)
      : graph_(&graph), base_(static_cast<TermId>(graph.term_count())) {}

  TermId resolve(const Term& term);
  const Term& term(TermId id) const {
    if (mutable_ || id < base_) return graph_->term(id);
    return overflow_[id - base_];
  }

 private:
  const Graph* graph_;
  Graph* mutable_ = nullptr;
  TermId base_ = 0;
  std::vector<Term> overflow_;
  std::unordered_map<Term, TermId, TermHash> overflow_ids_;
};

struct Slot {
  bool variable = false;
  std::uint32_t value = 0;  // variable index or term id
};

struct CompiledAtom {
  std::array<Slot, 3> slots;  // subject, predicate, object
};

struct CompiledLiteral {
  LiteralKind kind = LiteralKind::kPositive;
  CompiledAtom atom;
  Slot lhs, rhs;
  // Variables that must be bound before a filter literal can run.
  std::vector<std::uint32_t> required;
  std::vector<std::uint32_t> vars;
};

class VariableTable {
 public:
  std::uint32_t index(const std::string& name);
  std::optional<std::uint32_t> find(const std::string& name) const;
  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }

 private:
  std::map<std::string, std::uint32_t> ids_;
  std::vector<std::string> names_;
};

struct CompiledBody {
  std::vector<CompiledLiteral> literals;
  std::vector<bool> fresh;  // per variable: only inside one negated atom
};

Slot compile_slot(const PatternSlot& slot, VariableTable& vars, TermTable& terms);
CompiledAtom compile_atom(const Atom& atom, VariableTable& vars, TermTable& terms);

// `external` names variables used outside the body (head, focus, message);
// they are never fresh.
CompiledBody compile_body(const std::vector<BodyLiteral>& body,
                          const std::set<std::string>& external,
                          VariableTable& vars, TermTable& terms);

// Evaluation order: filters as soon as their variables are bound, otherwise
// the positive literal with the most bound slots. `first` forces a
// positive literal to the front. Throws SafetyError if a filter can never
// run.
std::vector<std::size_t> make_plan(const CompiledBody& body,
                                   std::vector<bool> bound,
                                   std::optional<std::size_t> first = std::nullopt);

// Inclusive range of saturation stamps a positive literal may match.
struct Window {
  std::uint32_t lo = 0;
  std::uint32_t hi = std::numeric_limits<std::uint32_t>::max();
};

// Backtracking join over `graph`. Negation is checked against every stored
// triple.
class Executor {
 public:
  Executor(const Graph& graph, const TermTable& terms, const CompiledBody& body,
           std::span<const std::uint32_t> stamps = {})
      : graph_(graph), terms_(terms), body_(body), stamps_(stamps) {}

  template <typename OnSolution>
  void run(const std::vector<std::size_t>& plan, const std::vector<Window>& windows,
           std::vector<TermId>& binding, OnSolution&& on_solution) const {
    step(plan, windows, 0, binding, on_solution);
  }

 private:
  std::optional<TermId> fixed(const Slot& slot, const std::vector<TermId>& binding) const {
    if (!slot.variable) return slot.value;
    const TermId v = binding[slot.value];
    if (v == kUnbound) return std::nullopt;
    return v;
  }

  TermId value(const Slot& slot, const std::vector<TermId>& binding) const {
    return slot.variable ? binding[slot.value] : slot.value;
  }

  static std::array<TermId, 3> ids_of(const IdTriple& t) { return {t.s, t.p, t.o}; }

  // Binds the unbound variable slots of `atom` to `t`; false on a clash
  // between repeated variables. `assigned` records what to undo.
  bool unify(const CompiledAtom& atom, const IdTriple& t, std::vector<TermId>& binding,
             std::array<std::uint32_t, 3>& assigned, std::size_t& n_assigned) const {
    const auto ids = ids_of(t);
    for (std::size_t k = 0; k < 3; ++k) {
      const Slot& slot = atom.slots[k];
      if (!slot.variable) continue;
      TermId& cell = binding[slot.value];
      if (cell == kUnbound) {
        cell = ids[k];
        assigned[n_assigned++] = slot.value;
      } else if (cell != ids[k]) {
        return false;
      }
    }
    return true;
  }

  template <typename OnSolution>
  void step(const std::vector<std::size_t>& plan, const std::vector<Window>& windows,
            std::size_t depth, std::vector<TermId>& binding,
            OnSolution& on_solution) const {
    if (depth == plan.size()) {
      on_solution(static_cast<const std::vector<TermId>&>(binding));
      return;
    }
    const std::size_t li = plan[depth];
    const CompiledLiteral& lit = body_.literals[li];
    switch (lit.kind) {
      case LiteralKind::kPositive: {
        const auto& slots = lit.atom.slots;
        const Window window = li < windows.size() ? windows[li] : Window{};
        graph_.scan(fixed(slots[0], binding), fixed(slots[1], binding),
                    fixed(slots[2], binding), [&](std::size_t index) {
                      if (!stamps_.empty()) {
                        const auto stamp = stamps_[index];
                        if (stamp < window.lo || stamp > window.hi) return true;
                      }
                      std::array<std::uint32_t, 3> assigned{};
                      std::size_t n_assigned = 0;
                      if (unify(lit.atom, graph_.id_triple(index), binding, assigned,
                                n_assigned)) {
                        step(plan, windows, depth + 1, binding, on_solution);
                      }
                      for (std::size_t k = 0; k < n_assigned; ++k) {
                        binding[assigned[k]] = kUnbound;
                      }
                      return true;
                    });
        return;
      }
      case LiteralKind::kNegated: {
        const auto& slots = lit.atom.slots;
        bool exists = false;
        graph_.scan(fixed(slots[0], binding), fixed(slots[1], binding),
                    fixed(slots[2], binding), [&](std::size_t index) {
                      std::array<std::uint32_t, 3> assigned{};
                      std::size_t n_assigned = 0;
                      exists = unify(lit.atom, graph_.id_triple(index), binding,
                                     assigned, n_assigned);
                      for (std::size_t k = 0; k < n_assigned; ++k) {
                        binding[assigned[k]] = kUnbound;
                      }
                      return !exists;
                    });
        if (!exists) step(plan, windows, depth + 1, binding, on_solution);
        return;
      }
      case LiteralKind::kNotEqual:
        if (value(lit.lhs, binding) != value(lit.rhs, binding)) {
          step(plan, windows, depth + 1, binding, on_solution);
        }
        return;
      case LiteralKind::kLess:
        if (terms_.term(value(lit.lhs, binding)) < terms_.term(value(lit.rhs, binding))) {
          step(plan, windows, depth + 1, binding, on_solution);
        }
        return;
    }
  }

  const Graph& graph_;
  const TermTable& terms_;
  const CompiledBody& body_;
  std::span<const std::uint32_t> stamps_;
};

}  // namespace cpsaudit::detail
