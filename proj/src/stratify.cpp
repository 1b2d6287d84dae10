#include <algorithm>
#include <deque>
#include <functional>

#include "cpsaudit/error.hpp"
#include "cpsaudit/rules.hpp"

namespace cpsaudit {

namespace {

struct Edge {
  std::size_t to;
  bool negative;
};

// Tarjan's algorithm; components come out dependencies-first because edges
// point from a rule to the rules it depends on.
std::vector<std::vector<std::size_t>> strongly_connected(
    const std::vector<std::vector<Edge>>& edges) {
  const std::size_t n = edges.size();
  std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  std::size_t counter = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (const auto& e : edges[v]) {
      if (index[e.to] == SIZE_MAX) {
        visit(e.to);
        low[v] = std::min(low[v], low[e.to]);
      } else if (on_stack[e.to]) {
        low[v] = std::min(low[v], index[e.to]);
      }
    }
    if (low[v] != index[v]) return;
    std::vector<std::size_t> component;
    while (true) {
      const std::size_t w = stack.back();
      stack.pop_back();
      on_stack[w] = false;
      component.push_back(w);
      if (w == v) break;
    }
    std::sort(component.begin(), component.end());
    out.push_back(std::move(component));
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] == SIZE_MAX) visit(v);
  }
  return out;
}

// Shortest dependency path from `from` to `to` inside one component.
std::vector<std::size_t> path_within(const std::vector<std::vector<Edge>>& edges,
                                     const std::vector<std::size_t>& component_of,
                                     std::size_t from, std::size_t to) {
  std::vector<std::size_t> parent(edges.size(), SIZE_MAX);
  std::deque<std::size_t> queue{from};
  parent[from] = from;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    if (v == to) break;
    for (const auto& e : edges[v]) {
      if (parent[e.to] != SIZE_MAX || component_of[e.to] != component_of[from]) continue;
      parent[e.to] = v;
      queue.push_back(e.to);
    }
  }
  std::vector<std::size_t> path;
  for (std::size_t v = to; v != from; v = parent[v]) path.push_back(v);
  path.push_back(from);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

Stratification stratify(const RuleSet& rule_set) {
  std::vector<const Rule*> rules;
  for (const auto& rule : rule_set.rules()) rules.push_back(&rule);
  std::sort(rules.begin(), rules.end(),
            [](const Rule* a, const Rule* b) { return a->id < b->id; });

  const std::size_t n = rules.size();
  std::vector<PredicateKey> heads;
  for (const auto* rule : rules) heads.push_back(PredicateKey::of(rule->head));

  std::vector<std::vector<Edge>> edges(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (const auto& lit : rules[r]->body) {
      if (!lit.is_atom()) continue;
      const PredicateKey key = PredicateKey::of(lit.atom);
      const bool negative = lit.kind == LiteralKind::kNegated;
      for (std::size_t s = 0; s < n; ++s) {
        if (key.overlaps(heads[s])) edges[r].push_back(Edge{s, negative});
      }
    }
  }

  const auto components = strongly_connected(edges);
  std::vector<std::size_t> component_of(n);
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (const auto v : components[c]) component_of[v] = c;
  }

  std::vector<std::size_t> level(components.size(), 0);
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (const auto v : components[c]) {
      for (const auto& e : edges[v]) {
        const std::size_t d = component_of[e.to];
        if (d == c) {
          if (!e.negative) continue;
          std::vector<std::string> cycle;
          cycle.push_back(heads[v].render(rule_set.prefixes()));
          for (const auto w : path_within(edges, component_of, e.to, v)) {
            cycle.push_back(heads[w].render(rule_set.prefixes()));
          }
          throw NegativeCycle(std::move(cycle));
        }
        level[c] = std::max(level[c], level[d] + (e.negative ? 1 : 0));
      }
    }
  }

  Stratification out;
  std::size_t depth = 0;
  for (const auto l : level) depth = std::max(depth, l + 1);
  if (n == 0) depth = 0;
  out.strata.resize(depth);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t l = level[component_of[r]];
    out.strata[l].push_back(rules[r]->id);
    auto [it, inserted] = out.derived_in.try_emplace(heads[r], l);
    if (!inserted) it->second = std::max(it->second, l);
  }
  return out;
}

}  // namespace cpsaudit
