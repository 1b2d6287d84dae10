#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cpsaudit/term.hpp"

namespace cpsaudit {

using TermId = std::uint32_t;

struct IdTriple {
  TermId s = 0;
  TermId p = 0;
  TermId o = 0;
  friend bool operator==(const IdTriple&, const IdTriple&) = default;
};

struct IdTripleHash {
  std::size_t operator()(const IdTriple& t) const noexcept {
    std::uint64_t h = t.s;
    h = h * 0x9E3779B97F4A7C15ull + t.p;
    h = h * 0x9E3779B97F4A7C15ull + t.o;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

// Section-tagged triple store with a prefix map.
//
// Terms are interned into dense ids; triples are kept in insertion order and
// indexed by subject, predicate, object, (subject, predicate) and
// (predicate, object). Triple indices are stable: inserts only append.
//
// Construction is single-writer. Once loading is done a Graph is treated as
// read-only and const member functions may be called concurrently.
class Graph {
 public:
  Graph();

  // Returns true when the triple was not present. Re-inserting with the same
  // section is a no-op; a different section throws SectionConflict.
  bool insert(const Triple& triple, Section section);

  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  std::size_t count(Section section) const;

  bool contains(const Triple& triple) const;
  std::optional<Section> section_of(const Triple& triple) const;

  // Sorted by (subject, predicate, object).
  std::vector<Triple> triples() const;
  std::vector<Triple> triples(Section section) const;
  std::vector<std::pair<Triple, Section>> tagged_triples() const;

  const PrefixMap& prefixes() const { return prefixes_; }
  // Rebinding an existing label replaces it. Throws InvalidTerm on a bad
  // label or IRI.
  void bind_prefix(const std::string& label, const std::string& iri);

  // Every assignment of the pattern's variables that turns it into a stored
  // triple, sorted. A ground pattern yields one empty binding iff present.
  std::vector<Binding> match(const TriplePattern& pattern) const;

  // Equality of the (triple, section) sets; prefixes are not compared.
  friend bool operator==(const Graph& a, const Graph& b);

  // --- id level access for the evaluators -------------------------------

  TermId intern(const Term& term);
  std::optional<TermId> lookup(const Term& term) const;
  const Term& term(TermId id) const { return terms_[id]; }
  std::size_t term_count() const { return terms_.size(); }

  const IdTriple& id_triple(std::size_t index) const { return triples_[index]; }
  Section section_at(std::size_t index) const { return sections_[index]; }
  Triple triple_at(std::size_t index) const;

  std::optional<std::size_t> find(const IdTriple& triple) const;
  // Returns (index, inserted).
  std::pair<std::size_t, bool> insert_ids(const IdTriple& triple,
                                          Section section);

  // Calls `visit(index)` for every stored triple agreeing with the given
  // slots; std::nullopt is a wildcard. Stops early when `visit` returns false.
  template <typename Visit>
  void scan(std::optional<TermId> s, std::optional<TermId> p,
            std::optional<TermId> o, Visit&& visit) const;

 private:
  using Postings = std::vector<std::uint32_t>;
  static std::uint64_t pair_key(TermId a, TermId b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }
  template <typename Visit>
  static void visit_postings(const std::unordered_map<std::uint64_t, Postings>&,
                             std::uint64_t key, Visit&);
  template <typename Visit>
  static void visit_postings(const std::unordered_map<TermId, Postings>&,
                             TermId key, Visit&);

  std::vector<Term> terms_;
  std::unordered_map<Term, TermId, TermHash> term_ids_;

  std::vector<IdTriple> triples_;
  std::vector<Section> sections_;
  std::unordered_map<IdTriple, std::uint32_t, IdTripleHash> lookup_;
  std::unordered_map<TermId, Postings> by_s_;
  std::unordered_map<TermId, Postings> by_p_;
  std::unordered_map<TermId, Postings> by_o_;
  std::unordered_map<std::uint64_t, Postings> by_sp_;
  std::unordered_map<std::uint64_t, Postings> by_po_;

  PrefixMap prefixes_;
};

Graph insert(Graph graph, const Triple& triple, Section section);
std::vector<Binding> match(const Graph& graph, const TriplePattern& pattern);

// Union of triples and prefixes. Throws PrefixConflict when a label is bound
// to different IRIs and SectionConflict when a triple carries two sections.
Graph merge(const Graph& first, const Graph& second);

// ---------------------------------------------------------------------------

template <typename Visit>
void Graph::visit_postings(const std::unordered_map<std::uint64_t, Postings>& m,
                           std::uint64_t key, Visit& visit) {
  const auto it = m.find(key);
  if (it == m.end()) return;
  for (const auto index : it->second) {
    if (!visit(static_cast<std::size_t>(index))) return;
  }
}

template <typename Visit>
void Graph::visit_postings(const std::unordered_map<TermId, Postings>& m,
                           TermId key, Visit& visit) {
  const auto it = m.find(key);
  if (it == m.end()) return;
  for (const auto index : it->second) {
    if (!visit(static_cast<std::size_t>(index))) return;
  }
}

template <typename Visit>
void Graph::scan(std::optional<TermId> s, std::optional<TermId> p,
                 std::optional<TermId> o, Visit&& visit) const {
  if (s && p && o) {
    if (const auto index = find(IdTriple{*s, *p, *o})) visit(*index);
    return;
  }
  if (s && p) {
    visit_postings(by_sp_, pair_key(*s, *p), visit);
    return;
  }
  if (p && o) {
    visit_postings(by_po_, pair_key(*p, *o), visit);
    return;
  }
  if (s && o) {
    auto filtered = [&](std::size_t index) {
      return triples_[index].o != *o || visit(index);
    };
    visit_postings(by_s_, *s, filtered);
    return;
  }
  if (s) return visit_postings(by_s_, *s, visit);
  if (p) return visit_postings(by_p_, *p, visit);
  if (o) return visit_postings(by_o_, *o, visit);
  for (std::size_t i = 0; i < triples_.size(); ++i) {
    if (!visit(i)) return;
  }
}

}  // namespace cpsaudit
