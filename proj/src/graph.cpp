#include "cpsaudit/graph.hpp"

#include <algorithm>
#include <array>

#include "cpsaudit/error.hpp"

namespace cpsaudit {

Graph::Graph() : prefixes_(standard_prefixes()) {}

TermId Graph::intern(const Term& term) {
  const auto [it, inserted] =
      term_ids_.try_emplace(term, static_cast<TermId>(terms_.size()));
  if (inserted) terms_.push_back(term);
  return it->second;
}

std::optional<TermId> Graph::lookup(const Term& term) const {
  const auto it = term_ids_.find(term);
  if (it == term_ids_.end()) return std::nullopt;
  return it->second;
}

Triple Graph::triple_at(std::size_t index) const {
  const auto& t = triples_[index];
  return Triple{terms_[t.s], terms_[t.p], terms_[t.o]};
}

std::optional<std::size_t> Graph::find(const IdTriple& triple) const {
  const auto it = lookup_.find(triple);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::pair<std::size_t, bool> Graph::insert_ids(const IdTriple& triple,
                                               Section section) {
  if (const auto existing = find(triple)) {
    if (sections_[*existing] != section) {
      throw SectionConflict("triple already present in section " +
                            std::string(to_string(sections_[*existing])) +
                            ", cannot re-tag as " +
                            std::string(to_string(section)));
    }
    return {*existing, false};
  }
  const auto index = static_cast<std::uint32_t>(triples_.size());
  triples_.push_back(triple);
  sections_.push_back(section);
  lookup_.emplace(triple, index);
  by_s_[triple.s].push_back(index);
  by_p_[triple.p].push_back(index);
  by_o_[triple.o].push_back(index);
  by_sp_[pair_key(triple.s, triple.p)].push_back(index);
  by_po_[pair_key(triple.p, triple.o)].push_back(index);
  return {index, true};
}

bool Graph::insert(const Triple& triple, Section section) {
  if (!triple.subject.is_iri() || !triple.predicate.is_iri()) {
    throw InvalidTerm("triple subject and predicate must be IRIs");
  }
  const IdTriple ids{intern(triple.subject), intern(triple.predicate),
                     intern(triple.object)};
  return insert_ids(ids, section).second;
}

std::size_t Graph::count(Section section) const {
  return static_cast<std::size_t>(
      std::count(sections_.begin(), sections_.end(), section));
}

bool Graph::contains(const Triple& triple) const {
  return section_of(triple).has_value();
}

std::optional<Section> Graph::section_of(const Triple& triple) const {
  const auto s = lookup(triple.subject);
  const auto p = lookup(triple.predicate);
  const auto o = lookup(triple.object);
  if (!s || !p || !o) return std::nullopt;
  const auto index = find(IdTriple{*s, *p, *o});
  if (!index) return std::nullopt;
  return sections_[*index];
}

std::vector<Triple> Graph::triples() const {
  std::vector<Triple> out;
  out.reserve(triples_.size());
  for (std::size_t i = 0; i < triples_.size(); ++i) out.push_back(triple_at(i));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Triple> Graph::triples(Section section) const {
  std::vector<Triple> out;
  for (std::size_t i = 0; i < triples_.size(); ++i) {
    if (sections_[i] == section) out.push_back(triple_at(i));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Triple, Section>> Graph::tagged_triples() const {
  std::vector<std::pair<Triple, Section>> out;
  out.reserve(triples_.size());
  for (std::size_t i = 0; i < triples_.size(); ++i) {
    out.emplace_back(triple_at(i), sections_[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void Graph::bind_prefix(const std::string& label, const std::string& iri) {
  if (!is_valid_prefix_label(label)) {
    throw InvalidTerm("invalid prefix label '" + label + "'");
  }
  if (!is_valid_iri(iri)) {
    throw InvalidTerm("invalid namespace IRI '" + iri + "'");
  }
  prefixes_[label] = iri;
}

std::vector<Binding> Graph::match(const TriplePattern& pattern) const {
  std::array<const PatternSlot*, 3> slots{&pattern.subject, &pattern.predicate,
                                          &pattern.object};
  std::array<std::optional<TermId>, 3> ground;
  for (std::size_t k = 0; k < 3; ++k) {
    if (const auto* term = std::get_if<Term>(slots[k])) {
      ground[k] = lookup(*term);
      if (!ground[k]) return {};
    }
  }

  std::vector<Binding> out;
  scan(ground[0], ground[1], ground[2], [&](std::size_t index) {
    const auto& t = triples_[index];
    const std::array<TermId, 3> ids{t.s, t.p, t.o};
    Binding binding;
    for (std::size_t k = 0; k < 3; ++k) {
      const auto* var = std::get_if<Variable>(slots[k]);
      if (!var) continue;
      const auto [it, inserted] = binding.try_emplace(var->name, terms_[ids[k]]);
      if (!inserted && it->second != terms_[ids[k]]) return true;
    }
    out.push_back(std::move(binding));
    return true;
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b.section_of(a.triple_at(i)) != a.section_at(i)) return false;
  }
  return true;
}

Graph insert(Graph graph, const Triple& triple, Section section) {
  graph.insert(triple, section);
  return graph;
}

std::vector<Binding> match(const Graph& graph, const TriplePattern& pattern) {
  return graph.match(pattern);
}

Graph merge(const Graph& first, const Graph& second) {
  Graph out = first;
  for (const auto& [label, iri] : second.prefixes()) {
    const auto it = out.prefixes().find(label);
    if (it != out.prefixes().end() && it->second != iri) {
      throw PrefixConflict("prefix '" + label + ":' bound to <" + it->second +
                           "> and <" + iri + ">");
    }
    out.bind_prefix(label, iri);
  }
  for (std::size_t i = 0; i < second.size(); ++i) {
    out.insert(second.triple_at(i), second.section_at(i));
  }
  return out;
}

}  // namespace cpsaudit
