#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "disco/kb/fact_store.hpp"
#include "disco/kb/program.hpp"

namespace disco::kb {

// Least Herbrand model of `rules` over `store` (semi-naive fixpoint). The
// result contains every fact of `store` plus everything derivable.
FactStore ground_model(const std::vector<Rule>& rules, const FactStore& store);

// Only the derivable facts that are not already in `store`.
FactStore derive(const std::vector<Rule>& rules, const FactStore& store);

// Goal membership in the least model. Unknown predicates are false.
bool entails(const std::vector<Rule>& rules, const FactStore& store, const Atom& goal);

// True iff some substitution maps every body atom to a stored fact while
// keeping each disequality pair distinct.
bool sat_body(const std::vector<Atom>& body, const std::vector<Diseq>& diseqs, const FactStore& store);

// A satisfying substitution indexed by variable (unused indices invalid).
std::optional<std::vector<Symbol>> find_body_witness(const std::vector<Atom>& body,
                                                     const std::vector<Diseq>& diseqs,
                                                     const FactStore& store);

// The extension visible to one body atom: up to two disjoint relations.
struct AtomSource {
  const Relation* first = nullptr;
  const Relation* second = nullptr;

  std::size_t size() const { return (first ? first->size() : 0) + (second ? second->size() : 0); }
};

// Calls `on_binding` for every satisfying substitution (duplicates possible
// only when sources overlap). Returning false from the callback stops the
// search; the function then returns false.
bool for_each_binding(const std::vector<Atom>& body, const std::vector<Diseq>& diseqs,
                      std::span<const AtomSource> sources,
                      const std::function<bool(std::span<const Symbol>)>& on_binding);

}  // namespace disco::kb
