#pragma once

#include <optional>
#include <set>
#include <span>
#include <vector>

#include "disco/kb/fact_store.hpp"
#include "disco/miner/property.hpp"

namespace disco::miner {

struct MinerConfig {
  // Relations that may appear in hypothesis bodies. Head predicates do not
  // belong here.
  std::vector<kb::Symbol> candidates;
  // Relations wider than this only get the singleton check and no exclusive pairs.
  std::size_t max_property_arity = 3;
  // Relations of these arities are skipped entirely.
  std::set<std::size_t> disabled_arities;
  // 0 means one worker per hardware thread.
  unsigned threads = 1;

  // Every relation in the store, minus `exclude`.
  static MinerConfig all_relations(const kb::FactStore& store, std::span<const kb::Symbol> exclude = {});
};

// Facts that jointly falsify a property.
struct Counterexample {
  std::vector<kb::Atom> facts;
};

// Nullopt when no counter-example exists. Missing relations count as empty;
// an empty relation falsifies only kSingleton, and yields no witness facts.
std::optional<Counterexample> find_counterexample(const kb::FactStore& store, const PropertyKind& kind,
                                                  std::span<const kb::Symbol> relations);

// True iff no counter-example exists. Throws ContractError when a relation's
// arity does not match the kind or the relation count is wrong.
bool check_property(const kb::FactStore& store, const PropertyKind& kind, std::span<const kb::Symbol> relations);

// Every property that holds for the nonempty candidate relations, ordered by
// relation names then kind.
std::vector<PropertyAssertion> mine_properties(const kb::FactStore& store, const MinerConfig& config);

}  // namespace disco::miner
