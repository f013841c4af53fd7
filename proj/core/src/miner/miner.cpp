#include "disco/miner/miner.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <string>
#include <thread>
#include <unordered_map>

#include "disco/kb/error.hpp"

namespace disco::miner {
namespace {

using kb::Relation;
using kb::RowId;
using kb::Symbol;

kb::Atom fact_of(const Relation& rel, std::span<const Symbol> tuple) {
  kb::Atom a{rel.name(), {}};
  for (Symbol s : tuple) a.args.push_back(kb::Term::constant(s));
  return a;
}

kb::Atom fact_of(const Relation& rel, RowId r) { return fact_of(rel, rel.row(r)); }

std::uint64_t pack(const Relation& rel, RowId r, const std::vector<std::size_t>& cols) {
  std::uint64_t key = 0;
  for (auto c : cols) key = (key << 32) | rel.at(r, c).id();
  return key;
}

std::optional<Counterexample> irreflexive_witness(const Relation& rel) {
  for (RowId r = 0; r < rel.size(); ++r) {
    auto row = rel.row(r);
    if (std::all_of(row.begin(), row.end(), [&](Symbol s) { return s == row[0]; })) {
      return Counterexample{{fact_of(rel, r)}};
    }
  }
  return std::nullopt;
}

// p(A,B), p(B,C) joined through the first-column index; `closing` picks the
// probed third tuple: (A,C) for antitransitive, (C,A) for antitriangular.
std::optional<Counterexample> path_witness(const Relation& rel, bool closing_back) {
  std::array<Symbol, 2> probe;
  for (RowId r1 = 0; r1 < rel.size(); ++r1) {
    const Symbol a = rel.at(r1, 0);
    const Symbol b = rel.at(r1, 1);
    for (RowId r2 : rel.rows_with(0, b)) {
      const Symbol c = rel.at(r2, 1);
      probe = closing_back ? std::array<Symbol, 2>{c, a} : std::array<Symbol, 2>{a, c};
      if (rel.contains(probe)) return Counterexample{{fact_of(rel, r1), fact_of(rel, r2), fact_of(rel, probe)}};
    }
  }
  return std::nullopt;
}

std::optional<Counterexample> asymmetric_witness(const Relation& rel, const std::vector<std::uint8_t>& perm) {
  std::vector<Symbol> image(rel.arity());
  for (RowId r = 0; r < rel.size(); ++r) {
    auto row = rel.row(r);
    for (std::size_t i = 0; i < perm.size(); ++i) image[i] = row[perm[i]];
    if (rel.contains(image)) return Counterexample{{fact_of(rel, r), fact_of(rel, image)}};
  }
  return std::nullopt;
}

std::optional<Counterexample> unique_witness(const Relation& rel, const PropertyKind& kind) {
  const auto det = kind.determinant_columns();
  const auto dep = kind.dependent_columns();
  struct Seen {
    std::uint64_t dependent;
    RowId row;
  };
  std::unordered_map<std::uint64_t, Seen> groups;
  groups.reserve(rel.size());
  for (RowId r = 0; r < rel.size(); ++r) {
    const std::uint64_t d = pack(rel, r, dep);
    auto [it, inserted] = groups.emplace(pack(rel, r, det), Seen{d, r});
    if (!inserted && it->second.dependent != d) {
      return Counterexample{{fact_of(rel, it->second.row), fact_of(rel, r)}};
    }
  }
  return std::nullopt;
}

std::optional<Counterexample> exclusive_witness(const Relation& p, const Relation& q) {
  const Relation& small = p.size() <= q.size() ? p : q;
  const Relation& large = p.size() <= q.size() ? q : p;
  for (RowId r = 0; r < small.size(); ++r) {
    if (large.contains(small.row(r))) {
      return Counterexample{{fact_of(p, small.row(r)), fact_of(q, small.row(r))}};
    }
  }
  return std::nullopt;
}

std::optional<Counterexample> singleton_witness(const Relation& rel) {
  if (rel.size() <= 1) return std::nullopt;
  return Counterexample{{fact_of(rel, RowId{0}), fact_of(rel, RowId{1})}};
}

const Relation* resolve(const kb::FactStore& store, const PropertyKind& kind, Symbol name) {
  const Relation* rel = store.find(name);
  if (rel != nullptr && rel->arity() != kind.arity()) {
    throw ContractError("property " + kind.name() + " expects arity " + std::to_string(kind.arity()) + " but " +
                        std::string(name.text()) + " has arity " + std::to_string(rel->arity()));
  }
  return rel;
}

struct Job {
  PropertyKind kind;
  std::vector<Symbol> relations;
};

}  // namespace

MinerConfig MinerConfig::all_relations(const kb::FactStore& store, std::span<const kb::Symbol> exclude) {
  MinerConfig config;
  for (const auto& info : store.catalog()) {
    if (std::find(exclude.begin(), exclude.end(), info.name) == exclude.end()) config.candidates.push_back(info.name);
  }
  return config;
}

std::optional<Counterexample> find_counterexample(const kb::FactStore& store, const PropertyKind& kind,
                                                  std::span<const kb::Symbol> relations) {
  if (relations.size() != kind.relation_count()) {
    throw ContractError("property " + kind.name() + " takes " + std::to_string(kind.relation_count()) + " relation(s)");
  }
  const Relation* rel = resolve(store, kind, relations[0]);
  if (kind.family() == PropertyFamily::kExclusive) {
    const Relation* other = resolve(store, kind, relations[1]);
    if (rel == nullptr || other == nullptr) return std::nullopt;
    return exclusive_witness(*rel, *other);
  }
  if (rel == nullptr) return std::nullopt;
  switch (kind.family()) {
    case PropertyFamily::kIrreflexive: return irreflexive_witness(*rel);
    case PropertyFamily::kAntitransitive: return path_witness(*rel, false);
    case PropertyFamily::kAntitriangular: return path_witness(*rel, true);
    case PropertyFamily::kAsymmetric: return asymmetric_witness(*rel, kind.permutation());
    case PropertyFamily::kUnique: return unique_witness(*rel, kind);
    case PropertyFamily::kSingleton: return singleton_witness(*rel);
    case PropertyFamily::kExclusive: break;
  }
  return std::nullopt;
}

bool check_property(const kb::FactStore& store, const PropertyKind& kind, std::span<const kb::Symbol> relations) {
  if (find_counterexample(store, kind, relations)) return false;
  if (kind.family() == PropertyFamily::kSingleton) {
    const Relation* rel = store.find(relations[0]);
    return rel != nullptr && rel->size() == 1;
  }
  return true;
}

std::vector<PropertyAssertion> mine_properties(const kb::FactStore& store, const MinerConfig& config) {
  std::vector<const Relation*> guarded;
  for (Symbol name : config.candidates) {
    const Relation* rel = store.find(name);
    if (rel == nullptr || rel->empty() || rel->arity() == 0) continue;
    if (config.disabled_arities.contains(rel->arity())) continue;
    if (std::find(guarded.begin(), guarded.end(), rel) != guarded.end()) continue;
    guarded.push_back(rel);
  }
  std::sort(guarded.begin(), guarded.end(),
            [](const Relation* a, const Relation* b) { return a->name().text() < b->name().text(); });

  std::vector<Job> jobs;
  for (const Relation* rel : guarded) {
    for (auto& kind : PropertyKind::for_arity(rel->arity(), config.max_property_arity)) {
      jobs.push_back({std::move(kind), {rel->name()}});
    }
  }
  for (std::size_t i = 0; i < guarded.size(); ++i) {
    for (std::size_t j = i + 1; j < guarded.size(); ++j) {
      if (guarded[i]->arity() != guarded[j]->arity() || guarded[i]->arity() > config.max_property_arity) continue;
      jobs.push_back({PropertyKind::exclusive(guarded[i]->arity()), {guarded[i]->name(), guarded[j]->name()}});
    }
  }

  std::vector<char> holds(jobs.size(), 0);
  unsigned workers = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, jobs.size()));
  std::atomic<std::size_t> cursor{0};
  auto work = [&] {
    for (std::size_t i = cursor++; i < jobs.size(); i = cursor++) {
      holds[i] = check_property(store, jobs[i].kind, jobs[i].relations) ? 1 : 0;
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  std::vector<PropertyAssertion> out;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!holds[i]) continue;
    PropertyAssertion a{jobs[i].kind, {}};
    for (Symbol s : jobs[i].relations) a.relations.push_back({s, jobs[i].kind.arity()});
    out.push_back(std::move(a));
  }
  std::sort(out.begin(), out.end(), assertion_less);
  return out;
}

}  // namespace disco::miner
