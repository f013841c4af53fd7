#include "disco/kb/fact_store.hpp"

#include <algorithm>
#include <string>

#include "disco/kb/error.hpp"

namespace disco::kb {
namespace {

inline std::size_t mix_hash(std::size_t h, std::uint32_t v) {
  h ^= v;
  h *= 0x100000001b3ull;
  h ^= h >> 29;
  return h;
}

inline std::size_t hash_key(std::uint32_t key) {
  std::uint64_t x = key;
  x = (x ^ (x >> 16)) * 0x45d9f3bull;
  x = (x ^ (x >> 16)) * 0x45d9f3bull;
  return static_cast<std::size_t>(x ^ (x >> 16));
}

}  // namespace

Relation::Relation(Symbol name, std::size_t arity) : name_(name), arity_(arity), columns_(arity) {
  table_.assign(16, kNoRow);
  for (auto& c : columns_) grow_index(c);
}

std::size_t Relation::hash_row(std::span<const Symbol> tuple) const {
  std::size_t h = 0xcbf29ce484222325ull;
  for (Symbol s : tuple) h = mix_hash(h, s.id());
  return h * 0x9e3779b97f4a7c15ull;
}

void Relation::grow_table() {
  std::vector<RowId> bigger(table_.size() * 2, kNoRow);
  const std::size_t mask = bigger.size() - 1;
  for (RowId r = 0; r < size_; ++r) {
    std::size_t slot = hash_row(row(r)) & mask;
    while (bigger[slot] != kNoRow) slot = (slot + 1) & mask;
    bigger[slot] = r;
  }
  table_ = std::move(bigger);
}

void Relation::grow_index(ColumnIndex& index) {
  const std::size_t capacity = index.keys.empty() ? 16 : index.keys.size() * 2;
  std::vector<std::uint32_t> keys(capacity, kEmptyKey);
  std::vector<RowId> heads(capacity, kNoRow);
  std::vector<std::uint32_t> counts(capacity, 0);
  const std::size_t mask = capacity - 1;
  for (std::size_t i = 0; i < index.keys.size(); ++i) {
    if (index.keys[i] == kEmptyKey) continue;
    std::size_t slot = hash_key(index.keys[i]) & mask;
    while (keys[slot] != kEmptyKey) slot = (slot + 1) & mask;
    keys[slot] = index.keys[i];
    heads[slot] = index.heads[i];
    counts[slot] = index.counts[i];
  }
  index.keys = std::move(keys);
  index.heads = std::move(heads);
  index.counts = std::move(counts);
}

void Relation::index_row(ColumnIndex& index, Symbol value, RowId row) {
  if ((index.used + 1) * 2 > index.keys.size()) grow_index(index);
  const std::size_t mask = index.keys.size() - 1;
  std::size_t slot = hash_key(value.id()) & mask;
  while (index.keys[slot] != kEmptyKey && index.keys[slot] != value.id()) slot = (slot + 1) & mask;
  if (index.keys[slot] == kEmptyKey) {
    index.keys[slot] = value.id();
    ++index.used;
  }
  index.next.push_back(index.heads[slot]);
  index.heads[slot] = row;
  ++index.counts[slot];
}

bool Relation::insert(std::span<const Symbol> tuple) {
  if (tuple.size() != arity_) {
    throw ContractError("arity mismatch for " + std::string(name_.text()) + ": expected " +
                        std::to_string(arity_) + ", got " + std::to_string(tuple.size()));
  }
  if ((size_ + 1) * 2 > table_.size()) grow_table();
  const std::size_t mask = table_.size() - 1;
  std::size_t slot = hash_row(tuple) & mask;
  while (table_[slot] != kNoRow) {
    auto existing = row(table_[slot]);
    if (std::equal(existing.begin(), existing.end(), tuple.begin())) return false;
    slot = (slot + 1) & mask;
  }
  const auto id = static_cast<RowId>(size_);
  table_[slot] = id;
  data_.insert(data_.end(), tuple.begin(), tuple.end());
  ++size_;
  for (std::size_t c = 0; c < arity_; ++c) index_row(columns_[c], tuple[c], id);
  return true;
}

bool Relation::contains(std::span<const Symbol> tuple) const {
  if (tuple.size() != arity_) return false;
  const std::size_t mask = table_.size() - 1;
  std::size_t slot = hash_row(tuple) & mask;
  while (table_[slot] != kNoRow) {
    auto existing = row(table_[slot]);
    if (std::equal(existing.begin(), existing.end(), tuple.begin())) return true;
    slot = (slot + 1) & mask;
  }
  return false;
}

RowChain Relation::rows_with(std::size_t column, Symbol value) const {
  const ColumnIndex& index = columns_[column];
  const std::size_t mask = index.keys.size() - 1;
  std::size_t slot = hash_key(value.id()) & mask;
  while (index.keys[slot] != kEmptyKey) {
    if (index.keys[slot] == value.id()) return {&index.next, index.heads[slot], index.counts[slot]};
    slot = (slot + 1) & mask;
  }
  return {};
}

Relation& FactStore::relation(Symbol predicate, std::size_t arity) {
  if (auto it = index_.find(predicate); it != index_.end()) {
    Relation& rel = relations_[it->second];
    if (rel.arity() != arity) {
      throw ContractError("arity mismatch for " + std::string(predicate.text()) + ": declared " +
                          std::to_string(rel.arity()) + ", used with " + std::to_string(arity));
    }
    return rel;
  }
  index_.emplace(predicate, relations_.size());
  return relations_.emplace_back(predicate, arity);
}

const Relation* FactStore::find(Symbol predicate) const {
  auto it = index_.find(predicate);
  return it == index_.end() ? nullptr : &relations_[it->second];
}

bool FactStore::add(Symbol predicate, std::span<const Symbol> tuple) {
  return relation(predicate, tuple.size()).insert(tuple);
}

bool FactStore::add(const Atom& fact) {
  std::vector<Symbol> tuple;
  tuple.reserve(fact.arity());
  for (Term t : fact.args) {
    if (!t.is_constant()) throw ContractError("fact is not ground: " + render_atom(fact));
    tuple.push_back(t.symbol());
  }
  return add(fact.predicate, tuple);
}

bool FactStore::contains(Symbol predicate, std::span<const Symbol> tuple) const {
  const Relation* rel = find(predicate);
  return rel != nullptr && rel->contains(tuple);
}

bool FactStore::contains(const Atom& fact) const {
  std::vector<Symbol> tuple;
  tuple.reserve(fact.arity());
  for (Term t : fact.args) {
    if (!t.is_constant()) return false;
    tuple.push_back(t.symbol());
  }
  return contains(fact.predicate, tuple);
}

std::optional<std::size_t> FactStore::arity_of(Symbol predicate) const {
  const Relation* rel = find(predicate);
  if (rel == nullptr) return std::nullopt;
  return rel->arity();
}

std::size_t FactStore::fact_count() const {
  std::size_t n = 0;
  for (const auto& r : relations_) n += r.size();
  return n;
}

std::vector<RelationInfo> FactStore::catalog() const {
  std::vector<RelationInfo> out;
  out.reserve(relations_.size());
  for (const auto& r : relations_) out.push_back({r.name(), r.arity(), r.size()});
  std::sort(out.begin(), out.end(), [](const RelationInfo& a, const RelationInfo& b) {
    return SymbolTextLess{}(a.name, b.name);
  });
  return out;
}

std::size_t FactStore::merge(const FactStore& other) {
  std::size_t added = 0;
  for (const auto& rel : other.relations_) {
    Relation& mine = relation(rel.name(), rel.arity());
    for (RowId r = 0; r < rel.size(); ++r) added += mine.insert(rel.row(r)) ? 1 : 0;
  }
  return added;
}

std::vector<Atom> FactStore::facts() const {
  std::vector<Atom> out;
  for (const auto& info : catalog()) {
    const Relation& rel = *find(info.name);
    for (RowId r = 0; r < rel.size(); ++r) {
      Atom a{rel.name(), {}};
      for (Symbol s : rel.row(r)) a.args.push_back(Term::constant(s));
      out.push_back(std::move(a));
    }
  }
  return out;
}

}  // namespace disco::kb
