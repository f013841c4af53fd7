#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "disco/kb/program.hpp"
#include "disco/kb/symbol.hpp"

namespace disco::kb {

using RowId = std::uint32_t;
inline constexpr RowId kNoRow = 0xffffffffu;

// Rows sharing one value in one column, newest first.
class RowChain {
 public:
  class iterator {
   public:
    using value_type = RowId;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    iterator(const std::vector<RowId>* next, RowId at) : next_(next), at_(at) {}
    RowId operator*() const { return at_; }
    iterator& operator++() {
      at_ = (*next_)[at_];
      return *this;
    }
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const iterator& o) const { return at_ == o.at_; }

   private:
    const std::vector<RowId>* next_ = nullptr;
    RowId at_ = kNoRow;
  };

  RowChain() = default;
  RowChain(const std::vector<RowId>* next, RowId first, std::uint32_t count)
      : next_(next), first_(first), count_(count) {}

  iterator begin() const { return {next_, first_}; }
  iterator end() const { return {next_, kNoRow}; }
  std::uint32_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

 private:
  const std::vector<RowId>* next_ = nullptr;
  RowId first_ = kNoRow;
  std::uint32_t count_ = 0;
};

// One duplicate-free ground relation with a hash set over whole tuples and a
// per-column value index.
class Relation {
 public:
  Relation(Symbol name, std::size_t arity);

  Symbol name() const { return name_; }
  std::size_t arity() const { return arity_; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  // Returns false when the tuple was already present.
  bool insert(std::span<const Symbol> tuple);
  bool contains(std::span<const Symbol> tuple) const;

  std::span<const Symbol> row(RowId r) const { return {data_.data() + std::size_t{r} * arity_, arity_}; }
  Symbol at(RowId r, std::size_t column) const { return data_[std::size_t{r} * arity_ + column]; }

  RowChain rows_with(std::size_t column, Symbol value) const;

 private:
  struct ColumnIndex {
    std::vector<std::uint32_t> keys;    // value id, or kEmptyKey
    std::vector<RowId> heads;           // newest row with that value
    std::vector<std::uint32_t> counts;
    std::vector<RowId> next;            // per row: previous row with same value
    std::size_t used = 0;
  };
  static constexpr std::uint32_t kEmptyKey = 0xffffffffu;

  std::size_t hash_row(std::span<const Symbol> tuple) const;
  void grow_table();
  void index_row(ColumnIndex& index, Symbol value, RowId row);
  static void grow_index(ColumnIndex& index);

  Symbol name_;
  std::size_t arity_;
  std::size_t size_ = 0;
  std::vector<Symbol> data_;
  std::vector<RowId> table_;  // open addressing over row ids, kNoRow = empty
  std::vector<ColumnIndex> columns_;
};

struct RelationInfo {
  Symbol name;
  std::size_t arity;
  std::size_t size;
};

// Ground facts grouped by predicate; each predicate has one arity.
class FactStore {
 public:
  FactStore() = default;

  // Get or create; throws ContractError on an arity conflict.
  Relation& relation(Symbol predicate, std::size_t arity);
  const Relation* find(Symbol predicate) const;

  bool add(Symbol predicate, std::span<const Symbol> tuple);
  bool add(const Atom& fact);
  bool contains(const Atom& fact) const;
  bool contains(Symbol predicate, std::span<const Symbol> tuple) const;

  std::optional<std::size_t> arity_of(Symbol predicate) const;
  std::size_t relation_count() const { return relations_.size(); }
  std::size_t fact_count() const;

  // Sorted by relation name.
  std::vector<RelationInfo> catalog() const;
  const std::vector<Relation>& relations() const { return relations_; }

  // Adds every fact of `other`; returns the number that were new.
  std::size_t merge(const FactStore& other);

  std::vector<Atom> facts() const;

 private:
  std::vector<Relation> relations_;
  std::unordered_map<Symbol, std::size_t> index_;
};

}  // namespace disco::kb
