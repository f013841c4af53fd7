#include "disco/kb/symbol.hpp"

#include <array>
#include <atomic>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace disco::kb {
namespace {

struct TextHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
};

// Texts live in fixed-size chunks reachable through a preallocated pointer
// table, so text() never races with a concurrent intern().
class SymbolTable {
 public:
  static constexpr std::size_t kChunkBits = 12;
  static constexpr std::size_t kChunkSize = std::size_t{1} << kChunkBits;
  static constexpr std::size_t kMaxChunks = std::size_t{1} << 16;

  static SymbolTable& instance() {
    static SymbolTable table;
    return table;
  }

  Symbol intern(std::string_view text) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = ids_.find(text); it != ids_.end()) return Symbol(it->second);
    }
    std::unique_lock lock(mutex_);
    if (auto it = ids_.find(text); it != ids_.end()) return Symbol(it->second);
    const auto id = static_cast<std::uint32_t>(count_.load(std::memory_order_relaxed));
    const std::size_t chunk = id >> kChunkBits;
    if (chunk >= kMaxChunks) throw std::length_error("symbol table exhausted");
    if (chunks_[chunk] == nullptr) {
      chunks_[chunk] = std::make_unique<std::array<std::string, kChunkSize>>();
      chunk_ptrs_[chunk].store(chunks_[chunk].get(), std::memory_order_release);
    }
    std::string& slot = (*chunks_[chunk])[id & (kChunkSize - 1)];
    slot.assign(text);
    ids_.emplace(slot, id);
    count_.store(id + 1, std::memory_order_release);
    return Symbol(id);
  }

  Symbol lookup(std::string_view text) const {
    std::shared_lock lock(mutex_);
    if (auto it = ids_.find(text); it != ids_.end()) return Symbol(it->second);
    return Symbol();
  }

  std::string_view text(std::uint32_t id) const {
    if (id >= count_.load(std::memory_order_acquire)) return "<invalid>";
    const auto* chunk = chunk_ptrs_[id >> kChunkBits].load(std::memory_order_acquire);
    return (*chunk)[id & (kChunkSize - 1)];
  }

  std::size_t size() const { return count_.load(std::memory_order_acquire); }

 private:
  SymbolTable() : chunks_(kMaxChunks), chunk_ptrs_(kMaxChunks) {}

  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string_view, std::uint32_t, TextHash, std::equal_to<>> ids_;
  std::vector<std::unique_ptr<std::array<std::string, kChunkSize>>> chunks_;
  std::vector<std::atomic<const std::array<std::string, kChunkSize>*>> chunk_ptrs_;
  std::atomic<std::size_t> count_{0};
};

}  // namespace

Symbol Symbol::intern(std::string_view text) { return SymbolTable::instance().intern(text); }

Symbol Symbol::lookup(std::string_view text) { return SymbolTable::instance().lookup(text); }

std::string_view Symbol::text() const { return SymbolTable::instance().text(id_); }

std::size_t interned_symbol_count() { return SymbolTable::instance().size(); }

}  // namespace disco::kb
