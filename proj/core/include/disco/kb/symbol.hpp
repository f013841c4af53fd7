#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string_view>

namespace disco::kb {

// Interned identifier. Ids are process-wide: the same text always yields the
// same id, so symbols from different stores and programs compare directly.
class Symbol {
 public:
  constexpr Symbol() = default;
  constexpr explicit Symbol(std::uint32_t id) : id_(id) {}

  static Symbol intern(std::string_view text);
  // Returns an invalid symbol when `text` was never interned.
  static Symbol lookup(std::string_view text);

  std::string_view text() const;
  constexpr std::uint32_t id() const { return id_; }
  constexpr bool valid() const { return id_ != kInvalid; }

  friend constexpr bool operator==(Symbol, Symbol) = default;
  friend constexpr auto operator<=>(Symbol, Symbol) = default;

  static constexpr std::uint32_t kInvalid = 0xffffffffu;

 private:
  std::uint32_t id_ = kInvalid;
};

// Orders symbols by their text, which is stable across runs.
struct SymbolTextLess {
  bool operator()(Symbol a, Symbol b) const { return a != b && a.text() < b.text(); }
};

std::size_t interned_symbol_count();

}  // namespace disco::kb

template <>
struct std::hash<disco::kb::Symbol> {
  std::size_t operator()(disco::kb::Symbol s) const noexcept { return std::hash<std::uint32_t>{}(s.id()); }
};
