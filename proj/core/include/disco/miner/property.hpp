#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "disco/kb/symbol.hpp"

namespace disco::miner {

enum class PropertyFamily : std::uint8_t {
  kIrreflexive,
  kAntitransitive,
  kAntitriangular,
  kAsymmetric,
  kUnique,
  kExclusive,
  kSingleton,
};

std::string_view family_name(PropertyFamily family);

// One universally quantified statement over a relation (or a pair of
// same-arity relations for kExclusive).
//
//   kIrreflexive    no tuple with every argument equal
//   kAntitransitive no p(A,B), p(B,C), p(A,C)             (binary only)
//   kAntitriangular no p(A,B), p(B,C), p(C,A)             (binary only)
//   kAsymmetric     no t with permute(t) also present      (arity 2 or 3)
//   kUnique         determinant columns fix the others     (arity 2 or 3)
//   kExclusive      the two relations share no tuple
//   kSingleton      exactly one tuple
class PropertyKind {
 public:
  static PropertyKind irreflexive(std::size_t arity);
  static PropertyKind antitransitive();
  static PropertyKind antitriangular();
  // permutation[i] is the source column of output column i; must not be the identity.
  static PropertyKind asymmetric(std::vector<std::uint8_t> permutation);
  // determinant_mask has bit c set for each determinant column; dependent
  // columns are the rest, and both sets must be nonempty.
  static PropertyKind unique(std::size_t arity, std::uint8_t determinant_mask);
  static PropertyKind exclusive(std::size_t arity);
  static PropertyKind singleton(std::size_t arity);

  // Every single-relation kind checked for a relation of this arity, in
  // canonical order. Above `structured_limit` (and above 3) only singleton
  // applies.
  static std::vector<PropertyKind> for_arity(std::size_t arity, std::size_t structured_limit = 3);

  PropertyFamily family() const { return family_; }
  std::size_t arity() const { return arity_; }
  const std::vector<std::uint8_t>& permutation() const { return permutation_; }
  std::uint8_t determinant_mask() const { return determinant_mask_; }
  std::vector<std::size_t> determinant_columns() const;
  std::vector<std::size_t> dependent_columns() const;
  std::size_t relation_count() const { return family_ == PropertyFamily::kExclusive ? 2 : 1; }

  // Variant name in the ASP interchange vocabulary: asymmetric_ab_ba,
  // unique_a_bc, unsat_pair, irreflexive_aaa, ...
  std::string name() const;
  // Common name for binary dependencies (functional, injective); otherwise name().
  std::string label() const;

  static std::optional<PropertyKind> parse(std::string_view name, std::size_t arity);

  friend bool operator==(const PropertyKind&, const PropertyKind&) = default;
  friend std::strong_ordering operator<=>(const PropertyKind& a, const PropertyKind& b);

 private:
  PropertyKind(PropertyFamily family, std::size_t arity) : family_(family), arity_(arity) {}

  PropertyFamily family_;
  std::size_t arity_;
  std::vector<std::uint8_t> permutation_;
  std::uint8_t determinant_mask_ = 0;
};

struct RelationRef {
  kb::Symbol name;
  std::size_t arity;

  friend bool operator==(const RelationRef&, const RelationRef&) = default;
};

struct PropertyAssertion {
  PropertyKind kind;
  std::vector<RelationRef> relations;

  std::string render() const;  // e.g. asymmetric_ab_ba(tail), exclusive(even,odd)

  friend bool operator==(const PropertyAssertion&, const PropertyAssertion&) = default;
};

// Relation names first, then kind.
bool assertion_less(const PropertyAssertion& a, const PropertyAssertion& b);

}  // namespace disco::miner
