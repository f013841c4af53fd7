#include "disco/miner/property.hpp"

#include <algorithm>
#include <numeric>

#include "disco/kb/error.hpp"

namespace disco::miner {
namespace {

char column_letter(std::size_t c) { return static_cast<char>('a' + c); }

std::string letters(const std::vector<std::size_t>& cols) {
  std::string s;
  for (auto c : cols) s += column_letter(c);
  return s;
}

}  // namespace

std::string_view family_name(PropertyFamily family) {
  switch (family) {
    case PropertyFamily::kIrreflexive: return "irreflexive";
    case PropertyFamily::kAntitransitive: return "antitransitive";
    case PropertyFamily::kAntitriangular: return "antitriangular";
    case PropertyFamily::kAsymmetric: return "asymmetric";
    case PropertyFamily::kUnique: return "unique";
    case PropertyFamily::kExclusive: return "exclusive";
    case PropertyFamily::kSingleton: return "singleton";
  }
  return "unknown";
}

PropertyKind PropertyKind::irreflexive(std::size_t arity) {
  if (arity < 2) throw ContractError("irreflexive needs arity >= 2");
  return {PropertyFamily::kIrreflexive, arity};
}

PropertyKind PropertyKind::antitransitive() { return {PropertyFamily::kAntitransitive, 2}; }

PropertyKind PropertyKind::antitriangular() { return {PropertyFamily::kAntitriangular, 2}; }

PropertyKind PropertyKind::asymmetric(std::vector<std::uint8_t> permutation) {
  const std::size_t n = permutation.size();
  if (n < 2 || n > 3) throw ContractError("asymmetric permutations are defined for arity 2 and 3");
  std::vector<std::uint8_t> sorted = permutation;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < n; ++i) {
    if (sorted[i] != i) throw ContractError("not a permutation");
  }
  bool identity = true;
  for (std::size_t i = 0; i < n; ++i) identity = identity && permutation[i] == i;
  if (identity) throw ContractError("identity permutation");
  PropertyKind k(PropertyFamily::kAsymmetric, n);
  k.permutation_ = std::move(permutation);
  return k;
}

PropertyKind PropertyKind::unique(std::size_t arity, std::uint8_t determinant_mask) {
  if (arity < 2 || arity > 3) throw ContractError("unique dependencies are defined for arity 2 and 3");
  const std::uint8_t full = static_cast<std::uint8_t>((1u << arity) - 1);
  if (determinant_mask == 0 || (determinant_mask & full) == full || (determinant_mask & ~full) != 0) {
    throw ContractError("determinant and dependent columns must partition the relation");
  }
  PropertyKind k(PropertyFamily::kUnique, arity);
  k.determinant_mask_ = determinant_mask;
  return k;
}

PropertyKind PropertyKind::exclusive(std::size_t arity) {
  if (arity < 1) throw ContractError("exclusive needs arity >= 1");
  return {PropertyFamily::kExclusive, arity};
}

PropertyKind PropertyKind::singleton(std::size_t arity) {
  if (arity < 1) throw ContractError("singleton needs arity >= 1");
  return {PropertyFamily::kSingleton, arity};
}

std::vector<PropertyKind> PropertyKind::for_arity(std::size_t arity, std::size_t structured_limit) {
  std::vector<PropertyKind> kinds;
  if (arity == 0) return kinds;
  if (arity <= std::min<std::size_t>(structured_limit, 3)) {
    if (arity >= 2) kinds.push_back(irreflexive(arity));
    if (arity == 2) {
      kinds.push_back(antitransitive());
      kinds.push_back(antitriangular());
    }
    if (arity == 2) {
      kinds.push_back(asymmetric({1, 0}));
      kinds.push_back(unique(2, 0b01));
      kinds.push_back(unique(2, 0b10));
    } else if (arity == 3) {
      // acb, bac, bca, cab, cba
      for (std::vector<std::uint8_t> p : {std::vector<std::uint8_t>{0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}) {
        kinds.push_back(asymmetric(std::move(p)));
      }
      // a_bc, ab_c, ac_b, b_ac, bc_a, c_ab
      for (std::uint8_t mask : {0b001, 0b011, 0b101, 0b010, 0b110, 0b100}) kinds.push_back(unique(3, mask));
    }
  }
  kinds.push_back(singleton(arity));
  return kinds;
}

std::vector<std::size_t> PropertyKind::determinant_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < arity_; ++c) {
    if (determinant_mask_ & (1u << c)) out.push_back(c);
  }
  return out;
}

std::vector<std::size_t> PropertyKind::dependent_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < arity_; ++c) {
    if (!(determinant_mask_ & (1u << c))) out.push_back(c);
  }
  return out;
}

std::string PropertyKind::name() const {
  switch (family_) {
    case PropertyFamily::kIrreflexive:
      return arity_ == 2 ? "irreflexive" : "irreflexive_" + std::string(arity_, 'a');
    case PropertyFamily::kAntitransitive: return "antitransitive";
    case PropertyFamily::kAntitriangular: return "antitriangular";
    case PropertyFamily::kAsymmetric: {
      std::vector<std::size_t> id(arity_);
      std::iota(id.begin(), id.end(), 0);
      std::vector<std::size_t> perm(permutation_.begin(), permutation_.end());
      return "asymmetric_" + letters(id) + "_" + letters(perm);
    }
    case PropertyFamily::kUnique:
      return "unique_" + letters(determinant_columns()) + "_" + letters(dependent_columns());
    case PropertyFamily::kExclusive: return "unsat_pair";
    case PropertyFamily::kSingleton: return "singleton";
  }
  return "unknown";
}

std::string PropertyKind::label() const {
  if (family_ == PropertyFamily::kUnique && arity_ == 2) return determinant_mask_ == 0b01 ? "functional" : "injective";
  if (family_ == PropertyFamily::kExclusive) return "exclusive";
  return name();
}

std::optional<PropertyKind> PropertyKind::parse(std::string_view name, std::size_t arity) {
  if (arity == 0) return std::nullopt;
  if (name == "exclusive" || name == "unsat_pair") return exclusive(arity);
  if (arity >= 2 && name == irreflexive(arity).name()) return irreflexive(arity);
  for (const auto& k : for_arity(arity)) {
    if (k.name() == name || k.label() == name) return k;
  }
  return std::nullopt;
}

std::strong_ordering operator<=>(const PropertyKind& a, const PropertyKind& b) {
  if (auto c = a.family_ <=> b.family_; c != 0) return c;
  if (auto c = a.arity_ <=> b.arity_; c != 0) return c;
  if (auto c = a.permutation_ <=> b.permutation_; c != 0) return c;
  // a before b, ab before ac: order by the column list, not the raw mask.
  return a.determinant_columns() <=> b.determinant_columns();
}

std::string PropertyAssertion::render() const {
  std::string out = kind.family() == PropertyFamily::kExclusive ? "exclusive" : kind.name();
  out += '(';
  for (std::size_t i = 0; i < relations.size(); ++i) {
    if (i > 0) out += ',';
    out += relations[i].name.text();
  }
  out += ')';
  return out;
}

bool assertion_less(const PropertyAssertion& a, const PropertyAssertion& b) {
  const std::size_t n = std::min(a.relations.size(), b.relations.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.relations[i].name != b.relations[i].name) {
      return a.relations[i].name.text() < b.relations[i].name.text();
    }
  }
  if (a.relations.size() != b.relations.size()) return a.relations.size() < b.relations.size();
  return a.kind < b.kind;
}

}  // namespace disco::miner
