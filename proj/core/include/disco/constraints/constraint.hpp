#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "disco/kb/fact_store.hpp"
#include "disco/kb/program.hpp"
#include "disco/miner/property.hpp"

namespace disco::constraints {

// A body-literal pattern: predicate applied to pattern variables.
struct LiteralTemplate {
  kb::Symbol predicate;
  std::vector<std::uint32_t> slots;

  friend bool operator==(const LiteralTemplate&, const LiteralTemplate&) = default;
};

enum class ConstraintKind {
  // Prunes a rule when every template maps onto some body literal under one
  // variable mapping, with the disequalities mapped to distinct variables.
  kPatternMatch,
  // Prunes a rule when two body literals of `predicate` agree on the group
  // positions but hold provably different terms at some counted position.
  kCountBound,
};

struct HypothesisConstraint {
  ConstraintKind kind = ConstraintKind::kPatternMatch;
  std::vector<LiteralTemplate> templates{};
  std::vector<kb::Diseq> diseqs{};
  miner::PropertyAssertion provenance;

  // kCountBound only. At most `max_completions` distinct projections onto
  // `counted_positions` per binding of `group_positions`.
  kb::Symbol predicate{};
  std::vector<std::size_t> group_positions{};
  std::vector<std::size_t> counted_positions{};
  std::size_t max_completions = 1;

  std::vector<kb::Symbol> predicates() const;
  // Meta-level constraint text, e.g.
  //   :- b_lit(R,mother,(A,B)), b_lit(R,mother,(B,A)).
  std::string render() const;
};

// Singleton and unique constraints treat distinct rule variables as distinct
// values, so they also prune rules that are satisfiable only when those
// variables coincide. Such rules are never needed by an optimal hypothesis.
HypothesisConstraint compile_constraint(const miner::PropertyAssertion& assertion);

// Body literals of the rule that realise a violation, plus the disequalities
// the constraint imposes on rule variables.
struct Violation {
  std::vector<std::size_t> literals;
  std::vector<kb::Diseq> diseqs;
};

std::optional<Violation> find_violation(const kb::Rule& rule, const HypothesisConstraint& constraint);

inline bool violates(const kb::Rule& rule, const HypothesisConstraint& constraint) {
  return find_violation(rule, constraint).has_value();
}

// A conjunctive query whose unsatisfiability over the mined store is what the
// constraint relies on. Count-bound constraints expand to one form per
// counted position; the constraint is sound when every form is unsatisfiable.
struct WitnessForm {
  std::vector<kb::Atom> body;
  std::vector<kb::Diseq> diseqs;
};

std::vector<WitnessForm> witness_forms(const HypothesisConstraint& constraint);

bool verify_unsat(const HypothesisConstraint& constraint, const kb::FactStore& store);

// Compiled constraints indexed by the predicates they mention.
class ConstraintSet {
 public:
  ConstraintSet() = default;
  explicit ConstraintSet(std::vector<HypothesisConstraint> constraints);

  static ConstraintSet compile(std::span<const miner::PropertyAssertion> assertions);

  const std::vector<HypothesisConstraint>& all() const { return constraints_; }
  std::size_t size() const { return constraints_.size(); }
  bool empty() const { return constraints_.empty(); }

  // Indices of constraints mentioning `predicate`.
  std::span<const std::size_t> mentioning(kb::Symbol predicate) const;

  // Index of the first violated constraint, if any.
  std::optional<std::size_t> first_violated(const kb::Rule& rule) const;
  bool prunes(const kb::Rule& rule) const { return first_violated(rule).has_value(); }

 private:
  std::vector<HypothesisConstraint> constraints_;
  std::unordered_map<kb::Symbol, std::vector<std::size_t>> by_predicate_;
};

}  // namespace disco::constraints
