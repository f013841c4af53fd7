#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "disco/constraints/constraint.hpp"
#include "disco/kb/program.hpp"
#include "disco/learner/bias.hpp"

namespace disco::learner {

// Every canonical rule of exactly `size` literals (head included) allowed by
// the bias, in canonical order. The head is `h(A,B,..)` over distinct
// variables; body literals take variables only. Rules violating any
// constraint in `discovered` are dropped and counted in `pruned`. Zero
// max_body or max_vars yields nothing.
std::vector<kb::Rule> enumerate_rules(const Bias& bias, const constraints::ConstraintSet& discovered, std::size_t size,
                                      std::size_t* pruned = nullptr);

// True when some substitution maps `general`'s head onto `specific`'s head
// and its body into `specific`'s body.
bool theta_subsumes(const kb::Rule& general, const kb::Rule& specific);

struct LearnedConstraint {
  enum class Kind {
    kGeneralisation,  // the anchor covers a negative: prune supersets
    kSpecialisation,  // the anchor misses a positive: prune specialisations
  };
  Kind kind;
  std::vector<kb::Rule> anchor;
};

const char* kind_name(LearnedConstraint::Kind kind);

// Constraints learned from tested hypotheses, with the pruning test.
class SearchState {
 public:
  using RuleId = std::uint32_t;

  explicit SearchState(bool theta_subsumption = false) : theta_(theta_subsumption) {}

  RuleId intern(const kb::Rule& rule);  // canonicalises first
  const kb::Rule& rule(RuleId id) const { return rules_[id]; }

  std::vector<LearnedConstraint> record(const Hypothesis& h, const CoverageReport& report);
  void record(std::span<const RuleId> ids, const CoverageReport& report);

  // The learned constraint that prunes `h`, if any. A hypothesis is pruned as
  // a generalisation when it contains a hypothesis known to be inconsistent,
  // and as a specialisation when each of its rules specialises a rule of one
  // hypothesis known to be incomplete.
  std::optional<LearnedConstraint::Kind> skip_reason(const Hypothesis& h);
  std::optional<LearnedConstraint::Kind> skip_reason(std::span<const RuleId> ids);

  std::vector<LearnedConstraint> learned() const;
  std::size_t learned_count() const { return learned_.size(); }

 private:
  struct IdsHash {
    std::size_t operator()(const std::vector<RuleId>& ids) const noexcept;
  };

  std::vector<RuleId> sorted_ids(const Hypothesis& h);
  const std::vector<RuleId>& generalisations(RuleId id);
  bool generalises(RuleId general, RuleId specific);

  bool theta_;
  std::vector<kb::Rule> rules_;
  std::unordered_map<kb::Rule, RuleId, kb::RuleHash> ids_;
  std::vector<std::optional<std::vector<RuleId>>> gens_;
  std::unordered_set<std::vector<RuleId>, IdsHash> inconsistent_;
  std::vector<std::vector<RuleId>> incomplete_;
  std::vector<std::vector<std::uint32_t>> incomplete_by_rule_;
  std::unordered_set<std::vector<RuleId>, IdsHash> incomplete_set_;
  std::vector<std::pair<LearnedConstraint::Kind, std::vector<RuleId>>> learned_;
};

// Records the anchors implied by a test outcome and returns them.
inline std::vector<LearnedConstraint> constrain_update(SearchState& state, const Hypothesis& h,
                                                       const CoverageReport& report) {
  return state.record(h, report);
}

struct LearnOptions {
  bool theta_subsumption = false;
  // Called for every candidate pruned by a learned constraint.
  std::function<void(const Hypothesis&, LearnedConstraint::Kind)> on_skip;
  // Called for every tested candidate.
  std::function<void(const Hypothesis&, const CoverageReport&)> on_test;
};

struct LearnStats {
  std::size_t rules_enumerated = 0;
  std::size_t rules_pruned_by_discovery = 0;
  std::size_t programs_tested = 0;
  std::size_t skipped_generalisation = 0;
  std::size_t skipped_specialisation = 0;
  std::size_t skipped_no_base_case = 0;
  double generate_seconds = 0;
  double test_seconds = 0;
  double constrain_seconds = 0;
};

struct LearnResult {
  std::optional<Hypothesis> hypothesis;
  LearnStats stats;
};

// Searches hypotheses by increasing cost, then by rule count, then by rule
// order, and returns the first complete and consistent one. A hypothesis with
// a recursive rule must also hold a non-recursive rule.
LearnResult learn(const Task& task, const constraints::ConstraintSet& discovered, const LearnOptions& options = {});

}  // namespace disco::learner
