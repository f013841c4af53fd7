#pragma once

#include <string>
#include <vector>

#include "disco/kb/fact_store.hpp"
#include "disco/kb/program.hpp"

namespace disco::learner {

struct PredicateDecl {
  kb::Symbol name;
  std::size_t arity = 0;

  friend bool operator==(const PredicateDecl&, const PredicateDecl&) = default;
};

// Bounds of the hypothesis space.
struct Bias {
  PredicateDecl head;
  std::vector<PredicateDecl> body;
  std::size_t max_vars = 4;
  std::size_t max_body = 3;
  std::size_t max_rules = 2;
  // Total literal budget for a hypothesis; 0 means max_rules * (max_body + 1).
  std::size_t max_literals = 0;
  bool allow_recursion = false;

  std::size_t literal_budget() const { return max_literals != 0 ? max_literals : max_rules * (max_body + 1); }
  std::vector<kb::Symbol> body_symbols() const;
  // Throws ContractError on a zero bound, a head wider than max_vars, or a
  // head predicate among the body declarations without recursion enabled.
  void validate() const;
};

// Positive and negative examples over the head predicate, BK grounded into a
// fact store, and the bias.
class Task {
 public:
  // Grounds `bk_rules` over `bk` up front. Throws ContractError when an
  // example is not a ground head atom or when pos and neg intersect.
  static Task create(std::vector<kb::Atom> pos, std::vector<kb::Atom> neg, kb::FactStore bk,
                     const std::vector<kb::Rule>& bk_rules, Bias bias);

  const std::vector<kb::Atom>& pos() const { return pos_; }
  const std::vector<kb::Atom>& neg() const { return neg_; }
  const kb::FactStore& bk() const { return bk_; }
  const Bias& bias() const { return bias_; }

 private:
  Task() = default;

  std::vector<kb::Atom> pos_;
  std::vector<kb::Atom> neg_;
  kb::FactStore bk_;
  Bias bias_;
};

// A set of canonical rules; cost is the total literal count.
struct Hypothesis {
  std::vector<kb::Rule> rules;

  static Hypothesis of(std::vector<kb::Rule> rules);  // canonicalises and sorts
  std::size_t cost() const;
  bool has_recursive_rule() const;
  std::string render() const;  // one rule per line

  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};

struct CoverageReport {
  std::vector<bool> pos_entailed;
  std::vector<bool> neg_entailed;
  bool complete = false;
  bool consistent = false;

  std::size_t pos_covered() const;
  std::size_t neg_covered() const;
};

// Entailment of every example under BK plus `h`, from one least model.
CoverageReport test_hypothesis(const Hypothesis& h, const Task& task);

}  // namespace disco::learner
