#include "disco/learner/learner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <vector>

#include "disco/kb/evaluator.hpp"

namespace disco::learner {
namespace {

using Clock = std::chrono::steady_clock;
using RuleId = SearchState::RuleId;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

struct Coverage {
  std::vector<std::uint64_t> pos;
  std::vector<std::uint64_t> neg;
};

class Search {
 public:
  Search(const Task& task, const constraints::ConstraintSet& discovered, const LearnOptions& options)
      : task_(task), options_(options), state_(options.theta_subsumption) {
    const auto start = Clock::now();
    const Bias& bias = task.bias();
    const std::size_t max_size = std::min(bias.max_body + 1, bias.literal_budget());
    size_begin_.assign(max_size + 2, 0);
    for (std::size_t s = 2; s <= max_size; ++s) {
      std::size_t pruned = 0;
      auto rules = enumerate_rules(bias, discovered, s, &pruned);
      stats_.rules_pruned_by_discovery += pruned;
      size_begin_[s] = rules_.size();
      for (auto& r : rules) {
        state_.intern(r);
        sizes_.push_back(s);
        recursive_.push_back(r.is_recursive());
        rules_.push_back(std::move(r));
      }
    }
    size_begin_[max_size + 1] = rules_.size();
    max_size_ = max_size;
    coverage_.resize(rules_.size());
    stats_.rules_enumerated = rules_.size();
    stats_.generate_seconds = seconds_since(start);
  }

  LearnResult run() {
    const Bias& bias = task_.bias();
    for (std::size_t k = 2; k <= bias.literal_budget() && !found_; ++k) {
      for (std::size_t m = 1; m <= bias.max_rules && 2 * m <= k && !found_; ++m) {
        chosen_.clear();
        choose(0, k, m);
      }
    }
    LearnResult result;
    if (found_) result.hypothesis = std::move(solution_);
    result.stats = stats_;
    return result;
  }

 private:
  std::size_t begin_of(std::size_t size) const { return size <= max_size_ ? size_begin_[size] : rules_.size(); }
  std::size_t end_of(std::size_t size) const { return size <= max_size_ ? size_begin_[size + 1] : rules_.size(); }

  // Picks `count` more rule ids above `start` whose sizes sum to `cost`.
  void choose(std::size_t start, std::size_t cost, std::size_t count) {
    if (found_) return;
    if (count == 1) {
      if (cost < 2 || cost > max_size_) return;
      for (std::size_t id = std::max(start, begin_of(cost)); id < end_of(cost) && !found_; ++id) {
        chosen_.push_back(static_cast<RuleId>(id));
        consider();
        chosen_.pop_back();
      }
      return;
    }
    for (std::size_t id = start; id < rules_.size() && sizes_[id] * count <= cost && !found_; ++id) {
      chosen_.push_back(static_cast<RuleId>(id));
      choose(id + 1, cost - sizes_[id], count - 1);
      chosen_.pop_back();
    }
  }

  Hypothesis hypothesis() const {
    std::vector<kb::Rule> rules;
    for (auto id : chosen_) rules.push_back(rules_[id]);
    return Hypothesis::of(std::move(rules));
  }

  void consider() {
    bool any_recursive = false;
    bool any_base = false;
    for (auto id : chosen_) (recursive_[id] ? any_recursive : any_base) = true;
    if (any_recursive && !any_base) {
      ++stats_.skipped_no_base_case;
      return;
    }

    auto start = Clock::now();
    const auto reason = state_.skip_reason(chosen_);
    stats_.constrain_seconds += seconds_since(start);
    if (reason) {
      ++(*reason == LearnedConstraint::Kind::kGeneralisation ? stats_.skipped_generalisation
                                                               : stats_.skipped_specialisation);
      if (options_.on_skip) options_.on_skip(hypothesis(), *reason);
      return;
    }

    start = Clock::now();
    const CoverageReport report = any_recursive ? test_hypothesis(hypothesis(), task_) : union_coverage();
    ++stats_.programs_tested;
    stats_.test_seconds += seconds_since(start);
    if (options_.on_test) options_.on_test(hypothesis(), report);

    start = Clock::now();
    state_.record(chosen_, report);
    stats_.constrain_seconds += seconds_since(start);

    if (report.complete && report.consistent) {
      found_ = true;
      solution_ = hypothesis();
    }
  }

  const Coverage& coverage(RuleId id) {
    if (auto& c = coverage_[id]) return *c;
    const kb::FactStore derived = kb::derive({rules_[id]}, task_.bk());
    auto bits = [&](const std::vector<kb::Atom>& examples) {
      std::vector<std::uint64_t> words((examples.size() + 63) / 64, 0);
      for (std::size_t i = 0; i < examples.size(); ++i) {
        if (task_.bk().contains(examples[i]) || derived.contains(examples[i])) words[i / 64] |= std::uint64_t{1} << (i % 64);
      }
      return words;
    };
    coverage_[id] = Coverage{bits(task_.pos()), bits(task_.neg())};
    return *coverage_[id];
  }

  CoverageReport union_coverage() {
    const std::size_t np = task_.pos().size();
    const std::size_t nn = task_.neg().size();
    std::vector<std::uint64_t> pos((np + 63) / 64, 0);
    std::vector<std::uint64_t> neg((nn + 63) / 64, 0);
    for (auto id : chosen_) {
      const Coverage& c = coverage(id);
      for (std::size_t w = 0; w < pos.size(); ++w) pos[w] |= c.pos[w];
      for (std::size_t w = 0; w < neg.size(); ++w) neg[w] |= c.neg[w];
    }
    CoverageReport report;
    report.pos_entailed.resize(np);
    report.neg_entailed.resize(nn);
    for (std::size_t i = 0; i < np; ++i) report.pos_entailed[i] = (pos[i / 64] >> (i % 64)) & 1;
    for (std::size_t i = 0; i < nn; ++i) report.neg_entailed[i] = (neg[i / 64] >> (i % 64)) & 1;
    report.complete = report.pos_covered() == np;
    report.consistent = report.neg_covered() == 0;
    return report;
  }

  const Task& task_;
  const LearnOptions& options_;
  SearchState state_;
  std::vector<kb::Rule> rules_;
  std::vector<std::size_t> sizes_;
  std::vector<bool> recursive_;
  std::vector<std::size_t> size_begin_;
  std::size_t max_size_ = 0;
  std::vector<std::optional<Coverage>> coverage_;
  std::vector<RuleId> chosen_;
  LearnStats stats_;
  bool found_ = false;
  Hypothesis solution_;
};

}  // namespace

LearnResult learn(const Task& task, const constraints::ConstraintSet& discovered, const LearnOptions& options) {
  Search search(task, discovered, options);
  return search.run();
}

}  // namespace disco::learner
