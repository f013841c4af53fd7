#include "disco/learner/bias.hpp"

#include <algorithm>
#include <string>

#include "disco/kb/error.hpp"
#include "disco/kb/evaluator.hpp"

namespace disco::learner {

std::vector<kb::Symbol> Bias::body_symbols() const {
  std::vector<kb::Symbol> out;
  for (const auto& d : body) out.push_back(d.name);
  return out;
}

void Bias::validate() const {
  if (!head.name.valid()) throw ContractError("bias has no head predicate");
  if (max_vars == 0 || max_body == 0 || max_rules == 0) throw ContractError("bias bounds must be at least 1");
  if (head.arity > max_vars) throw ContractError("head arity exceeds max_vars");
  for (const auto& d : body) {
    if (d.name == head.name && !allow_recursion) {
      throw ContractError("head predicate " + std::string(head.name.text()) + " declared as a body predicate without recursion");
    }
  }
}

Task Task::create(std::vector<kb::Atom> pos, std::vector<kb::Atom> neg, kb::FactStore bk,
                  const std::vector<kb::Rule>& bk_rules, Bias bias) {
  bias.validate();
  auto check = [&](const std::vector<kb::Atom>& examples) {
    for (const auto& e : examples) {
      if (e.predicate != bias.head.name || e.arity() != bias.head.arity) {
        throw ContractError("example " + kb::render_atom(e) + " does not use the head predicate " +
                            std::string(bias.head.name.text()) + "/" + std::to_string(bias.head.arity));
      }
      if (!e.is_ground()) throw ContractError("example is not ground: " + kb::render_atom(e));
    }
  };
  check(pos);
  check(neg);
  for (const auto& p : pos) {
    if (std::find(neg.begin(), neg.end(), p) != neg.end()) {
      throw ContractError("example " + kb::render_atom(p) + " is both positive and negative");
    }
  }
  auto dedupe = [](std::vector<kb::Atom>& v) {
    std::sort(v.begin(), v.end(), kb::AtomLess{});
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedupe(pos);
  dedupe(neg);
  Task task;
  task.pos_ = std::move(pos);
  task.neg_ = std::move(neg);
  task.bk_ = bk_rules.empty() ? std::move(bk) : kb::ground_model(bk_rules, bk);
  task.bias_ = std::move(bias);
  return task;
}

Hypothesis Hypothesis::of(std::vector<kb::Rule> rules) {
  for (auto& r : rules) r = r.canonical();
  std::sort(rules.begin(), rules.end(), kb::RuleLess{});
  rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
  return Hypothesis{std::move(rules)};
}

std::size_t Hypothesis::cost() const {
  std::size_t n = 0;
  for (const auto& r : rules) n += r.size();
  return n;
}

bool Hypothesis::has_recursive_rule() const {
  return std::any_of(rules.begin(), rules.end(), [](const kb::Rule& r) { return r.is_recursive(); });
}

std::string Hypothesis::render() const {
  std::string out;
  for (const auto& r : rules) out += r.render() + "\n";
  return out;
}

std::size_t CoverageReport::pos_covered() const { return static_cast<std::size_t>(std::count(pos_entailed.begin(), pos_entailed.end(), true)); }

std::size_t CoverageReport::neg_covered() const { return static_cast<std::size_t>(std::count(neg_entailed.begin(), neg_entailed.end(), true)); }

CoverageReport test_hypothesis(const Hypothesis& h, const Task& task) {
  const kb::FactStore derived = kb::derive(h.rules, task.bk());
  auto entailed = [&](const kb::Atom& e) { return task.bk().contains(e) || derived.contains(e); };
  CoverageReport report;
  for (const auto& e : task.pos()) report.pos_entailed.push_back(entailed(e));
  for (const auto& e : task.neg()) report.neg_entailed.push_back(entailed(e));
  report.complete = report.pos_covered() == task.pos().size();
  report.consistent = report.neg_covered() == 0;
  return report;
}

}  // namespace disco::learner
