#include <algorithm>
#include <numeric>

#include "disco/kb/error.hpp"
#include "disco/learner/learner.hpp"

namespace disco::learner {

const char* kind_name(LearnedConstraint::Kind kind) {
  return kind == LearnedConstraint::Kind::kGeneralisation ? "generalisation" : "specialisation";
}

std::size_t SearchState::IdsHash::operator()(const std::vector<RuleId>& ids) const noexcept {
  std::size_t h = ids.size();
  for (auto id : ids) h ^= id + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

SearchState::RuleId SearchState::intern(const kb::Rule& rule) {
  kb::Rule c = rule.canonical();
  auto it = ids_.find(c);
  if (it != ids_.end()) return it->second;
  const auto id = static_cast<RuleId>(rules_.size());
  ids_.emplace(c, id);
  rules_.push_back(std::move(c));
  incomplete_by_rule_.emplace_back();
  // A new rule may be a generalisation of rules already cached.
  gens_.assign(rules_.size(), std::nullopt);
  return id;
}

std::vector<SearchState::RuleId> SearchState::sorted_ids(const Hypothesis& h) {
  std::vector<RuleId> ids;
  for (const auto& r : h.rules) ids.push_back(intern(r));
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

// Known rules whose body is a subset of this rule's body, up to renaming.
const std::vector<SearchState::RuleId>& SearchState::generalisations(RuleId id) {
  if (gens_[id]) return *gens_[id];
  const kb::Rule& r = rules_[id];
  const auto& body = r.body();
  std::vector<RuleId> out;
  const std::size_t n = body.size();
  if (n >= 20) throw ContractError("rule body too long for subset generalisation");
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<kb::Atom> sub;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) sub.push_back(body[i]);
    }
    std::vector<bool> present;
    for (const auto& a : sub) {
      for (auto t : a.args) {
        if (!t.is_variable()) continue;
        if (t.var_index() >= present.size()) present.resize(t.var_index() + 1);
        present[t.var_index()] = true;
      }
    }
    auto has = [&](std::uint32_t v) { return v < present.size() && present[v]; };
    std::vector<kb::Diseq> diseqs;
    for (auto d : r.diseqs()) {
      if (has(d.first) && has(d.second)) diseqs.push_back(d);
    }
    kb::Rule g(r.head(), std::move(sub), std::move(diseqs));
    bool safe = true;
    for (auto t : g.head().args) safe = safe && (!t.is_variable() || has(t.var_index()));
    if (!safe || !kb::body_connected(g.head(), g.body())) continue;
    auto it = ids_.find(g.canonical());
    if (it != ids_.end()) out.push_back(it->second);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  gens_[id] = std::move(out);
  return *gens_[id];
}

bool SearchState::generalises(RuleId general, RuleId specific) {
  if (general == specific) return true;
  if (theta_) return theta_subsumes(rules_[general], rules_[specific]);
  const auto& g = generalisations(specific);
  return std::binary_search(g.begin(), g.end(), general);
}

std::vector<LearnedConstraint> SearchState::record(const Hypothesis& h, const CoverageReport& report) {
  const auto before = learned_.size();
  const auto ids = sorted_ids(h);
  record(ids, report);
  std::vector<LearnedConstraint> out;
  for (std::size_t i = before; i < learned_.size(); ++i) {
    LearnedConstraint c{learned_[i].first, {}};
    for (auto id : learned_[i].second) c.anchor.push_back(rules_[id]);
    out.push_back(std::move(c));
  }
  return out;
}

void SearchState::record(std::span<const RuleId> ids, const CoverageReport& report) {
  std::vector<RuleId> key(ids.begin(), ids.end());
  std::sort(key.begin(), key.end());
  key.erase(std::unique(key.begin(), key.end()), key.end());
  if (!report.complete && incomplete_set_.insert(key).second) {
    const auto anchor = static_cast<std::uint32_t>(incomplete_.size());
    incomplete_.push_back(key);
    for (auto id : key) incomplete_by_rule_[id].push_back(anchor);
    learned_.emplace_back(LearnedConstraint::Kind::kSpecialisation, key);
  }
  if (!report.consistent && inconsistent_.insert(key).second) {
    learned_.emplace_back(LearnedConstraint::Kind::kGeneralisation, key);
  }
}

std::optional<LearnedConstraint::Kind> SearchState::skip_reason(const Hypothesis& h) {
  const auto ids = sorted_ids(h);
  return skip_reason(ids);
}

std::optional<LearnedConstraint::Kind> SearchState::skip_reason(std::span<const RuleId> ids) {
  const std::size_t m = ids.size();
  if (m == 0) return std::nullopt;

  if (!inconsistent_.empty()) {
    if (m > 16) throw ContractError("hypothesis too large for subset pruning");
    std::vector<RuleId> sub;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
      sub.clear();
      for (std::size_t i = 0; i < m; ++i) {
        if (mask & (1u << i)) sub.push_back(ids[i]);
      }
      std::sort(sub.begin(), sub.end());
      if (inconsistent_.contains(sub)) return LearnedConstraint::Kind::kGeneralisation;
    }
  }

  if (incomplete_.empty()) return std::nullopt;
  auto covered_by = [&](std::uint32_t anchor) {
    const auto& a = incomplete_[anchor];
    for (auto id : ids) {
      if (std::none_of(a.begin(), a.end(), [&](RuleId r) { return generalises(r, id); })) return false;
    }
    return true;
  };
  if (theta_) {
    for (std::uint32_t a = 0; a < incomplete_.size(); ++a) {
      if (covered_by(a)) return LearnedConstraint::Kind::kSpecialisation;
    }
    return std::nullopt;
  }
  // Candidate anchors must hold a generalisation of the first rule.
  std::vector<std::uint32_t> candidates;
  for (auto g : generalisations(ids[0])) {
    const auto& by = incomplete_by_rule_[g];
    candidates.insert(candidates.end(), by.begin(), by.end());
  }
  for (auto a : incomplete_by_rule_[ids[0]]) candidates.push_back(a);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (auto a : candidates) {
    if (covered_by(a)) return LearnedConstraint::Kind::kSpecialisation;
  }
  return std::nullopt;
}

std::vector<LearnedConstraint> SearchState::learned() const {
  std::vector<LearnedConstraint> out;
  for (const auto& [kind, ids] : learned_) {
    LearnedConstraint c{kind, {}};
    for (auto id : ids) c.anchor.push_back(rules_[id]);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace disco::learner
