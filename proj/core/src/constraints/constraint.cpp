#include "disco/constraints/constraint.hpp"

#include <algorithm>
#include <numeric>

#include "disco/kb/evaluator.hpp"

namespace disco::constraints {
namespace {

using kb::Atom;
using kb::Rule;
using kb::Term;
using miner::PropertyFamily;

std::vector<std::uint32_t> identity_slots(std::size_t arity, std::uint32_t offset = 0) {
  std::vector<std::uint32_t> slots(arity);
  std::iota(slots.begin(), slots.end(), offset);
  return slots;
}

// Two rule terms that cannot denote the same constant in any grounding that
// respects the constraint: different variables, or different constants.
bool provably_distinct(Term a, Term b) {
  if (a.is_variable() && b.is_variable()) return a.var_index() != b.var_index();
  if (a.is_constant() && b.is_constant()) return a != b;
  return false;
}

class PatternMatcher {
 public:
  PatternMatcher(const Rule& rule, const HypothesisConstraint& c) : rule_(rule), c_(c) {
    std::uint32_t n = 0;
    for (const auto& t : c.templates) {
      for (auto s : t.slots) n = std::max(n, s + 1);
    }
    mapping_.assign(n, std::nullopt);
    chosen_.assign(c.templates.size(), 0);
  }

  std::optional<Violation> run() {
    if (!step(0)) return std::nullopt;
    Violation v;
    v.literals = chosen_;
    std::sort(v.literals.begin(), v.literals.end());
    v.literals.erase(std::unique(v.literals.begin(), v.literals.end()), v.literals.end());
    for (auto [x, y] : c_.diseqs) {
      v.diseqs.emplace_back((*mapping_[x]).var_index(), (*mapping_[y]).var_index());
    }
    return v;
  }

 private:
  bool diseqs_ok() const {
    for (auto [x, y] : c_.diseqs) {
      if (!mapping_[x] || !mapping_[y]) continue;
      const Term a = *mapping_[x];
      const Term b = *mapping_[y];
      // Constants cannot be carried into the witness disequalities.
      if (!a.is_variable() || !b.is_variable() || !provably_distinct(a, b)) return false;
    }
    return true;
  }

  bool step(std::size_t depth) {
    if (depth == c_.templates.size()) return true;
    const LiteralTemplate& tpl = c_.templates[depth];
    const auto& body = rule_.body();
    for (std::size_t i = 0; i < body.size(); ++i) {
      const Atom& lit = body[i];
      if (lit.predicate != tpl.predicate || lit.arity() != tpl.slots.size()) continue;
      std::vector<std::uint32_t> newly;
      bool ok = true;
      for (std::size_t k = 0; k < tpl.slots.size() && ok; ++k) {
        auto& m = mapping_[tpl.slots[k]];
        if (!m) {
          m = lit.args[k];
          newly.push_back(tpl.slots[k]);
        } else if (*m != lit.args[k]) {
          ok = false;
        }
      }
      if (ok && diseqs_ok()) {
        chosen_[depth] = i;
        if (step(depth + 1)) return true;
      }
      for (auto s : newly) mapping_[s].reset();
    }
    return false;
  }

  const Rule& rule_;
  const HypothesisConstraint& c_;
  std::vector<std::optional<Term>> mapping_;
  std::vector<std::size_t> chosen_;
};

std::optional<Violation> count_bound_violation(const Rule& rule, const HypothesisConstraint& c) {
  const auto& body = rule.body();
  std::vector<std::size_t> lits;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i].predicate == c.predicate && body[i].arity() == c.provenance.kind.arity()) lits.push_back(i);
  }
  // With max_completions == 1 a violation is a pair of literals agreeing on
  // the group positions and provably differing at a counted position.
  for (std::size_t x = 0; x < lits.size(); ++x) {
    for (std::size_t y = x + 1; y < lits.size(); ++y) {
      const Atom& a = body[lits[x]];
      const Atom& b = body[lits[y]];
      const bool same_group = std::all_of(c.group_positions.begin(), c.group_positions.end(),
                                          [&](std::size_t p) { return a.args[p] == b.args[p]; });
      if (!same_group) continue;
      for (std::size_t p : c.counted_positions) {
        if (!provably_distinct(a.args[p], b.args[p])) continue;
        Violation v{{lits[x], lits[y]}, {}};
        if (a.args[p].is_variable()) v.diseqs.emplace_back(a.args[p].var_index(), b.args[p].var_index());
        return v;
      }
    }
  }
  return std::nullopt;
}

std::string slot_name(std::uint32_t s) { return kb::variable_name(s); }

std::string render_tuple(const std::vector<std::string>& names) {
  std::string out = "(";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += ',';
    out += names[i];
  }
  if (names.size() == 1) out += ',';
  return out + ")";
}

}  // namespace

std::vector<kb::Symbol> HypothesisConstraint::predicates() const {
  std::vector<kb::Symbol> out;
  if (kind == ConstraintKind::kCountBound) out.push_back(predicate);
  for (const auto& t : templates) {
    if (std::find(out.begin(), out.end(), t.predicate) == out.end()) out.push_back(t.predicate);
  }
  return out;
}

std::string HypothesisConstraint::render() const {
  std::string out = ":- ";
  if (kind == ConstraintKind::kCountBound) {
    const std::size_t arity = provenance.kind.arity();
    std::vector<std::string> lead(arity, "_");
    std::vector<std::string> full(arity);
    std::vector<std::string> counted;
    for (std::size_t p = 0; p < arity; ++p) full[p] = slot_name(static_cast<std::uint32_t>(p));
    for (auto p : group_positions) lead[p] = full[p];
    for (auto p : counted_positions) counted.push_back(full[p]);
    std::string pred(predicate.text());
    out += "b_lit(R," + pred + "," + render_tuple(lead) + "), #count{";
    for (std::size_t i = 0; i < counted.size(); ++i) out += (i > 0 ? "," : "") + counted[i];
    out += " : b_lit(R," + pred + "," + render_tuple(full) + ")} > " + std::to_string(max_completions) + ".";
    return out;
  }
  for (std::size_t i = 0; i < templates.size(); ++i) {
    if (i > 0) out += ", ";
    std::vector<std::string> names;
    for (auto s : templates[i].slots) names.push_back(slot_name(s));
    out += "b_lit(R," + std::string(templates[i].predicate.text()) + "," + render_tuple(names) + ")";
  }
  for (auto [x, y] : diseqs) out += ", " + slot_name(y) + "!=" + slot_name(x);
  return out + ".";
}

HypothesisConstraint compile_constraint(const miner::PropertyAssertion& assertion) {
  HypothesisConstraint c{.provenance = assertion};
  const auto& kind = assertion.kind;
  const kb::Symbol p = assertion.relations.at(0).name;
  const std::size_t arity = kind.arity();
  switch (kind.family()) {
    case PropertyFamily::kIrreflexive:
      c.templates.push_back({p, std::vector<std::uint32_t>(arity, 0)});
      break;
    case PropertyFamily::kAntitransitive:
      c.templates = {{p, {0, 1}}, {p, {1, 2}}, {p, {0, 2}}};
      break;
    case PropertyFamily::kAntitriangular:
      c.templates = {{p, {0, 1}}, {p, {1, 2}}, {p, {2, 0}}};
      break;
    case PropertyFamily::kAsymmetric: {
      std::vector<std::uint32_t> image(kind.permutation().begin(), kind.permutation().end());
      c.templates = {{p, identity_slots(arity)}, {p, std::move(image)}};
      break;
    }
    case PropertyFamily::kExclusive:
      c.templates = {{p, identity_slots(arity)}, {assertion.relations.at(1).name, identity_slots(arity)}};
      break;
    case PropertyFamily::kUnique:
    case PropertyFamily::kSingleton: {
      c.kind = ConstraintKind::kCountBound;
      c.predicate = p;
      if (kind.family() == PropertyFamily::kUnique) {
        c.group_positions = kind.determinant_columns();
        c.counted_positions = kind.dependent_columns();
      } else {
        c.counted_positions.resize(arity);
        std::iota(c.counted_positions.begin(), c.counted_positions.end(), 0);
      }
      // Two-literal reading: shared group slots, fresh counted slots.
      std::vector<std::uint32_t> second = identity_slots(arity);
      std::uint32_t fresh = static_cast<std::uint32_t>(arity);
      for (auto pos : c.counted_positions) second[pos] = fresh++;
      c.templates = {{p, identity_slots(arity)}, {p, second}};
      if (c.counted_positions.size() == 1) {
        const auto pos = c.counted_positions.front();
        c.diseqs.emplace_back(static_cast<std::uint32_t>(pos), second[pos]);
      }
      break;
    }
  }
  return c;
}

std::optional<Violation> find_violation(const Rule& rule, const HypothesisConstraint& constraint) {
  if (constraint.kind == ConstraintKind::kCountBound) return count_bound_violation(rule, constraint);
  return PatternMatcher(rule, constraint).run();
}

std::vector<WitnessForm> witness_forms(const HypothesisConstraint& constraint) {
  auto to_atom = [](const LiteralTemplate& t) {
    Atom a{t.predicate, {}};
    for (auto s : t.slots) a.args.push_back(Term::variable(s));
    return a;
  };
  std::vector<WitnessForm> forms;
  if (constraint.kind == ConstraintKind::kPatternMatch) {
    WitnessForm f;
    for (const auto& t : constraint.templates) f.body.push_back(to_atom(t));
    f.diseqs = constraint.diseqs;
    forms.push_back(std::move(f));
    return forms;
  }
  const auto& first = constraint.templates.at(0);
  const auto& second = constraint.templates.at(1);
  for (auto pos : constraint.counted_positions) {
    WitnessForm f;
    f.body = {to_atom(first), to_atom(second)};
    f.diseqs.emplace_back(first.slots[pos], second.slots[pos]);
    forms.push_back(std::move(f));
  }
  return forms;
}

bool verify_unsat(const HypothesisConstraint& constraint, const kb::FactStore& store) {
  for (const auto& form : witness_forms(constraint)) {
    if (kb::sat_body(form.body, form.diseqs, store)) return false;
  }
  return true;
}

ConstraintSet::ConstraintSet(std::vector<HypothesisConstraint> constraints) : constraints_(std::move(constraints)) {
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    for (auto p : constraints_[i].predicates()) by_predicate_[p].push_back(i);
  }
}

ConstraintSet ConstraintSet::compile(std::span<const miner::PropertyAssertion> assertions) {
  std::vector<HypothesisConstraint> out;
  out.reserve(assertions.size());
  for (const auto& a : assertions) out.push_back(compile_constraint(a));
  return ConstraintSet(std::move(out));
}

std::span<const std::size_t> ConstraintSet::mentioning(kb::Symbol predicate) const {
  auto it = by_predicate_.find(predicate);
  if (it == by_predicate_.end()) return {};
  return it->second;
}

std::optional<std::size_t> ConstraintSet::first_violated(const kb::Rule& rule) const {
  std::vector<std::size_t> seen;
  for (const auto& lit : rule.body()) {
    for (auto idx : mentioning(lit.predicate)) {
      if (std::find(seen.begin(), seen.end(), idx) != seen.end()) continue;
      seen.push_back(idx);
      if (violates(rule, constraints_[idx])) return idx;
    }
  }
  return std::nullopt;
}

}  // namespace disco::constraints
