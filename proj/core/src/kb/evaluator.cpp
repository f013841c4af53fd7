#include "disco/kb/evaluator.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "disco/kb/error.hpp"

namespace disco::kb {
namespace {

std::uint32_t max_var_index(const std::vector<Atom>& body, const std::vector<Diseq>& diseqs, const Atom* head) {
  std::uint32_t n = 0;
  auto note = [&](const Atom& a) {
    for (Term t : a.args) {
      if (t.is_variable()) n = std::max(n, t.var_index() + 1);
    }
  };
  for (const auto& a : body) note(a);
  if (head != nullptr) note(*head);
  for (auto [x, y] : diseqs) n = std::max({n, x + 1, y + 1});
  return n;
}

// Nested-loop join over per-column indexes, atoms ordered smallest relation
// first with a preference for atoms that already have a bound argument.
class JoinPlan {
 public:
  JoinPlan(const std::vector<Atom>& body, const std::vector<Diseq>& diseqs, std::span<const AtomSource> sources,
           std::uint32_t num_vars)
      : body_(body), diseqs_(diseqs), sources_(sources), binding_(num_vars), bound_(num_vars, false) {
    order_atoms();
  }

  // Returns false if stopped by the callback.
  bool run(const std::function<bool(std::span<const Symbol>)>& on_binding) {
    for (auto [x, y] : diseqs_) {
      if (x == y) return true;
    }
    for (std::size_t i = 0; i < body_.size(); ++i) {
      if (sources_[i].size() == 0) return true;
    }
    callback_ = &on_binding;
    return step(0);
  }

 private:
  void order_atoms() {
    std::vector<bool> placed(body_.size(), false);
    std::vector<bool> will_bind(binding_.size(), false);
    for (std::size_t k = 0; k < body_.size(); ++k) {
      std::size_t best = body_.size();
      std::pair<int, std::size_t> best_key{2, std::numeric_limits<std::size_t>::max()};
      for (std::size_t i = 0; i < body_.size(); ++i) {
        if (placed[i]) continue;
        bool has_bound = false;
        for (Term t : body_[i].args) {
          if (t.is_constant() || will_bind[t.var_index()]) has_bound = true;
        }
        const std::pair<int, std::size_t> key{has_bound ? 0 : 1, sources_[i].size()};
        if (key < best_key) {
          best_key = key;
          best = i;
        }
      }
      placed[best] = true;
      order_.push_back(best);
      for (Term t : body_[best].args) {
        if (t.is_variable()) will_bind[t.var_index()] = true;
      }
    }
  }

  bool diseqs_hold() const {
    for (auto [x, y] : diseqs_) {
      if (bound_[x] && bound_[y] && binding_[x] == binding_[y]) return false;
    }
    return true;
  }

  // Tries to match `row` against atom args; records newly bound variables.
  bool match(const Atom& atom, std::span<const Symbol> row, std::vector<std::uint32_t>& newly) {
    for (std::size_t c = 0; c < atom.args.size(); ++c) {
      const Term t = atom.args[c];
      if (t.is_constant()) {
        if (row[c] != t.symbol()) return false;
      } else if (bound_[t.var_index()]) {
        if (binding_[t.var_index()] != row[c]) return false;
      } else {
        bound_[t.var_index()] = true;
        binding_[t.var_index()] = row[c];
        newly.push_back(t.var_index());
      }
    }
    return true;
  }

  void unbind(std::vector<std::uint32_t>& newly) {
    for (auto v : newly) bound_[v] = false;
    newly.clear();
  }

  bool scan(const Relation& rel, const Atom& atom, std::size_t depth) {
    // Pick the bound column with the shortest posting list.
    std::size_t best_col = atom.args.size();
    std::uint32_t best_count = std::numeric_limits<std::uint32_t>::max();
    RowChain best_chain;
    for (std::size_t c = 0; c < atom.args.size(); ++c) {
      const Term t = atom.args[c];
      Symbol value;
      if (t.is_constant()) {
        value = t.symbol();
      } else if (bound_[t.var_index()]) {
        value = binding_[t.var_index()];
      } else {
        continue;
      }
      RowChain chain = rel.rows_with(c, value);
      if (chain.size() < best_count) {
        best_count = chain.size();
        best_col = c;
        best_chain = chain;
        if (best_count == 0) return true;
      }
    }
    std::vector<std::uint32_t> newly;
    auto visit = [&](RowId r) {
      const bool ok = match(atom, rel.row(r), newly) && diseqs_hold();
      const bool keep_going = !ok || step(depth + 1);
      unbind(newly);
      return keep_going;
    };
    if (best_col < atom.args.size()) {
      for (RowId r : best_chain) {
        if (!visit(r)) return false;
      }
    } else {
      for (RowId r = 0; r < rel.size(); ++r) {
        if (!visit(r)) return false;
      }
    }
    return true;
  }

  bool step(std::size_t depth) {
    if (depth == order_.size()) return (*callback_)(binding_);
    const std::size_t i = order_[depth];
    const AtomSource& src = sources_[i];
    if (src.first != nullptr && !scan(*src.first, body_[i], depth)) return false;
    if (src.second != nullptr && !scan(*src.second, body_[i], depth)) return false;
    return true;
  }

  const std::vector<Atom>& body_;
  const std::vector<Diseq>& diseqs_;
  std::span<const AtomSource> sources_;
  std::vector<Symbol> binding_;
  std::vector<bool> bound_;
  std::vector<std::size_t> order_;
  const std::function<bool(std::span<const Symbol>)>* callback_ = nullptr;
};

void check_arity(const Atom& atom, const Relation* rel) {
  if (rel != nullptr && rel->arity() != atom.arity()) {
    throw ContractError("arity mismatch for " + std::string(atom.predicate.text()) + ": relation has arity " +
                        std::to_string(rel->arity()) + ", atom has " + std::to_string(atom.arity()));
  }
}

std::vector<AtomSource> store_sources(const std::vector<Atom>& body, const FactStore& store) {
  std::vector<AtomSource> sources;
  sources.reserve(body.size());
  for (const auto& a : body) {
    const Relation* rel = store.find(a.predicate);
    check_arity(a, rel);
    sources.push_back({rel, nullptr});
  }
  return sources;
}

void instantiate(const Atom& head, std::span<const Symbol> binding, std::vector<Symbol>& out) {
  out.clear();
  for (Term t : head.args) out.push_back(t.is_constant() ? t.symbol() : binding[t.var_index()]);
}

class SemiNaive {
 public:
  SemiNaive(const std::vector<Rule>& rules, const FactStore& base) : rules_(rules), base_(base) {}

  FactStore run() {
    FactStore delta;
    for (const auto& rule : rules_) {
      std::vector<AtomSource> sources;
      for (const auto& a : rule.body()) sources.push_back(full(a));
      fire(rule, sources, delta);
    }
    while (delta.fact_count() > 0) {
      derived_.merge(delta);
      FactStore next;
      for (const auto& rule : rules_) {
        const auto& body = rule.body();
        for (std::size_t i = 0; i < body.size(); ++i) {
          const Relation* changed = delta.find(body[i].predicate);
          if (changed == nullptr || changed->empty()) continue;
          std::vector<AtomSource> sources;
          for (std::size_t j = 0; j < body.size(); ++j) sources.push_back(j == i ? AtomSource{changed, nullptr} : full(body[j]));
          fire(rule, sources, next);
        }
      }
      delta = std::move(next);
    }
    return std::move(derived_);
  }

 private:
  AtomSource full(const Atom& a) const {
    const Relation* b = base_.find(a.predicate);
    const Relation* d = derived_.find(a.predicate);
    check_arity(a, b);
    check_arity(a, d);
    return {b, d};
  }

  void fire(const Rule& rule, const std::vector<AtomSource>& sources, FactStore& out) {
    const Atom& head = rule.head();
    if (const Relation* b = base_.find(head.predicate)) check_arity(head, b);
    const std::uint32_t nv = max_var_index(rule.body(), rule.diseqs(), &head);
    JoinPlan plan(rule.body(), rule.diseqs(), sources, nv);
    std::vector<Symbol> tuple;
    plan.run([&](std::span<const Symbol> binding) {
      instantiate(head, binding, tuple);
      if (!base_.contains(head.predicate, tuple) && !derived_.contains(head.predicate, tuple)) {
        out.add(head.predicate, tuple);
      }
      return true;
    });
  }

  const std::vector<Rule>& rules_;
  const FactStore& base_;
  FactStore derived_;
};

}  // namespace

bool for_each_binding(const std::vector<Atom>& body, const std::vector<Diseq>& diseqs,
                      std::span<const AtomSource> sources,
                      const std::function<bool(std::span<const Symbol>)>& on_binding) {
  if (sources.size() != body.size()) throw ContractError("one source per body atom required");
  JoinPlan plan(body, diseqs, sources, max_var_index(body, diseqs, nullptr));
  return plan.run(on_binding);
}

FactStore derive(const std::vector<Rule>& rules, const FactStore& store) {
  if (rules.empty()) return {};
  return SemiNaive(rules, store).run();
}

FactStore ground_model(const std::vector<Rule>& rules, const FactStore& store) {
  FactStore model = store;
  model.merge(derive(rules, store));
  return model;
}

bool entails(const std::vector<Rule>& rules, const FactStore& store, const Atom& goal) {
  if (store.contains(goal)) return true;
  if (rules.empty()) return false;
  return derive(rules, store).contains(goal);
}

std::optional<std::vector<Symbol>> find_body_witness(const std::vector<Atom>& body,
                                                     const std::vector<Diseq>& diseqs,
                                                     const FactStore& store) {
  const auto sources = store_sources(body, store);
  std::optional<std::vector<Symbol>> witness;
  for_each_binding(body, diseqs, sources, [&](std::span<const Symbol> binding) {
    witness.emplace(binding.begin(), binding.end());
    return false;
  });
  return witness;
}

bool sat_body(const std::vector<Atom>& body, const std::vector<Diseq>& diseqs, const FactStore& store) {
  return find_body_witness(body, diseqs, store).has_value();
}

}  // namespace disco::kb
