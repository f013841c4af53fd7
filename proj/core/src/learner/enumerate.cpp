#include <algorithm>
#include <cstdint>
#include <vector>

#include "disco/kb/error.hpp"
#include "disco/learner/learner.hpp"

namespace disco::learner {
namespace {

using kb::Atom;
using kb::Term;

// Every atom over `decl` with arguments drawn from variables [0, vars).
void literals_for(const PredicateDecl& decl, std::size_t vars, std::vector<Atom>& out) {
  std::vector<std::uint32_t> digits(decl.arity, 0);
  while (true) {
    Atom a{decl.name, {}};
    for (auto d : digits) a.args.push_back(Term::variable(d));
    out.push_back(std::move(a));
    std::size_t i = decl.arity;
    while (i > 0 && ++digits[i - 1] == vars) digits[--i] = 0;
    if (i == 0) break;
  }
}

bool vars_contiguous(const Atom& head, const std::vector<Atom>& body) {
  std::uint64_t mask = 0;
  for (Term t : head.args) mask |= std::uint64_t{1} << t.var_index();
  for (const auto& a : body) {
    for (Term t : a.args) mask |= std::uint64_t{1} << t.var_index();
  }
  return (mask & (mask + 1)) == 0;
}

bool head_safe(const Atom& head, const std::vector<Atom>& body) {
  for (Term h : head.args) {
    bool found = false;
    for (const auto& a : body) {
      if (std::find(a.args.begin(), a.args.end(), h) != a.args.end()) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

std::vector<kb::Rule> enumerate_rules(const Bias& bias, const constraints::ConstraintSet& discovered, std::size_t size,
                                      std::size_t* pruned) {
  if (pruned) *pruned = 0;
  if (bias.max_body == 0 || bias.max_vars == 0) return {};
  bias.validate();
  if (bias.max_vars > 63) throw ContractError("max_vars above 63 is not supported");
  std::vector<kb::Rule> out;
  if (size < 2 || size > bias.max_body + 1) return out;

  Atom head{bias.head.name, {}};
  for (std::uint32_t i = 0; i < bias.head.arity; ++i) head.args.push_back(Term::variable(i));

  std::vector<PredicateDecl> decls = bias.body;
  if (bias.allow_recursion && std::find(decls.begin(), decls.end(), bias.head) == decls.end()) {
    decls.push_back(bias.head);
  }
  std::vector<Atom> universe;
  for (const auto& d : decls) literals_for(d, bias.max_vars, universe);
  std::sort(universe.begin(), universe.end(), kb::AtomLess{});
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());

  const std::size_t k = size - 1;
  if (k > universe.size()) return out;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  std::vector<Atom> body(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) body[i] = universe[pick[i]];
    if (vars_contiguous(head, body) && head_safe(head, body) && kb::body_connected(head, body)) {
      kb::Rule rule(head, body);
      if (rule.canonical() == rule) {
        if (discovered.prunes(rule)) {
          if (pruned) ++*pruned;
        } else {
          out.push_back(std::move(rule));
        }
      }
    }
    // Next k-combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == universe.size() - k + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  std::sort(out.begin(), out.end(), kb::RuleLess{});
  return out;
}

bool theta_subsumes(const kb::Rule& general, const kb::Rule& specific) {
  if (general.head().predicate != specific.head().predicate || general.head().arity() != specific.head().arity()) {
    return false;
  }
  std::vector<std::optional<Term>> theta(general.num_vars() + 64);
  auto bind = [&](const Atom& g, const Atom& s, std::vector<std::uint32_t>& trail) {
    if (g.predicate != s.predicate || g.arity() != s.arity()) return false;
    for (std::size_t i = 0; i < g.arity(); ++i) {
      Term gt = g.args[i];
      if (!gt.is_variable()) {
        if (gt != s.args[i]) return false;
        continue;
      }
      const auto v = gt.var_index();
      if (v >= theta.size()) theta.resize(v + 1);
      if (theta[v]) {
        if (*theta[v] != s.args[i]) return false;
      } else {
        theta[v] = s.args[i];
        trail.push_back(v);
      }
    }
    return true;
  };
  auto undo = [&](std::vector<std::uint32_t>& trail) {
    for (auto v : trail) theta[v].reset();
    trail.clear();
  };
  std::vector<std::uint32_t> head_trail;
  if (!bind(general.head(), specific.head(), head_trail)) return false;

  const auto& gb = general.body();
  const auto& sb = specific.body();
  std::vector<std::vector<std::uint32_t>> trails(gb.size());
  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (i == gb.size()) {
      for (auto [x, y] : general.diseqs()) {
        if (!theta[x] || !theta[y]) return false;
        if (!theta[x]->is_variable() || !theta[y]->is_variable()) {
          if (*theta[x] == *theta[y]) return false;
          continue;
        }
        kb::Diseq d{std::min(theta[x]->var_index(), theta[y]->var_index()),
                    std::max(theta[x]->var_index(), theta[y]->var_index())};
        const auto& sd = specific.diseqs();
        if (std::find(sd.begin(), sd.end(), d) == sd.end()) return false;
      }
      return true;
    }
    for (const auto& s : sb) {
      if (bind(gb[i], s, trails[i]) && self(self, i + 1)) return true;
      undo(trails[i]);
    }
    return false;
  };
  return search(search, 0);
}

}  // namespace disco::learner
