#include "disco/kb/program.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "disco/kb/error.hpp"

namespace disco::kb {
namespace {

constexpr std::size_t kExactCanonicalVarLimit = 7;

std::strong_ordering compare_bodies(const std::vector<Atom>& a, const std::vector<Atom>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = compare_atoms(a[i], b[i]); c != 0) return c;
  }
  return a.size() <=> b.size();
}

void normalise_diseqs(std::vector<Diseq>& diseqs) {
  for (auto& [x, y] : diseqs) {
    if (x > y) std::swap(x, y);
  }
  std::sort(diseqs.begin(), diseqs.end());
  diseqs.erase(std::unique(diseqs.begin(), diseqs.end()), diseqs.end());
}

void sort_body(std::vector<Atom>& body) {
  std::sort(body.begin(), body.end(), AtomLess{});
  body.erase(std::unique(body.begin(), body.end()), body.end());
}

Atom rename(const Atom& atom, const std::unordered_map<std::uint32_t, std::uint32_t>& mapping) {
  Atom out{atom.predicate, atom.args};
  for (auto& t : out.args) {
    if (t.is_variable()) t = Term::variable(mapping.at(t.var_index()));
  }
  return out;
}

struct Renamed {
  std::vector<Atom> body;
  std::vector<Diseq> diseqs;
};

Renamed apply(const std::vector<Atom>& body, const std::vector<Diseq>& diseqs,
              const std::unordered_map<std::uint32_t, std::uint32_t>& mapping) {
  Renamed r;
  r.body.reserve(body.size());
  for (const auto& a : body) r.body.push_back(rename(a, mapping));
  sort_body(r.body);
  for (auto [x, y] : diseqs) r.diseqs.emplace_back(mapping.at(x), mapping.at(y));
  normalise_diseqs(r.diseqs);
  return r;
}

bool renamed_less(const Renamed& a, const Renamed& b) {
  if (auto c = compare_bodies(a.body, b.body); c != 0) return c < 0;
  return a.diseqs < b.diseqs;
}

}  // namespace

std::strong_ordering compare_terms(Term a, Term b) {
  if (a.is_variable() != b.is_variable()) return a.is_variable() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.is_variable()) return a.var_index() <=> b.var_index();
  if (a == b) return std::strong_ordering::equal;
  return a.symbol().text() <=> b.symbol().text();
}

bool Atom::is_ground() const {
  return std::all_of(args.begin(), args.end(), [](Term t) { return t.is_constant(); });
}

std::strong_ordering compare_atoms(const Atom& a, const Atom& b) {
  if (a.predicate != b.predicate) {
    if (auto c = a.predicate.text() <=> b.predicate.text(); c != 0) return c;
  }
  if (auto c = a.args.size() <=> b.args.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (auto c = compare_terms(a.args[i], b.args[i]); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string variable_name(std::uint32_t index) {
  if (index < 26) return std::string(1, static_cast<char>('A' + index));
  return "V" + std::to_string(index);
}

std::string render_atom(const Atom& atom) {
  std::string out(atom.predicate.text());
  if (atom.args.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    if (i > 0) out += ',';
    const Term t = atom.args[i];
    out += t.is_variable() ? variable_name(t.var_index()) : std::string(t.symbol().text());
  }
  out += ')';
  return out;
}

Rule::Rule(Atom head, std::vector<Atom> body, std::vector<Diseq> diseqs)
    : head_(std::move(head)), body_(std::move(body)), diseqs_(std::move(diseqs)) {
  normalise_diseqs(diseqs_);
}

std::uint32_t Rule::num_vars() const {
  std::vector<std::uint32_t> seen;
  auto note = [&](const Atom& a) {
    for (Term t : a.args) {
      if (t.is_variable()) seen.push_back(t.var_index());
    }
  };
  note(head_);
  for (const auto& a : body_) note(a);
  std::sort(seen.begin(), seen.end());
  return static_cast<std::uint32_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
}

bool Rule::is_recursive() const {
  return std::any_of(body_.begin(), body_.end(), [&](const Atom& a) {
    return a.predicate == head_.predicate && a.arity() == head_.arity();
  });
}

Rule Rule::canonical() const {
  std::unordered_map<std::uint32_t, std::uint32_t> mapping;
  std::uint32_t next = 0;
  Atom head = head_;
  for (auto& t : head.args) {
    if (!t.is_variable()) continue;
    auto [it, inserted] = mapping.emplace(t.var_index(), next);
    if (inserted) ++next;
    t = Term::variable(it->second);
  }
  const std::uint32_t head_vars = next;

  // Body-only variables in order of first occurrence as written.
  std::vector<std::uint32_t> free_vars;
  for (const auto& a : body_) {
    for (Term t : a.args) {
      if (t.is_variable() && !mapping.contains(t.var_index()) &&
          std::find(free_vars.begin(), free_vars.end(), t.var_index()) == free_vars.end()) {
        free_vars.push_back(t.var_index());
      }
    }
  }
  for (auto [x, y] : diseqs_) {
    for (auto v : {x, y}) {
      if (!mapping.contains(v) && std::find(free_vars.begin(), free_vars.end(), v) == free_vars.end()) {
        free_vars.push_back(v);
      }
    }
  }

  std::vector<std::uint32_t> targets(free_vars.size());
  std::iota(targets.begin(), targets.end(), head_vars);
  auto with_targets = [&](const std::vector<std::uint32_t>& tg) {
    auto m = mapping;
    for (std::size_t i = 0; i < free_vars.size(); ++i) m[free_vars[i]] = tg[i];
    return apply(body_, diseqs_, m);
  };

  Renamed best = with_targets(targets);
  if (free_vars.size() <= kExactCanonicalVarLimit) {
    while (std::next_permutation(targets.begin(), targets.end())) {
      Renamed candidate = with_targets(targets);
      if (renamed_less(candidate, best)) best = std::move(candidate);
    }
  } else {
    // Too many variables for exhaustive search: renumber by first occurrence
    // in the sorted body until the numbering is stable.
    for (int round = 0; round < 16; ++round) {
      std::unordered_map<std::uint32_t, std::uint32_t> m;
      for (std::uint32_t v = 0; v < head_vars; ++v) m[v] = v;
      std::uint32_t n = head_vars;
      for (const auto& a : best.body) {
        for (Term t : a.args) {
          if (t.is_variable() && m.emplace(t.var_index(), n).second) ++n;
        }
      }
      for (auto [x, y] : best.diseqs) {
        for (auto v : {x, y}) {
          if (m.emplace(v, n).second) ++n;
        }
      }
      Renamed next_form = apply(best.body, best.diseqs, m);
      if (compare_bodies(next_form.body, best.body) == 0 && next_form.diseqs == best.diseqs) break;
      best = std::move(next_form);
    }
  }
  return Rule(std::move(head), std::move(best.body), std::move(best.diseqs));
}

bool body_connected(const Atom& head, const std::vector<Atom>& body) {
  std::vector<std::uint32_t> reached;
  for (Term t : head.args) {
    if (t.is_variable()) reached.push_back(t.var_index());
  }
  std::vector<bool> done(body.size(), false);
  std::size_t remaining = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i].is_ground()) {
      done[i] = true;
    } else {
      ++remaining;
    }
  }
  auto touches = [&](const Atom& a) {
    return std::any_of(a.args.begin(), a.args.end(), [&](Term t) {
      return t.is_variable() && std::find(reached.begin(), reached.end(), t.var_index()) != reached.end();
    });
  };
  auto absorb = [&](std::size_t i) {
    done[i] = true;
    --remaining;
    for (Term t : body[i].args) {
      if (t.is_variable()) reached.push_back(t.var_index());
    }
  };
  if (reached.empty() && remaining > 0) {
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (!done[i]) {
        absorb(i);
        break;
      }
    }
  }
  bool progress = true;
  while (remaining > 0 && progress) {
    progress = false;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (!done[i] && touches(body[i])) {
        absorb(i);
        progress = true;
      }
    }
  }
  return remaining == 0;
}

void Rule::validate() const {
  if (body_.empty()) throw ContractError("rule has an empty body: " + render());
  auto in_body = [&](std::uint32_t v) {
    return std::any_of(body_.begin(), body_.end(), [&](const Atom& a) {
      return std::find(a.args.begin(), a.args.end(), Term::variable(v)) != a.args.end();
    });
  };
  for (Term t : head_.args) {
    if (t.is_variable() && !in_body(t.var_index())) {
      throw ContractError("head variable " + variable_name(t.var_index()) + " does not occur in the body");
    }
  }
  for (auto [x, y] : diseqs_) {
    if (!in_body(x) || !in_body(y)) throw ContractError("disequality variable does not occur in the body");
  }
  if (!body_connected(head_, body_)) throw ContractError("rule body is not connected to the head: " + render());
}

std::string Rule::render() const {
  std::string out = render_atom(head_);
  out += ":-";
  bool first = true;
  for (const auto& a : body_) {
    if (!first) out += ',';
    first = false;
    out += render_atom(a);
  }
  for (auto [x, y] : diseqs_) {
    if (!first) out += ',';
    first = false;
    out += variable_name(x) + "!=" + variable_name(y);
  }
  out += '.';
  return out;
}

std::strong_ordering compare_rules(const Rule& a, const Rule& b) {
  if (auto c = compare_atoms(a.head(), b.head()); c != 0) return c;
  if (auto c = compare_bodies(a.body(), b.body()); c != 0) return c;
  return a.diseqs() <=> b.diseqs();
}

std::size_t RuleHash::operator()(const Rule& rule) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  auto mix = [&](std::uint64_t v) { h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
  auto atom = [&](const Atom& a) {
    mix(a.predicate.id());
    mix(a.args.size());
    for (Term t : a.args) mix(t.raw());
  };
  atom(rule.head());
  for (const auto& a : rule.body()) atom(a);
  for (auto [x, y] : rule.diseqs()) mix((std::uint64_t{x} << 32) | y);
  return h;
}

}  // namespace disco::kb
