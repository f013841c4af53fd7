#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "disco/kb/symbol.hpp"

namespace disco::kb {

// A Datalog term: a variable (rendered A, B, ... by index) or a constant.
class Term {
 public:
  static constexpr Term variable(std::uint32_t index) { return Term(index); }
  static constexpr Term constant(Symbol symbol) { return Term(symbol.id() | kConstantBit); }

  constexpr bool is_variable() const { return (bits_ & kConstantBit) == 0; }
  constexpr bool is_constant() const { return !is_variable(); }
  constexpr std::uint32_t var_index() const { return bits_; }
  constexpr Symbol symbol() const { return Symbol(bits_ & ~kConstantBit); }
  constexpr std::uint32_t raw() const { return bits_; }

  friend constexpr bool operator==(Term, Term) = default;

 private:
  static constexpr std::uint32_t kConstantBit = 0x80000000u;
  constexpr explicit Term(std::uint32_t bits) : bits_(bits) {}
  std::uint32_t bits_;
};

// Variables before constants; variables by index; constants by text.
std::strong_ordering compare_terms(Term a, Term b);

struct Atom {
  Symbol predicate;
  std::vector<Term> args;

  std::size_t arity() const { return args.size(); }
  bool is_ground() const;

  friend bool operator==(const Atom&, const Atom&) = default;
};

// Predicate text, arity, then arguments.
std::strong_ordering compare_atoms(const Atom& a, const Atom& b);

struct AtomLess {
  bool operator()(const Atom& a, const Atom& b) const { return compare_atoms(a, b) < 0; }
};

// Variable name for an index: A..Z, then V26, V27, ...
std::string variable_name(std::uint32_t index);

std::string render_atom(const Atom& atom);

using Diseq = std::pair<std::uint32_t, std::uint32_t>;

// A definite clause `head :- body, X != Y, ...`. The body is a set. Rules
// produced by `canonical()` number head variables by first occurrence and
// pick the body-variable numbering that minimises the sorted body.
class Rule {
 public:
  Rule() = default;
  Rule(Atom head, std::vector<Atom> body, std::vector<Diseq> diseqs = {});

  const Atom& head() const { return head_; }
  const std::vector<Atom>& body() const { return body_; }
  const std::vector<Diseq>& diseqs() const { return diseqs_; }

  // Literal count: one head plus the body.
  std::size_t size() const { return 1 + body_.size(); }
  std::uint32_t num_vars() const;
  bool is_recursive() const;

  Rule canonical() const;

  // Throws ContractError when the rule is not a safe, connected definite clause.
  void validate() const;

  std::string render() const;

  friend bool operator==(const Rule&, const Rule&) = default;

 private:
  Atom head_;
  std::vector<Atom> body_;
  std::vector<Diseq> diseqs_;
};

std::strong_ordering compare_rules(const Rule& a, const Rule& b);

struct RuleLess {
  bool operator()(const Rule& a, const Rule& b) const { return compare_rules(a, b) < 0; }
};

struct RuleHash {
  std::size_t operator()(const Rule& rule) const noexcept;
};

// True when every body literal is reachable from the head through shared
// variables. Ground literals are always reachable; a head without variables
// requires the variable-bearing body literals to form one component.
bool body_connected(const Atom& head, const std::vector<Atom>& body);

}  // namespace disco::kb
