#include "disco/kb/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "disco/kb/error.hpp"
#include "disco/kb/lexer.hpp"

namespace disco::kb {
namespace {

Symbol predicate_symbol(const Token& t) {
  if (!std::islower(static_cast<unsigned char>(t.text.front()))) {
    throw ParseError(t.line, "predicate name must start with a lowercase letter: '" + std::string(t.text) + "'");
  }
  return Symbol::intern(t.text);
}

// Ground atom: name [ '(' const {',' const} ')' ].
void read_ground_atom(Lexer& lexer, Symbol& predicate, std::vector<Symbol>& args) {
  predicate = predicate_symbol(lexer.expect(TokenKind::kName, "predicate name"));
  args.clear();
  if (!lexer.accept(TokenKind::kLParen)) return;
  do {
    const Token& t = lexer.peek();
    if (t.kind == TokenKind::kVariable) {
      throw ParseError(t.line, "uppercase-leading token '" + std::string(t.text) + "' in a fact position");
    }
    args.push_back(Symbol::intern(lexer.expect(TokenKind::kName, "constant").text));
  } while (lexer.accept(TokenKind::kComma));
  lexer.expect(TokenKind::kRParen, "')'");
}

class ClauseReader {
 public:
  explicit ClauseReader(Lexer& lexer) : lexer_(lexer) {}

  Atom atom() {
    Atom a{predicate_symbol(lexer_.expect(TokenKind::kName, "predicate name")), {}};
    if (!lexer_.accept(TokenKind::kLParen)) return a;
    do {
      a.args.push_back(term());
    } while (lexer_.accept(TokenKind::kComma));
    lexer_.expect(TokenKind::kRParen, "')'");
    return a;
  }

  Term term() {
    Token t = lexer_.next();
    if (t.kind == TokenKind::kVariable) return Term::variable(variable(t.text));
    if (t.kind == TokenKind::kName) return Term::constant(Symbol::intern(t.text));
    throw ParseError(t.line, "expected a term, found '" + std::string(t.text) + "'");
  }

  std::uint32_t variable(std::string_view name) {
    auto [it, inserted] = vars_.emplace(std::string(name), static_cast<std::uint32_t>(vars_.size()));
    return it->second;
  }

  void reset() { vars_.clear(); }

 private:
  Lexer& lexer_;
  std::unordered_map<std::string, std::uint32_t> vars_;
};

class ArityTable {
 public:
  void check(const Atom& a, std::size_t line) {
    auto [it, inserted] = arities_.emplace(a.predicate, a.arity());
    if (!inserted && it->second != a.arity()) {
      throw ParseError(line, "arity mismatch for " + std::string(a.predicate.text()) + ": previously " +
                                 std::to_string(it->second) + ", now " + std::to_string(a.arity()));
    }
  }

 private:
  std::unordered_map<Symbol, std::size_t> arities_;
};

struct Clause {
  Atom head;
  std::vector<Atom> body;
  std::vector<Diseq> diseqs;
  bool is_rule = false;
  std::size_t line = 0;
};

// Reads one clause; returns false at end of input.
bool read_clause(Lexer& lexer, ClauseReader& reader, Clause& out) {
  if (lexer.peek().kind == TokenKind::kEnd) return false;
  reader.reset();
  out = Clause{};
  out.line = lexer.peek().line;
  out.head = reader.atom();
  if (lexer.accept(TokenKind::kImplies)) {
    out.is_rule = true;
    do {
      if (lexer.peek().kind == TokenKind::kVariable) {
        const std::uint32_t x = reader.variable(lexer.next().text);
        lexer.expect(TokenKind::kNotEqual, "'!='");
        const std::uint32_t y = reader.variable(lexer.expect(TokenKind::kVariable, "variable").text);
        out.diseqs.emplace_back(x, y);
      } else {
        out.body.push_back(reader.atom());
      }
    } while (lexer.accept(TokenKind::kComma));
  }
  lexer.expect(TokenKind::kDot, "'.'");
  return true;
}

Rule to_rule(const Clause& c) {
  Rule rule(c.head, c.body, c.diseqs);
  try {
    rule.validate();
  } catch (const ContractError& e) {
    throw ParseError(c.line, e.what());
  }
  return rule.canonical();
}

}  // namespace

FactStore parse_facts(std::string_view text) {
  FactStore store;
  Lexer lexer(text);
  Symbol predicate;
  std::vector<Symbol> args;
  while (lexer.peek().kind != TokenKind::kEnd) {
    const std::size_t line = lexer.peek().line;
    read_ground_atom(lexer, predicate, args);
    if (lexer.peek().kind == TokenKind::kImplies) throw ParseError(line, "rules are not allowed in a facts file");
    lexer.expect(TokenKind::kDot, "'.'");
    try {
      store.add(predicate, args);
    } catch (const ContractError& e) {
      throw ParseError(line, e.what());
    }
  }
  return store;
}

Program parse_program(std::string_view text) {
  Program program;
  Lexer lexer(text);
  ClauseReader reader(lexer);
  ArityTable arities;
  Clause clause;
  while (read_clause(lexer, reader, clause)) {
    arities.check(clause.head, clause.line);
    for (const auto& a : clause.body) arities.check(a, clause.line);
    if (!clause.is_rule) {
      if (!clause.head.is_ground()) throw ParseError(clause.line, "fact contains a variable: " + render_atom(clause.head));
      program.facts.add(clause.head);
      continue;
    }
    program.rules.push_back(to_rule(clause));
  }
  std::sort(program.rules.begin(), program.rules.end(), RuleLess{});
  program.rules.erase(std::unique(program.rules.begin(), program.rules.end()), program.rules.end());
  return program;
}

Rule parse_rule(std::string_view text) {
  Lexer lexer(text);
  ClauseReader reader(lexer);
  Clause clause;
  if (!read_clause(lexer, reader, clause) || !clause.is_rule) throw ParseError(clause.line, "expected a rule");
  if (lexer.peek().kind != TokenKind::kEnd) throw ParseError(lexer.peek().line, "trailing input after rule");
  return to_rule(clause);
}

Atom parse_fact_atom(std::string_view text) {
  Lexer lexer(text);
  Symbol predicate;
  std::vector<Symbol> args;
  read_ground_atom(lexer, predicate, args);
  lexer.accept(TokenKind::kDot);
  if (lexer.peek().kind != TokenKind::kEnd) throw ParseError(lexer.peek().line, "trailing input after fact");
  Atom a{predicate, {}};
  for (Symbol s : args) a.args.push_back(Term::constant(s));
  return a;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace disco::kb
