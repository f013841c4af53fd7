#include "disco/cli/formats.hpp"

#include <algorithm>
#include <charconv>
#include <nlohmann/json.hpp>
#include <string>

#include "disco/kb/error.hpp"
#include "disco/kb/lexer.hpp"

namespace disco::cli {
namespace {

using kb::Lexer;
using kb::Token;
using kb::TokenKind;

std::size_t read_number(Lexer& lexer) {
  const Token t = lexer.expect(TokenKind::kName, "number");
  std::size_t value = 0;
  auto [end, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
  if (ec != std::errc{} || end != t.text.data() + t.text.size()) {
    throw ParseError(t.line, "expected a number, found '" + std::string(t.text) + "'");
  }
  return value;
}

learner::PredicateDecl read_decl(Lexer& lexer) {
  lexer.expect(TokenKind::kLParen, "'('");
  const Token name = lexer.expect(TokenKind::kName, "predicate name");
  lexer.expect(TokenKind::kComma, "','");
  const std::size_t arity = read_number(lexer);
  lexer.expect(TokenKind::kRParen, "')'");
  return {kb::Symbol::intern(name.text), arity};
}

std::size_t read_bound(Lexer& lexer) {
  lexer.expect(TokenKind::kLParen, "'('");
  const Token at = lexer.peek();
  const std::size_t n = read_number(lexer);
  lexer.expect(TokenKind::kRParen, "')'");
  if (n == 0) throw ParseError(at.line, "bounds must be at least 1");
  return n;
}

kb::Atom read_ground(Lexer& lexer) {
  const Token name = lexer.expect(TokenKind::kName, "predicate name");
  kb::Atom atom{kb::Symbol::intern(name.text), {}};
  if (!lexer.accept(TokenKind::kLParen)) return atom;
  do {
    const Token& t = lexer.peek();
    if (t.kind == TokenKind::kVariable) {
      throw ParseError(t.line, "uppercase-leading token '" + std::string(t.text) + "' in a fact position");
    }
    atom.args.push_back(kb::Term::constant(kb::Symbol::intern(lexer.expect(TokenKind::kName, "constant").text)));
  } while (lexer.accept(TokenKind::kComma));
  lexer.expect(TokenKind::kRParen, "')'");
  return atom;
}

}  // namespace

learner::Bias parse_bias(std::string_view text) {
  Lexer lexer(text);
  learner::Bias bias;
  bool have_head = false;
  while (lexer.peek().kind != TokenKind::kEnd) {
    const Token d = lexer.expect(TokenKind::kName, "directive");
    if (d.text == "head_pred") {
      if (have_head) throw ParseError(d.line, "head_pred given twice");
      bias.head = read_decl(lexer);
      have_head = true;
    } else if (d.text == "body_pred") {
      auto decl = read_decl(lexer);
      for (const auto& b : bias.body) {
        if (b.name == decl.name && b.arity != decl.arity) {
          throw ParseError(d.line, "body_pred " + std::string(decl.name.text()) + " declared with two arities");
        }
      }
      if (std::find(bias.body.begin(), bias.body.end(), decl) == bias.body.end()) bias.body.push_back(decl);
    } else if (d.text == "max_vars") {
      bias.max_vars = read_bound(lexer);
    } else if (d.text == "max_body") {
      bias.max_body = read_bound(lexer);
    } else if (d.text == "max_rules") {
      bias.max_rules = read_bound(lexer);
    } else if (d.text == "max_literals") {
      bias.max_literals = read_bound(lexer);
    } else if (d.text == "enable_recursion") {
      bias.allow_recursion = true;
    } else {
      throw ParseError(d.line, "unknown bias directive '" + std::string(d.text) + "'");
    }
    lexer.expect(TokenKind::kDot, "'.'");
  }
  if (!have_head) throw ParseError(lexer.peek().line, "bias has no head_pred directive");
  try {
    bias.validate();
  } catch (const ContractError& e) {
    throw ParseError(lexer.peek().line, e.what());
  }
  return bias;
}

Examples parse_examples(std::string_view text) {
  Lexer lexer(text);
  Examples out;
  while (lexer.peek().kind != TokenKind::kEnd) {
    const Token tag = lexer.expect(TokenKind::kName, "pos or neg");
    if (tag.text != "pos" && tag.text != "neg") {
      throw ParseError(tag.line, "expected pos(...) or neg(...), found '" + std::string(tag.text) + "'");
    }
    lexer.expect(TokenKind::kLParen, "'('");
    kb::Atom atom = read_ground(lexer);
    lexer.expect(TokenKind::kRParen, "')'");
    lexer.expect(TokenKind::kDot, "'.'");
    (tag.text == "pos" ? out.pos : out.neg).push_back(std::move(atom));
  }
  return out;
}

std::string assertion_json(const miner::PropertyAssertion& assertion) {
  nlohmann::ordered_json j;
  j["property"] = std::string(miner::family_name(assertion.kind.family()));
  auto& rels = j["relations"] = nlohmann::ordered_json::array();
  for (const auto& r : assertion.relations) rels.push_back(std::string(r.name.text()));
  j["arity"] = assertion.kind.arity();
  j["detail"] = assertion.kind.name();
  return j.dump();
}

std::string assertion_asp(const miner::PropertyAssertion& assertion) {
  std::vector<std::string> names;
  for (const auto& r : assertion.relations) names.emplace_back(r.name.text());
  if (assertion.kind.family() == miner::PropertyFamily::kExclusive) {
    std::sort(names.begin(), names.end(), std::greater<>{});
  }
  std::string out = "prop(" + assertion.kind.name();
  for (const auto& n : names) out += "," + n;
  return out + ").";
}

}  // namespace disco::cli
