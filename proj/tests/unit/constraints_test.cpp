#include <gtest/gtest.h>

#include <random>

#include "disco/constraints/constraint.hpp"
#include "disco/kb/evaluator.hpp"
#include "disco/kb/parser.hpp"
#include "disco/learner/learner.hpp"
#include "disco/miner/miner.hpp"
#include "oracles.hpp"
#include "random_gen.hpp"

namespace disco::constraints {
namespace {

using kb::Symbol;
using miner::PropertyAssertion;
using miner::PropertyKind;

const char* kIntroBk = R"(
head(ijcai,i). tail(ijcai,jcai). even(2).
head(ecai,e).  tail(ecai,cai).   even(4).
head(cai,c).   tail(jcai,cai).   odd(1).
tail(ai,i).    tail(cai,ai).     odd(3).
)";

PropertyAssertion assertion(PropertyKind kind, std::vector<std::string> names) {
  PropertyAssertion a{std::move(kind), {}};
  for (const auto& n : names) a.relations.push_back({Symbol::intern(n), a.kind.arity()});
  return a;
}

std::vector<PropertyAssertion> mine_all(const kb::FactStore& s) {
  return miner::mine_properties(s, miner::MinerConfig::all_relations(s));
}

TEST(Compile, PatternShapes) {
  auto asym = compile_constraint(assertion(PropertyKind::asymmetric({1, 0}), {"mother"}));
  EXPECT_EQ(asym.kind, ConstraintKind::kPatternMatch);
  EXPECT_EQ(asym.render(), ":- b_lit(R,mother,(A,B)), b_lit(R,mother,(B,A)).");

  auto excl = compile_constraint(assertion(PropertyKind::exclusive(1), {"even", "odd"}));
  EXPECT_EQ(excl.render(), ":- b_lit(R,even,(A,)), b_lit(R,odd,(A,)).");

  auto irr = compile_constraint(assertion(PropertyKind::irreflexive(3), {"r"}));
  ASSERT_EQ(irr.templates.size(), 1u);
  EXPECT_EQ(irr.templates[0].slots, (std::vector<std::uint32_t>{0, 0, 0}));

  auto at = compile_constraint(assertion(PropertyKind::antitransitive(), {"e"}));
  EXPECT_EQ(at.render(), ":- b_lit(R,e,(A,B)), b_lit(R,e,(B,C)), b_lit(R,e,(A,C)).");
  auto atri = compile_constraint(assertion(PropertyKind::antitriangular(), {"e"}));
  EXPECT_EQ(atri.render(), ":- b_lit(R,e,(A,B)), b_lit(R,e,(B,C)), b_lit(R,e,(C,A)).");
}

TEST(Compile, FunctionalIsCountBoundWithTwoLiteralWitness) {
  auto fn = compile_constraint(assertion(PropertyKind::unique(2, 0b01), {"tail"}));
  EXPECT_EQ(fn.kind, ConstraintKind::kCountBound);
  EXPECT_EQ(fn.predicate, Symbol::intern("tail"));
  EXPECT_EQ(fn.group_positions, (std::vector<std::size_t>{0}));
  EXPECT_EQ(fn.counted_positions, (std::vector<std::size_t>{1}));
  auto forms = witness_forms(fn);
  ASSERT_EQ(forms.size(), 1u);
  // tail(A,B), tail(A,C), B != C
  ASSERT_EQ(forms[0].body.size(), 2u);
  EXPECT_EQ(kb::render_atom(forms[0].body[0]), "tail(A,B)");
  EXPECT_EQ(kb::render_atom(forms[0].body[1]), "tail(A,C)");
  EXPECT_EQ(forms[0].diseqs, (std::vector<kb::Diseq>{{1, 2}}));
  EXPECT_EQ(fn.render(), ":- b_lit(R,tail,(A,_)), #count{B : b_lit(R,tail,(A,B))} > 1.");

  auto ac_b = compile_constraint(assertion(PropertyKind::unique(3, 0b101), {"r"}));
  EXPECT_EQ(witness_forms(ac_b).size(), 1u);
  auto a_bc = compile_constraint(assertion(PropertyKind::unique(3, 0b001), {"r"}));
  EXPECT_EQ(witness_forms(a_bc).size(), 2u);
  auto single = compile_constraint(assertion(PropertyKind::singleton(2), {"s"}));
  EXPECT_EQ(witness_forms(single).size(), 2u);
}

TEST(Violates, WorkedExamples) {
  auto asym = compile_constraint(assertion(PropertyKind::asymmetric({1, 0}), {"mother"}));
  EXPECT_TRUE(violates(kb::parse_rule("h(A) :- sister(A,B), sister(B,C), mother(C,D), mother(D,C)."), asym));
  EXPECT_FALSE(violates(kb::parse_rule("h(A) :- mother(A,B), sister(B,A)."), asym));
  auto excl = compile_constraint(assertion(PropertyKind::exclusive(1), {"even", "odd"}));
  EXPECT_TRUE(violates(kb::parse_rule("h(A) :- head(A,B), odd(B), even(B)."), excl));
  EXPECT_FALSE(violates(kb::parse_rule("h(A) :- head(A,B), odd(B), even(A)."), excl));
  auto irr = compile_constraint(assertion(PropertyKind::irreflexive(2), {"tail"}));
  EXPECT_TRUE(violates(kb::parse_rule("h(A) :- tail(A,A)."), irr));
  EXPECT_FALSE(violates(kb::parse_rule("h(A) :- tail(A,B)."), irr));
}

TEST(Violates, HomomorphicMatching) {
  // One literal p(A,A) serves both templates of the asymmetric pattern.
  auto asym = compile_constraint(assertion(PropertyKind::asymmetric({1, 0}), {"p"}));
  EXPECT_TRUE(violates(kb::parse_rule("h(A) :- p(A,A)."), asym));
  auto at = compile_constraint(assertion(PropertyKind::antitransitive(), {"p"}));
  EXPECT_TRUE(violates(kb::parse_rule("h(A) :- p(A,A)."), at));
  EXPECT_TRUE(violates(kb::parse_rule("h(A) :- p(A,B), p(B,B)."), at));
}

TEST(Violates, CountBound) {
  auto fn = compile_constraint(assertion(PropertyKind::unique(2, 0b01), {"tail"}));
  EXPECT_TRUE(violates(kb::parse_rule("h(A) :- tail(A,B), tail(A,C)."), fn));
  EXPECT_FALSE(violates(kb::parse_rule("h(A) :- tail(A,B), tail(B,C)."), fn));
  auto found = find_violation(kb::parse_rule("h(A) :- tail(A,B), tail(A,C)."), fn);
  ASSERT_TRUE(found);
  EXPECT_EQ(found->literals.size(), 2u);
  EXPECT_EQ(found->diseqs.size(), 1u);
  auto single = compile_constraint(assertion(PropertyKind::singleton(1), {"one"}));
  EXPECT_TRUE(violates(kb::parse_rule("h(A) :- one(A), one(B), q(A,B)."), single));
  EXPECT_FALSE(violates(kb::parse_rule("h(A) :- one(A), q(A,B)."), single));
}

TEST(Violates, InvariantUnderRenamingAndReordering) {
  auto fn = compile_constraint(assertion(PropertyKind::unique(2, 0b01), {"tail"}));
  auto asym = compile_constraint(assertion(PropertyKind::asymmetric({1, 0}), {"m"}));
  const kb::Rule a(kb::parse_rule("h(A) :- tail(A,B), tail(A,C), m(C,B), m(B,C)."));
  // Same rule built directly with permuted body and renamed variables.
  auto atom = [](const char* p, std::uint32_t x, std::uint32_t y) {
    return kb::Atom{Symbol::intern(p), {kb::Term::variable(x), kb::Term::variable(y)}};
  };
  const kb::Rule b(kb::Atom{Symbol::intern("h"), {kb::Term::variable(5)}},
                   {atom("m", 7, 9), atom("tail", 5, 9), atom("m", 9, 7), atom("tail", 5, 7)});
  for (const auto* c : {&fn, &asym}) {
    EXPECT_EQ(violates(a, *c), violates(b, *c));
    EXPECT_EQ(violates(a, *c), violates(b.canonical(), *c));
  }
}

TEST(VerifyUnsat, Examples) {
  const kb::FactStore s = kb::parse_facts(kIntroBk);
  EXPECT_TRUE(verify_unsat(compile_constraint(assertion(PropertyKind::asymmetric({1, 0}), {"tail"})), s));
  EXPECT_TRUE(verify_unsat(compile_constraint(assertion(PropertyKind::exclusive(1), {"even", "odd"})), s));
  const kb::FactStore planted = kb::parse_facts("head(a,b). head(b,a).");
  EXPECT_FALSE(verify_unsat(compile_constraint(assertion(PropertyKind::asymmetric({1, 0}), {"head"})), planted));
  const kb::FactStore fan = kb::parse_facts("tail(a,b). tail(a,c).");
  EXPECT_FALSE(verify_unsat(compile_constraint(assertion(PropertyKind::unique(2, 0b01), {"tail"})), fan));
}

TEST(ConstraintSet, LookupByPredicate) {
  const kb::FactStore s = kb::parse_facts(kIntroBk);
  const auto set = ConstraintSet::compile(mine_all(s));
  EXPECT_EQ(set.size(), mine_all(s).size());
  for (const char* p : {"tail", "head", "odd", "even"}) {
    const Symbol sym = Symbol::intern(p);
    std::size_t expected = 0;
    for (const auto& c : set.all()) {
      const auto preds = c.predicates();
      expected += std::find(preds.begin(), preds.end(), sym) != preds.end();
    }
    EXPECT_EQ(set.mentioning(sym).size(), expected) << p;
  }
  EXPECT_TRUE(set.mentioning(Symbol::intern("absent_pred")).empty());
  EXPECT_TRUE(set.prunes(kb::parse_rule("h(A) :- odd(A), even(A).")));
  EXPECT_FALSE(set.prunes(kb::parse_rule("h(A) :- odd(A).")));
}

TEST(ConstraintProperty, CompiledConstraintsAreUnsatOnRandomStores) {
  std::mt19937_64 rng(42);
  std::size_t checked = 0;
  for (int i = 0; i < 200; ++i) {
    const kb::FactStore s = testing_support::random_store(rng);
    for (const auto& a : mine_all(s)) {
      ASSERT_TRUE(verify_unsat(compile_constraint(a), s)) << a.render() << " on store " << i;
      ++checked;
    }
  }
  EXPECT_GT(checked, 500u);
}

TEST(ConstraintProperty, CompilationIsDeterministic) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    const kb::FactStore s = testing_support::random_store(rng);
    const auto a = ConstraintSet::compile(mine_all(s));
    const auto b = ConstraintSet::compile(mine_all(kb::FactStore(s)));
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a.all()[k].render(), b.all()[k].render());
  }
}

// Rules over the relations of a random store, to exercise violations.
std::vector<kb::Rule> rules_over(const kb::FactStore& s, std::size_t max_body) {
  learner::Bias bias;
  bias.head = {Symbol::intern("target_h"), 1};
  for (const auto& info : s.catalog()) bias.body.push_back({info.name, info.arity});
  bias.max_vars = 3;
  bias.max_body = max_body;
  std::vector<kb::Rule> out;
  for (std::size_t size = 2; size <= max_body + 1; ++size) {
    for (auto& r : learner::enumerate_rules(bias, {}, size)) out.push_back(std::move(r));
  }
  return out;
}

TEST(ConstraintProperty, ViolatedRulesHaveUnsatisfiableBodies) {
  std::mt19937_64 rng(321);
  std::size_t violated = 0;
  for (int i = 0; i < 40; ++i) {
    testing_support::StoreShape shape;
    shape.max_relations = 3;
    shape.max_facts = 80;
    const kb::FactStore s = testing_support::random_store(rng, shape);
    const auto mined = mine_all(s);
    for (const auto& rule : rules_over(s, 2)) {
      for (const auto& a : mined) {
        const auto c = compile_constraint(a);
        const auto v = find_violation(rule, c);
        if (!v) continue;
        ++violated;
        std::vector<kb::Atom> matched;
        for (auto idx : v->literals) matched.push_back(rule.body()[idx]);
        EXPECT_FALSE(kb::sat_body(matched, v->diseqs, s)) << rule.render() << " / " << a.render();
        if (v->diseqs.empty()) EXPECT_FALSE(kb::sat_body(rule.body(), {}, s)) << rule.render();
      }
    }
  }
  EXPECT_GT(violated, 100u);
}

TEST(ConstraintProperty, ViolatesMatchesBruteForce) {
  std::mt19937_64 rng(654);
  for (int i = 0; i < 30; ++i) {
    testing_support::StoreShape shape;
    shape.max_relations = 3;
    shape.max_facts = 60;
    const kb::FactStore s = testing_support::random_store(rng, shape);
    const auto mined = mine_all(s);
    std::map<std::string, std::size_t> arity;
    for (const auto& info : s.catalog()) arity[std::string(info.name.text())] = info.arity;
    for (const auto& rule : rules_over(s, 2)) {
      const auto orule = oracle::to_rule(rule);
      for (const auto& a : mined) {
        ASSERT_EQ(violates(rule, compile_constraint(a)), oracle::oracle_violates(orule, a.render(), arity))
            << rule.render() << " / " << a.render();
      }
    }
  }
}

}  // namespace
}  // namespace disco::constraints
