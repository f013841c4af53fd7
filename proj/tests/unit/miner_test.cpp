#include <gtest/gtest.h>

#include <random>
#include <set>

#include "disco/kb/error.hpp"
#include "disco/kb/parser.hpp"
#include "disco/miner/miner.hpp"
#include "oracles.hpp"
#include "random_gen.hpp"

namespace disco::miner {
namespace {

using kb::Symbol;

const char* kIntroBk = R"(
head(ijcai,i). tail(ijcai,jcai). even(2).
head(ecai,e).  tail(ecai,cai).   even(4).
head(cai,c).   tail(jcai,cai).   odd(1).
tail(ai,i).    tail(cai,ai).     odd(3).
)";

std::set<std::string> rendered(const std::vector<PropertyAssertion>& as) {
  std::set<std::string> out;
  for (const auto& a : as) out.insert(a.render());
  return out;
}

bool holds(const kb::FactStore& s, const PropertyKind& k, std::vector<Symbol> rels) {
  return check_property(s, k, rels);
}

kb::FactStore succ_store() {
  std::string text;
  for (int i = 1; i <= 8; ++i) text += "succ(" + std::to_string(i) + "," + std::to_string(i + 1) + ").\n";
  return kb::parse_facts(text);
}

TEST(PropertyKind, NamesFollowTheInterchangeVocabulary) {
  EXPECT_EQ(PropertyKind::irreflexive(2).name(), "irreflexive");
  EXPECT_EQ(PropertyKind::irreflexive(3).name(), "irreflexive_aaa");
  EXPECT_EQ(PropertyKind::asymmetric({1, 0}).name(), "asymmetric_ab_ba");
  EXPECT_EQ(PropertyKind::asymmetric({1, 2, 0}).name(), "asymmetric_abc_bca");
  EXPECT_EQ(PropertyKind::unique(2, 0b01).name(), "unique_a_b");
  EXPECT_EQ(PropertyKind::unique(2, 0b01).label(), "functional");
  EXPECT_EQ(PropertyKind::unique(2, 0b10).label(), "injective");
  EXPECT_EQ(PropertyKind::unique(3, 0b101).name(), "unique_ac_b");
  EXPECT_EQ(PropertyKind::exclusive(1).name(), "unsat_pair");
  EXPECT_EQ(PropertyKind::singleton(3).name(), "singleton");
  for (std::size_t a = 1; a <= 3; ++a) {
    for (const auto& k : PropertyKind::for_arity(a)) EXPECT_EQ(PropertyKind::parse(k.name(), a), k) << k.name();
  }
  EXPECT_THROW(PropertyKind::asymmetric({0, 1}), ContractError);
  EXPECT_THROW(PropertyKind::unique(2, 0b11), ContractError);
}

TEST(PropertyKind, KindsPerArity) {
  EXPECT_EQ(PropertyKind::for_arity(1).size(), 1u);       // singleton
  EXPECT_EQ(PropertyKind::for_arity(2).size(), 7u);       // irr, at, atri, asym, 2 unique, singleton
  EXPECT_EQ(PropertyKind::for_arity(3).size(), 13u);      // irr, 5 asym, 6 unique, singleton
  EXPECT_EQ(PropertyKind::for_arity(4).size(), 1u);
  EXPECT_EQ(PropertyKind::for_arity(3, 2).size(), 1u);
}

TEST(Miner, IntroBk) {
  const kb::FactStore s = kb::parse_facts(kIntroBk);
  const auto got = rendered(mine_properties(s, MinerConfig::all_relations(s)));
  for (const char* expected : {"irreflexive(tail)", "asymmetric_ab_ba(tail)", "antitransitive(tail)",
                               "antitriangular(tail)", "unique_a_b(tail)", "exclusive(even,odd)"}) {
    EXPECT_TRUE(got.contains(expected)) << expected;
  }
  // tail(jcai,cai) and tail(ecai,cai) share a dependent.
  EXPECT_FALSE(got.contains("unique_b_a(tail)"));
  EXPECT_EQ(got, oracle::oracle_mine(oracle::to_facts(s)));
}

TEST(Miner, SuccHasExactlyTheSixNamedProperties) {
  const kb::FactStore s = succ_store();
  const auto got = rendered(mine_properties(s, MinerConfig::all_relations(s)));
  const std::set<std::string> expected = {"irreflexive(succ)",  "unique_b_a(succ)",     "unique_a_b(succ)",
                                          "antitransitive(succ)", "antitriangular(succ)", "asymmetric_ab_ba(succ)"};
  EXPECT_EQ(got, expected);
}

TEST(Miner, EmptyInputs) {
  kb::FactStore empty;
  EXPECT_TRUE(mine_properties(empty, MinerConfig::all_relations(empty)).empty());
  const kb::FactStore s = succ_store();
  EXPECT_TRUE(mine_properties(s, MinerConfig{}).empty());
  MinerConfig missing;
  missing.candidates = {Symbol::intern("nope")};
  EXPECT_TRUE(mine_properties(s, missing).empty());
}

TEST(Miner, CandidatesAndArityFilters) {
  const kb::FactStore s = kb::parse_facts(kIntroBk);
  MinerConfig only_odd_even;
  only_odd_even.candidates = {Symbol::intern("odd"), Symbol::intern("even")};
  EXPECT_EQ(rendered(mine_properties(s, only_odd_even)), (std::set<std::string>{"exclusive(even,odd)"}));
  MinerConfig no_binary = MinerConfig::all_relations(s);
  no_binary.disabled_arities = {2};
  for (const auto& a : mine_properties(s, no_binary)) EXPECT_EQ(a.kind.arity(), 1u);
  const Symbol tail = Symbol::intern("tail");
  for (const auto& a : mine_properties(s, MinerConfig::all_relations(s, std::span(&tail, 1)))) {
    for (const auto& r : a.relations) EXPECT_NE(r.name, tail);
  }
}

TEST(Miner, CheckPropertyCounterexamples) {
  const kb::FactStore s = kb::parse_facts("p(a,b). p(b,a). q(c,c). r(x,y,z). r(y,x,z). one(k).");
  const Symbol p = Symbol::intern("p"), q = Symbol::intern("q"), r = Symbol::intern("r"), one = Symbol::intern("one");
  EXPECT_FALSE(holds(s, PropertyKind::asymmetric({1, 0}), {p}));
  EXPECT_TRUE(holds(s, PropertyKind::irreflexive(2), {p}));
  // A self-symmetric tuple is its own counter-example.
  EXPECT_FALSE(holds(s, PropertyKind::asymmetric({1, 0}), {q}));
  EXPECT_FALSE(holds(s, PropertyKind::irreflexive(2), {q}));
  EXPECT_FALSE(holds(s, PropertyKind::asymmetric({1, 0, 2}), {r}));
  EXPECT_TRUE(holds(s, PropertyKind::asymmetric({0, 2, 1}), {r}));
  EXPECT_TRUE(holds(s, PropertyKind::unique(3, 0b011), {r}));
  EXPECT_FALSE(holds(s, PropertyKind::unique(3, 0b100), {r}));
  EXPECT_TRUE(holds(s, PropertyKind::singleton(1), {one}));
  EXPECT_FALSE(holds(s, PropertyKind::singleton(2), {p}));
  EXPECT_TRUE(holds(s, PropertyKind::exclusive(2), {p, q}));
  EXPECT_THROW(holds(s, PropertyKind::exclusive(2), {p}), ContractError);
  EXPECT_THROW(holds(s, PropertyKind::irreflexive(3), {p}), ContractError);
  auto cx = find_counterexample(s, PropertyKind::asymmetric({1, 0}), std::vector<Symbol>{p});
  ASSERT_TRUE(cx);
  EXPECT_FALSE(cx->facts.empty());
  for (const auto& f : cx->facts) EXPECT_TRUE(s.contains(f));
}

TEST(MinerProperty, MatchesBruteForceOnRandomStores) {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 200; ++i) {
    const kb::FactStore s = testing_support::random_store(rng);
    const auto got = rendered(mine_properties(s, MinerConfig::all_relations(s)));
    ASSERT_EQ(got, oracle::oracle_mine(oracle::to_facts(s))) << "store " << i;
  }
}

TEST(MinerProperty, DeterministicAcrossThreadCounts) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 30; ++i) {
    const kb::FactStore s = testing_support::random_store(rng);
    MinerConfig one = MinerConfig::all_relations(s);
    MinerConfig four = one;
    four.threads = 4;
    EXPECT_EQ(mine_properties(s, one), mine_properties(s, four));
  }
}

TEST(MinerProperty, OutputIsSortedByRelationThenKind) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    const kb::FactStore s = testing_support::random_store(rng);
    const auto out = mine_properties(s, MinerConfig::all_relations(s));
    EXPECT_TRUE(std::is_sorted(out.begin(), out.end(), assertion_less));
    for (const auto& a : out) {
      for (const auto& r : a.relations) EXPECT_FALSE(s.find(r.name)->empty());
    }
  }
}

}  // namespace
}  // namespace disco::miner
