#include <benchmark/benchmark.h>

#include <sstream>

#include "disco/cli/genbk.hpp"
#include "disco/constraints/constraint.hpp"
#include "disco/kb/evaluator.hpp"
#include "disco/kb/parser.hpp"
#include "disco/miner/miner.hpp"

namespace {

using namespace disco;

kb::FactStore genbk_store(std::uint32_t n, std::uint32_t len) {
  std::ostringstream out;
  cli::write_genbk(n, len, out);
  return kb::parse_facts(out.str());
}

// Property mining over synthetic string BK of growing alphabet size.
void BM_MineGenbk(benchmark::State& state) {
  const auto store = genbk_store(static_cast<std::uint32_t>(state.range(0)), 3);
  const auto config = miner::MinerConfig::all_relations(store);
  for (auto _ : state) benchmark::DoNotOptimize(miner::mine_properties(store, config));
  state.counters["facts"] = static_cast<double>(store.fact_count());
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * store.fact_count()));
}
BENCHMARK(BM_MineGenbk)->Arg(8)->Arg(16)->Arg(24)->Arg(33)->Unit(benchmark::kMillisecond);

void BM_ParseGenbk(benchmark::State& state) {
  std::ostringstream out;
  cli::write_genbk(static_cast<std::uint32_t>(state.range(0)), 3, out);
  const std::string text = out.str();
  for (auto _ : state) benchmark::DoNotOptimize(kb::parse_facts(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseGenbk)->Arg(16)->Arg(33)->Unit(benchmark::kMillisecond);

// A satisfiable two-literal body and an unsatisfiable one over genbk.
void BM_SatBody(benchmark::State& state) {
  const auto store = genbk_store(16, 3);
  const auto rule = kb::parse_rule(state.range(0) ? "f(A) :- tail(A,B), tail(B,C)." : "f(A) :- tail(A,B), tail(B,A).");
  for (auto _ : state) benchmark::DoNotOptimize(kb::sat_body(rule.body(), {}, store));
}
BENCHMARK(BM_SatBody)->Arg(1)->Arg(0)->Unit(benchmark::kMicrosecond);

void BM_VerifyUnsat(benchmark::State& state) {
  const auto store = genbk_store(16, 3);
  const auto constraints =
      constraints::ConstraintSet::compile(miner::mine_properties(store, miner::MinerConfig::all_relations(store)));
  for (auto _ : state) {
    for (const auto& c : constraints.all()) benchmark::DoNotOptimize(constraints::verify_unsat(c, store));
  }
  state.counters["constraints"] = static_cast<double>(constraints.size());
}
BENCHMARK(BM_VerifyUnsat)->Unit(benchmark::kMillisecond);

}  // namespace
