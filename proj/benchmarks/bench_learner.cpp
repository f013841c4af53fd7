#include <benchmark/benchmark.h>

#include <filesystem>

#include "disco/cli/formats.hpp"
#include "disco/kb/parser.hpp"
#include "disco/learner/learner.hpp"
#include "disco/miner/miner.hpp"

namespace {

using namespace disco;
namespace fs = std::filesystem;

learner::Task load_task(const std::string& name) {
  const fs::path dir = fs::path(DISCO_BENCH_DATA_DIR) / "tasks" / name;
  auto program = kb::parse_program(kb::read_file(dir / "bk.dl"));
  auto examples = cli::parse_examples(kb::read_file(dir / "examples.dl"));
  return learner::Task::create(std::move(examples.pos), std::move(examples.neg), std::move(program.facts),
                               program.rules, cli::parse_bias(kb::read_file(dir / "bias.dl")));
}

constraints::ConstraintSet mined(const learner::Task& task) {
  miner::MinerConfig config;
  config.candidates = task.bias().body_symbols();
  return constraints::ConstraintSet::compile(miner::mine_properties(task.bk(), config));
}

void BM_EnumerateSucc(benchmark::State& state) {
  const auto bias = cli::parse_bias(kb::read_file(fs::path(DISCO_BENCH_DATA_DIR) / "rulespace/succ_bias.dl"));
  const auto store = kb::parse_facts(kb::read_file(fs::path(DISCO_BENCH_DATA_DIR) / "rulespace/succ_bk.dl"));
  miner::MinerConfig config;
  config.candidates = bias.body_symbols();
  const auto c = state.range(0) ? constraints::ConstraintSet::compile(miner::mine_properties(store, config))
                                : constraints::ConstraintSet{};
  for (auto _ : state) {
    std::size_t n = 0;
    for (std::size_t size = 2; size <= bias.max_body + 1; ++size) n += learner::enumerate_rules(bias, c, size).size();
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_EnumerateSucc)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

// Learning with and without discovered constraints.
void BM_Learn(benchmark::State& state, const std::string& name) {
  const auto task = load_task(name);
  const auto c = state.range(0) ? mined(task) : constraints::ConstraintSet{};
  std::size_t tested = 0;
  for (auto _ : state) {
    auto r = learner::learn(task, c);
    tested = r.stats.programs_tested;
    benchmark::DoNotOptimize(r);
  }
  state.counters["programs_tested"] = static_cast<double>(tested);
}
BENCHMARK_CAPTURE(BM_Learn, trains, std::string("trains"))->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Learn, reachability, std::string("reachability"))->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Learn, zendo, std::string("zendo"))->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace
