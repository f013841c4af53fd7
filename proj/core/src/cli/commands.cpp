#include "disco/cli/commands.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "disco/cli/formats.hpp"
#include "disco/cli/genbk.hpp"
#include "disco/kb/error.hpp"
#include "disco/kb/evaluator.hpp"
#include "disco/kb/parser.hpp"
#include "disco/learner/learner.hpp"

namespace disco::cli {
namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kFactGuard = 100'000'000;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

// Runs `body`, mapping input failures to exit codes with a diagnostic.
template <typename F>
RunReport guarded(std::ostream& err, F&& body) {
  const auto start = Clock::now();
  RunReport report;
  try {
    body(report);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    report.exit_code = kExitParse;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << "\n";
    report.exit_code = kExitParse;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    report.exit_code = kExitParse;
  }
  report.total_seconds = seconds_since(start);
  return report;
}

// Re-throws a parse error with the file name in front.
template <typename F>
auto parse_file(const std::filesystem::path& path, F&& parse) {
  const std::string text = kb::read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string(), e.line(), e.detail());
  }
}

miner::MinerConfig config_for(const kb::FactStore& store, const learner::Bias* bias) {
  miner::MinerConfig config;
  if (bias) {
    for (const auto& d : bias->body) {
      if (d.name != bias->head.name) config.candidates.push_back(d.name);
    }
  } else {
    config = miner::MinerConfig::all_relations(store);
  }
  config.threads = worker_threads();
  return config;
}

}  // namespace

std::string RunReport::to_json() const {
  nlohmann::json j;
  j["exit_code"] = exit_code;
  j["seconds"] = {{"total", total_seconds},         {"load", load_seconds},
                  {"discovery", discovery_seconds}, {"generate", generate_seconds},
                  {"test", test_seconds},           {"constrain", constrain_seconds}};
  j["facts_loaded"] = facts_loaded;
  j["facts_written"] = facts_written;
  j["properties_found"] = properties_found;
  j["constraints_compiled"] = constraints_compiled;
  j["rules_enumerated"] = rules_enumerated;
  j["rules_pruned"] = rules_pruned;
  j["programs_tested"] = programs_tested;
  j["solution"] = solution_cost ? nlohmann::json(solution) : nlohmann::json(nullptr);
  j["solution_cost"] = solution_cost ? nlohmann::json(*solution_cost) : nlohmann::json(nullptr);
  if (rules_without_constraints != 0) {
    j["rules_without_constraints"] = rules_without_constraints;
    j["rules_with_constraints"] = rules_with_constraints;
    j["reduction_percent"] = reduction_percent;
  }
  return j.dump();
}

unsigned worker_threads() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DISCO_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return hw;
}

Discovery discover(const kb::FactStore& store, const miner::MinerConfig& config) {
  const auto start = Clock::now();
  Discovery d;
  d.assertions = miner::mine_properties(store, config);
  d.constraints = constraints::ConstraintSet::compile(d.assertions);
  d.seconds = seconds_since(start);
  return d;
}

kb::FactStore load_bk(const std::filesystem::path& path) {
  kb::Program program = parse_file(path, [](const std::string& text) { return kb::parse_program(text); });
  if (program.rules.empty()) return std::move(program.facts);
  return kb::ground_model(program.rules, program.facts);
}

RunReport cmd_discover(const DiscoverOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&](RunReport& report) {
    auto start = Clock::now();
    const kb::FactStore store = load_bk(options.bk);
    std::optional<learner::Bias> bias;
    if (options.bias) bias = parse_file(*options.bias, [](const std::string& t) { return parse_bias(t); });
    report.load_seconds = seconds_since(start);
    report.facts_loaded = store.fact_count();

    const Discovery d = discover(store, config_for(store, bias ? &*bias : nullptr));
    report.discovery_seconds = d.seconds;
    report.properties_found = d.assertions.size();
    report.constraints_compiled = d.constraints.size();

    std::ofstream file;
    if (options.output) {
      file.open(*options.output);
      if (!file) throw std::runtime_error("cannot write " + options.output->string());
    }
    std::ostream& sink = options.output ? file : out;
    for (const auto& a : d.assertions) {
      sink << (options.format == OutputFormat::kJson ? assertion_json(a) : assertion_asp(a)) << "\n";
    }
    sink.flush();
  });
}

RunReport cmd_learn(const LearnCommandOptions& options, std::ostream& out, std::ostream& err) {
  RunReport report = guarded(err, [&](RunReport& report) {
    auto start = Clock::now();
    const kb::FactStore store = load_bk(options.bk);
    learner::Bias bias = parse_file(options.bias, [](const std::string& t) { return parse_bias(t); });
    Examples examples = parse_file(options.examples, [](const std::string& t) { return parse_examples(t); });
    report.facts_loaded = store.fact_count();
    learner::Task task = learner::Task::create(std::move(examples.pos), std::move(examples.neg), store, {}, bias);
    report.load_seconds = seconds_since(start);

    constraints::ConstraintSet discovered;
    if (!options.no_discovery) {
      const Discovery d = discover(task.bk(), config_for(task.bk(), &bias));
      report.discovery_seconds = d.seconds;
      report.properties_found = d.assertions.size();
      report.constraints_compiled = d.constraints.size();
      discovered = d.constraints;
    }

    const learner::LearnResult result = learner::learn(task, discovered);
    report.generate_seconds = result.stats.generate_seconds;
    report.test_seconds = result.stats.test_seconds;
    report.constrain_seconds = result.stats.constrain_seconds;
    report.rules_enumerated = result.stats.rules_enumerated;
    report.rules_pruned = result.stats.rules_pruned_by_discovery;
    report.programs_tested = result.stats.programs_tested;
    if (result.hypothesis) {
      report.solution = result.hypothesis->render();
      report.solution_cost = result.hypothesis->cost();
      out << report.solution;
    } else {
      out << "no solution\n";
      report.exit_code = kExitNoSolution;
    }
  });
  if (options.json_report) {
    out << report.to_json() << "\n";
  } else if (report.exit_code == kExitOk || report.exit_code == kExitNoSolution) {
    err << "% programs tested: " << report.programs_tested << ", discovery " << std::fixed << std::setprecision(3)
        << report.discovery_seconds << "s, learning "
        << report.generate_seconds + report.test_seconds + report.constrain_seconds << "s\n";
  }
  return report;
}

RunReport cmd_genbk(const GenbkOptions& options, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  RunReport report;
  if (options.alphabet < 1 || options.max_len < 1) {
    err << "error: alphabet size and maximum length must be at least 1\n";
    report.exit_code = kExitUsage;
    return report;
  }
  const std::uint64_t expected = genbk_fact_count(options.alphabet, options.max_len);
  if (expected > kFactGuard && !options.force) {
    err << "error: " << expected << " facts exceeds the limit of " << kFactGuard << "; pass --force to generate anyway\n";
    report.exit_code = kExitResourceGuard;
    return report;
  }
  try {
    std::ofstream file;
    if (options.output) {
      file.open(*options.output, std::ios::binary);
      if (!file) throw std::runtime_error("cannot write " + options.output->string());
    }
    std::ostream& sink = options.output ? file : out;
    report.facts_written = write_genbk(static_cast<std::uint32_t>(options.alphabet),
                                       static_cast<std::uint32_t>(options.max_len), sink);
    sink.flush();
    if (!sink) throw std::runtime_error("write failed");
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    report.exit_code = kExitParse;
  }
  report.total_seconds = seconds_since(start);
  return report;
}

RunReport cmd_rulespace(const RulespaceOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&](RunReport& report) {
    const kb::FactStore store = load_bk(options.bk);
    const learner::Bias bias = parse_file(options.bias, [](const std::string& t) { return parse_bias(t); });
    report.facts_loaded = store.fact_count();
    const Discovery d = discover(store, config_for(store, &bias));
    report.discovery_seconds = d.seconds;
    report.properties_found = d.assertions.size();
    report.constraints_compiled = d.constraints.size();

    const constraints::ConstraintSet none;
    for (std::size_t size = 2; size <= bias.max_body + 1; ++size) {
      report.rules_without_constraints += learner::enumerate_rules(bias, none, size).size();
      report.rules_with_constraints += learner::enumerate_rules(bias, d.constraints, size).size();
    }
    const auto without = report.rules_without_constraints;
    report.reduction_percent =
        without == 0 ? 0.0 : 100.0 * static_cast<double>(without - report.rules_with_constraints) / static_cast<double>(without);
    out << "rules without constraints: " << without << "\n"
        << "rules with constraints: " << report.rules_with_constraints << "\n"
        << "reduction: " << std::fixed << std::setprecision(1) << report.reduction_percent << "%\n";
  });
}

}  // namespace disco::cli
