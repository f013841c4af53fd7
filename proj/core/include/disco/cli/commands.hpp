#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "disco/constraints/constraint.hpp"
#include "disco/kb/fact_store.hpp"
#include "disco/miner/miner.hpp"

namespace disco::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitNoSolution = 3,
  kExitResourceGuard = 4,
};

struct RunReport {
  int exit_code = kExitOk;
  double total_seconds = 0;
  double load_seconds = 0;
  double discovery_seconds = 0;
  double generate_seconds = 0;
  double test_seconds = 0;
  double constrain_seconds = 0;
  std::uint64_t facts_loaded = 0;
  std::uint64_t facts_written = 0;
  std::size_t properties_found = 0;
  std::size_t constraints_compiled = 0;
  std::size_t rules_enumerated = 0;
  std::size_t rules_pruned = 0;
  std::size_t programs_tested = 0;
  std::optional<std::size_t> solution_cost;
  std::string solution;  // rendered rules, one per line
  // rulespace only
  std::size_t rules_without_constraints = 0;
  std::size_t rules_with_constraints = 0;
  double reduction_percent = 0;

  std::string to_json() const;  // one line
};

// Worker count for the miner: DISCO_THREADS when set to a positive integer,
// otherwise the hardware concurrency.
unsigned worker_threads();

struct Discovery {
  std::vector<miner::PropertyAssertion> assertions;
  constraints::ConstraintSet constraints;
  double seconds = 0;
};

// Mining and compilation, shared by discover, learn and rulespace.
Discovery discover(const kb::FactStore& store, const miner::MinerConfig& config);

// Loads a BK program file and grounds its rules.
kb::FactStore load_bk(const std::filesystem::path& path);

enum class OutputFormat { kJson, kAsp };

struct DiscoverOptions {
  std::filesystem::path bk;
  std::optional<std::filesystem::path> bias;  // restricts candidates to body_pred relations
  std::optional<std::filesystem::path> output;  // stdout when unset
  OutputFormat format = OutputFormat::kJson;
};

struct LearnCommandOptions {
  std::filesystem::path bk;
  std::filesystem::path examples;
  std::filesystem::path bias;
  bool no_discovery = false;
  bool json_report = false;
};

struct GenbkOptions {
  std::int64_t alphabet = 0;
  std::int64_t max_len = 0;
  std::optional<std::filesystem::path> output;
  bool force = false;
};

struct RulespaceOptions {
  std::filesystem::path bias;
  std::filesystem::path bk;
};

// Each command reports to `out` and diagnostics to `err`; failures are
// reflected in RunReport::exit_code rather than thrown.
RunReport cmd_discover(const DiscoverOptions& options, std::ostream& out, std::ostream& err);
RunReport cmd_learn(const LearnCommandOptions& options, std::ostream& out, std::ostream& err);
RunReport cmd_genbk(const GenbkOptions& options, std::ostream& out, std::ostream& err);
RunReport cmd_rulespace(const RulespaceOptions& options, std::ostream& out, std::ostream& err);

}  // namespace disco::cli
