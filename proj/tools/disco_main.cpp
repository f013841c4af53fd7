#include <CLI11.hpp>
#include <iostream>

#include "disco/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace disco::cli;
  CLI::App app{"Constraint discovery and optimal rule learning over Datalog background knowledge"};
  app.require_subcommand(1);

  DiscoverOptions discover;
  std::string format = "json";
  std::string discover_bias;
  std::string discover_out;
  auto* dc = app.add_subcommand("discover", "Mine relational properties of the BK");
  dc->add_option("bk", discover.bk, "BK facts/program file")->required()->check(CLI::ExistingFile);
  dc->add_option("--bias", discover_bias, "Restrict candidates to this bias's body predicates");
  dc->add_option("-o,--output", discover_out, "Output file (default stdout)");
  dc->add_option("--format", format, "json or asp")->check(CLI::IsMember({"json", "asp"}));

  LearnCommandOptions learn;
  auto* lc = app.add_subcommand("learn", "Learn an optimal hypothesis");
  lc->add_option("bk", learn.bk, "BK facts/program file")->required()->check(CLI::ExistingFile);
  lc->add_option("examples", learn.examples, "Examples file")->required()->check(CLI::ExistingFile);
  lc->add_option("bias", learn.bias, "Bias file")->required()->check(CLI::ExistingFile);
  lc->add_flag("--no-discovery", learn.no_discovery, "Skip constraint discovery");
  lc->add_flag("--json-report", learn.json_report, "Print a JSON report line after the solution");

  GenbkOptions genbk;
  std::string genbk_out;
  auto* gc = app.add_subcommand("genbk", "Generate synthetic string BK");
  gc->add_option("-n,--alphabet", genbk.alphabet, "Alphabet size")->required();
  gc->add_option("-L,--max-length", genbk.max_len, "Maximum string length")->required();
  gc->add_option("-o,--output", genbk_out, "Output file (default stdout)");
  gc->add_flag("--force", genbk.force, "Allow more than 1e8 facts");

  RulespaceOptions rulespace;
  auto* rc = app.add_subcommand("rulespace", "Count rules with and without discovered constraints");
  rc->add_option("bias", rulespace.bias, "Bias file")->required()->check(CLI::ExistingFile);
  rc->add_option("bk", rulespace.bk, "BK facts/program file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  RunReport report;
  if (*dc) {
    if (!discover_bias.empty()) discover.bias = discover_bias;
    if (!discover_out.empty()) discover.output = discover_out;
    discover.format = format == "asp" ? OutputFormat::kAsp : OutputFormat::kJson;
    report = cmd_discover(discover, std::cout, std::cerr);
  } else if (*lc) {
    report = cmd_learn(learn, std::cout, std::cerr);
  } else if (*gc) {
    if (!genbk_out.empty()) genbk.output = genbk_out;
    report = cmd_genbk(genbk, std::cout, std::cerr);
    if (report.exit_code == kExitOk) std::cerr << "% " << report.facts_written << " facts\n";
  } else if (*rc) {
    report = cmd_rulespace(rulespace, std::cout, std::cerr);
  }
  return report.exit_code;
}
