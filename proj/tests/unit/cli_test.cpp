#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "desk_tasks.hpp"
#include "disco/cli/commands.hpp"
#include "disco/cli/formats.hpp"
#include "disco/cli/genbk.hpp"
#include "disco/kb/error.hpp"
#include "disco/kb/parser.hpp"
#include "oracles.hpp"

namespace disco::cli {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("disco_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return path_ / name;
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (!l.empty()) out.push_back(l);
  }
  return out;
}

fs::path data(const std::string& rel) { return testing_support::data_dir() / rel; }

TEST(Formats, ParseBias) {
  auto b = parse_bias("head_pred(f,2). body_pred(succ,2). max_vars(3). max_body(2). max_rules(1). enable_recursion.");
  EXPECT_EQ(b.head.name.text(), "f");
  EXPECT_EQ(b.head.arity, 2u);
  ASSERT_EQ(b.body.size(), 1u);
  EXPECT_EQ(b.max_vars, 3u);
  EXPECT_EQ(b.max_body, 2u);
  EXPECT_EQ(b.max_rules, 1u);
  EXPECT_TRUE(b.allow_recursion);
  EXPECT_EQ(parse_bias("head_pred(f,1). max_literals(2).").literal_budget(), 2u);

  EXPECT_THROW(parse_bias("body_pred(p,1)."), ParseError);
  EXPECT_THROW(parse_bias("head_pred(f,1).\nmax_depth(3)."), ParseError);
  EXPECT_THROW(parse_bias("head_pred(f,1). max_vars(0)."), ParseError);
  try {
    parse_bias("head_pred(f,1).\nbogus(1).");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
  }
}

TEST(Formats, ParseExamples) {
  auto ex = parse_examples("pos(f(a,b)).\nneg(f(c,d)).\npos(f(b,a)).\n");
  ASSERT_EQ(ex.pos.size(), 2u);
  ASSERT_EQ(ex.neg.size(), 1u);
  EXPECT_EQ(kb::render_atom(ex.neg[0]), "f(c,d)");
  EXPECT_THROW(parse_examples("maybe(f(a))."), ParseError);
  EXPECT_THROW(parse_examples("pos(f(A))."), ParseError);
}

TEST(CmdDiscover, IntroBkJsonMatchesOracle) {
  std::ostringstream out, err;
  DiscoverOptions options;
  options.bk = data("intro_bk.dl");
  auto report = cmd_discover(options, out, err);
  EXPECT_EQ(report.exit_code, kExitOk);
  const auto rows = lines(out.str());
  EXPECT_EQ(rows.size(), report.properties_found);

  bool exclusive = false;
  std::set<std::string> details;
  for (const auto& row : rows) {
    auto j = nlohmann::json::parse(row);
    ASSERT_TRUE(j.contains("property") && j.contains("relations") && j.contains("arity") && j.contains("detail"));
    if (j["property"] == "exclusive") {
      exclusive = exclusive || j["relations"].get<std::vector<std::string>>() == std::vector<std::string>{"even", "odd"};
    }
    std::string rels;
    for (const auto& r : j["relations"]) rels += (rels.empty() ? "" : ",") + r.get<std::string>();
    details.insert((j["property"] == "exclusive" ? std::string("exclusive") : j["detail"].get<std::string>()) + "(" + rels + ")");
  }
  EXPECT_TRUE(exclusive);
  const auto store = kb::parse_facts(kb::read_file(options.bk));
  EXPECT_EQ(details, oracle::oracle_mine(oracle::to_facts(store)));
}

TEST(CmdDiscover, AspUsesInteropNames) {
  std::ostringstream out, err;
  DiscoverOptions options;
  options.bk = data("intro_bk.dl");
  options.format = OutputFormat::kAsp;
  ASSERT_EQ(cmd_discover(options, out, err).exit_code, kExitOk);
  const auto rows = lines(out.str());
  auto has = [&](const std::string& l) { return std::find(rows.begin(), rows.end(), l) != rows.end(); };
  EXPECT_TRUE(has("prop(asymmetric_ab_ba,tail)."));
  EXPECT_TRUE(has("prop(unsat_pair,odd,even)."));
}

TEST(CmdDiscover, EmptyAndMalformed) {
  TempDir dir;
  std::ostringstream out, err;
  DiscoverOptions options;
  options.bk = dir.write("empty.dl", "");
  auto report = cmd_discover(options, out, err);
  EXPECT_EQ(report.exit_code, kExitOk);
  EXPECT_TRUE(out.str().empty());

  std::ostringstream out2, err2;
  options.bk = dir.write("bad.dl", "p(a).\nq(b.\n");
  EXPECT_EQ(cmd_discover(options, out2, err2).exit_code, kExitParse);
  EXPECT_NE(err2.str().find(":2"), std::string::npos) << err2.str();

  std::ostringstream out3, err3;
  options.bk = dir.path() / "missing.dl";
  EXPECT_EQ(cmd_discover(options, out3, err3).exit_code, kExitParse);
}

TEST(CmdDiscover, OutputFileAndBiasFilter) {
  TempDir dir;
  std::ostringstream out, err;
  DiscoverOptions options;
  options.bk = data("intro_bk.dl");
  options.bias = dir.write("bias.dl", "head_pred(f,1). body_pred(even,1). body_pred(odd,1).");
  options.output = dir.path() / "props.jsonl";
  ASSERT_EQ(cmd_discover(options, out, err).exit_code, kExitOk);
  EXPECT_TRUE(out.str().empty());
  const auto rows = lines(kb::read_file(*options.output));
  ASSERT_FALSE(rows.empty());
  for (const auto& row : rows) {
    for (const auto& r : nlohmann::json::parse(row)["relations"]) EXPECT_NE(r, "tail");
  }
}

LearnCommandOptions toy_options() {
  LearnCommandOptions options;
  options.bk = data("tasks/toy/bk.dl");
  options.examples = data("tasks/toy/examples.dl");
  options.bias = data("tasks/toy/bias.dl");
  return options;
}

TEST(CmdLearn, ToyTask) {
  std::ostringstream out, err;
  auto with = cmd_learn(toy_options(), out, err);
  EXPECT_EQ(with.exit_code, kExitOk);
  EXPECT_EQ(out.str(), "f(A):-length(A,B),one(B).\n");
  EXPECT_EQ(with.solution_cost, 3u);
  EXPECT_GE(with.total_seconds,
            with.load_seconds + with.discovery_seconds + with.generate_seconds + with.test_seconds + with.constrain_seconds -
                1e-6);

  auto options = toy_options();
  options.no_discovery = true;
  options.json_report = true;
  std::ostringstream out2, err2;
  auto without = cmd_learn(options, out2, err2);
  EXPECT_EQ(without.exit_code, kExitOk);
  EXPECT_EQ(without.solution_cost, with.solution_cost);
  EXPECT_GE(without.programs_tested, with.programs_tested);
  EXPECT_EQ(without.constraints_compiled, 0u);
  const auto printed = lines(out2.str());
  ASSERT_EQ(printed.size(), 2u);
  EXPECT_EQ(printed[0], "f(A):-length(A,B),one(B).");
  auto j = nlohmann::json::parse(printed[1]);
  EXPECT_EQ(j["programs_tested"], without.programs_tested);
}

TEST(CmdLearn, BoundExhaustionExitsThree) {
  TempDir dir;
  auto options = toy_options();
  options.bias = dir.write("bias.dl", kb::read_file(data("tasks/toy/bias.dl")) + "max_literals(2).\n");
  std::ostringstream out, err;
  auto report = cmd_learn(options, out, err);
  EXPECT_EQ(report.exit_code, kExitNoSolution);
  EXPECT_EQ(out.str(), "no solution\n");
}

TEST(CmdLearn, ContractViolationExitsTwo) {
  TempDir dir;
  auto options = toy_options();
  options.examples = dir.write("ex.dl", "pos(f(l1)).\nneg(f(l1)).\n");
  std::ostringstream out, err;
  EXPECT_EQ(cmd_learn(options, out, err).exit_code, kExitParse);
  EXPECT_FALSE(err.str().empty());
}

std::set<std::string> parse_lines(const std::string& text) {
  auto l = lines(text);
  return {l.begin(), l.end()};
}

TEST(CmdGenbk, SmallestCaseMatchesHandEnumeration) {
  std::ostringstream out, err;
  GenbkOptions options;
  options.alphabet = 1;
  options.max_len = 2;
  auto report = cmd_genbk(options, out, err);
  EXPECT_EQ(report.exit_code, kExitOk);
  EXPECT_EQ(report.facts_written, 11u);
  const std::set<std::string> expected = {
      "string(s_1).",           "string(s_11).",           "head(s_1,x1).",         "head(s_11,x1).",
      "tail(s_1,s_e).",         "tail(s_11,s_1).",         "append(s_e,s_1,s_1).",  "append(s_1,s_e,s_1).",
      "append(s_e,s_11,s_11).", "append(s_1,s_1,s_11).",   "append(s_11,s_e,s_11).",
  };
  EXPECT_EQ(parse_lines(out.str()), expected);
  EXPECT_EQ(lines(out.str()).size(), 11u);
}

TEST(CmdGenbk, CountFormulaAndGrowth) {
  for (std::uint32_t n = 1; n <= 4; ++n) {
    for (std::uint32_t len = 1; len <= 4; ++len) {
      std::ostringstream out;
      const auto written = write_genbk(n, len, out);
      std::uint64_t formula = 0, p = 1;
      for (std::uint32_t l = 1; l <= len; ++l) {
        p *= n;
        formula += (l + 4) * p;
      }
      EXPECT_EQ(written, formula);
      EXPECT_EQ(genbk_fact_count(n, len), formula);
      EXPECT_EQ(lines(out.str()).size(), formula);
      EXPECT_EQ(kb::parse_facts(out.str()).fact_count(), formula);
    }
  }
  for (std::uint64_t n = 1; n < 40; ++n) EXPECT_LT(genbk_fact_count(n, 3), genbk_fact_count(n + 1, 3));
  EXPECT_EQ(genbk_fact_count(1000000, 10), UINT64_MAX);
}

TEST(CmdGenbk, WideAlphabetConstantsAreUnambiguous) {
  EXPECT_EQ(string_constant({1, 2}, 9), "s_12");
  EXPECT_EQ(string_constant({1, 2}, 12), "s_1_2");
  EXPECT_EQ(string_constant({12}, 12), "s_12");
  EXPECT_EQ(string_constant({}, 3), "s_e");
  std::ostringstream out;
  write_genbk(11, 2, out);
  EXPECT_EQ(kb::parse_facts(out.str()).fact_count(), genbk_fact_count(11, 2));
}

TEST(CmdGenbk, ByteIdenticalAcrossRuns) {
  std::ostringstream a, b;
  write_genbk(3, 3, a);
  write_genbk(3, 3, b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(CmdGenbk, PreconditionsAndGuard) {
  std::ostringstream out, err;
  GenbkOptions options;
  options.alphabet = 0;
  options.max_len = 2;
  EXPECT_EQ(cmd_genbk(options, out, err).exit_code, kExitUsage);
  options.alphabet = 2;
  options.max_len = 0;
  EXPECT_EQ(cmd_genbk(options, out, err).exit_code, kExitUsage);
  options.alphabet = 100;
  options.max_len = 5;
  EXPECT_EQ(cmd_genbk(options, out, err).exit_code, kExitResourceGuard);
  EXPECT_TRUE(out.str().empty());
}

RunReport rulespace(const std::string& name, std::string* printed = nullptr) {
  RulespaceOptions options;
  options.bias = data("rulespace/" + name + "_bias.dl");
  options.bk = data("rulespace/" + name + "_bk.dl");
  std::ostringstream out, err;
  auto report = cmd_rulespace(options, out, err);
  if (printed) *printed = out.str();
  return report;
}

TEST(CmdRulespace, OddEven) {
  std::string printed;
  auto r = rulespace("oddeven", &printed);
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(r.rules_without_constraints, 3u);
  EXPECT_EQ(r.rules_with_constraints, 2u);
  EXPECT_NE(printed.find("33.3%"), std::string::npos) << printed;
}

TEST(CmdRulespace, SuccReducesAtLeastHalf) {
  auto r = rulespace("succ");
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_LT(r.rules_with_constraints, r.rules_without_constraints);
  EXPECT_LE(2 * r.rules_with_constraints, r.rules_without_constraints);
}

TEST(CmdRulespace, NoPropertiesNoReduction) {
  std::string printed;
  auto r = rulespace("flat", &printed);
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(r.constraints_compiled, 0u);
  EXPECT_EQ(r.rules_with_constraints, r.rules_without_constraints);
  EXPECT_GT(r.rules_without_constraints, 0u);
  EXPECT_NE(printed.find("0.0%"), std::string::npos) << printed;
}

}  // namespace
}  // namespace disco::cli
