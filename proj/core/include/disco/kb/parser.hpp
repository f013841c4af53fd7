#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "disco/kb/fact_store.hpp"
#include "disco/kb/program.hpp"

namespace disco::kb {

// Facts file: one `pred(c1,...,cN).` per line, `%` comments, blank lines.
// Throws ParseError with the offending line number.
FactStore parse_facts(std::string_view text);

struct Program {
  std::vector<Rule> rules;  // canonical, validated, sorted, duplicate-free
  FactStore facts;
};

// Program file: facts plus `head :- lit, ..., X != Y.` rules.
Program parse_program(std::string_view text);

// Parses a single clause such as `f(A):-q(A).` into its canonical rule.
Rule parse_rule(std::string_view text);

// Parses one ground atom such as `f(a,b)` (trailing period optional).
Atom parse_fact_atom(std::string_view text);

std::string read_file(const std::filesystem::path& path);

}  // namespace disco::kb
