#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "disco/kb/program.hpp"
#include "disco/learner/bias.hpp"
#include "disco/miner/property.hpp"

namespace disco::cli {

// Bias directives, one per clause:
//   head_pred(f,1).  body_pred(p,2).  max_vars(N).  max_body(N).
//   max_rules(N).  max_literals(N).  enable_recursion.
// Unknown directives and a missing head_pred raise ParseError.
learner::Bias parse_bias(std::string_view text);

struct Examples {
  std::vector<kb::Atom> pos;
  std::vector<kb::Atom> neg;
};

// Lines `pos(f(a,b)).` and `neg(f(c,d)).`.
Examples parse_examples(std::string_view text);

// {"property":"asymmetric","relations":["tail"],"arity":2,"detail":"asymmetric_ab_ba"}
std::string assertion_json(const miner::PropertyAssertion& assertion);
// prop(asymmetric_ab_ba,tail).  Exclusive pairs: prop(unsat_pair,P,Q). with P > Q.
std::string assertion_asp(const miner::PropertyAssertion& assertion);

}  // namespace disco::cli
