#pragma once

#include <string>

#include "delta/pddl/ast.hpp"

namespace delta::pddl {

// Canonical pretty-printers. Output is byte-stable: 4-space indentation, one
// literal per line inside and/:precondition/:effect blocks, and
// parse(print(x)) is structurally equal to x.
std::string print_domain(const DomainAst& d);
std::string print_problem(const ProblemAst& p);
std::string print_goal(const GoalFormula& g);

}  // namespace delta::pddl
