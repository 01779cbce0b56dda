#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "delta/exec/executor.hpp"
#include "delta/pddl/ast.hpp"

// A deliberately separate plan simulator over string-rendered atoms. It is
// the independent route the validator is checked against: same inputs, no
// shared execution code.
namespace delta::testsupport {

// Final state as atom strings, or nullopt when some step is inapplicable
// (unknown action, bad binding, unsatisfied literal).
std::optional<std::set<std::string>> simulate_strings(
    const pddl::DomainAst& d, const pddl::ProblemAst& p,
    const std::vector<exec::PlanStep>& plan);

bool goal_holds_strings(const pddl::GoalFormula& goal, const std::set<std::string>& state);

}  // namespace delta::testsupport
