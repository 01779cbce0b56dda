#pragma once

#include <string>
#include <string_view>

#include "delta/pddl/ast.hpp"
#include "delta/pddl/errors.hpp"

namespace delta::pddl {

// Parses a domain in the supported typed STRIPS subset: :strips, :typing and
// :negative-preconditions. Identifiers are case-insensitive and normalized to
// lower case. Everything outside the subset is rejected.
DomainAst parse_domain(std::string_view text);

// Parses a problem against an already parsed domain. Init atoms and goal
// literals are checked for declared predicates, correct arity and object
// types; an unknown object raises UndeclaredItemError.
ProblemAst parse_problem(std::string_view text, const DomainAst& domain);

// Parses a bare goal conjunction: either a single ground atom/negation or an
// (and ...) of them. Accepts an optional (:goal ...) wrapper. Literals are
// checked against the domain's predicates and the problem's objects.
GoalFormula parse_goal_formula(std::string_view text, const DomainAst& domain,
                               const ProblemAst& problem);

}  // namespace delta::pddl
