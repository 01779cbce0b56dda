#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "delta/ground/grounder.hpp"
#include "delta/pddl/ast.hpp"
#include "delta/search/astar.hpp"

namespace delta::exec {

// World state: the set of true ground atoms. Closed world, so everything
// unlisted is false.
using State = std::set<pddl::Atom>;

struct PlanStep {
    std::string name;
    std::vector<std::string> args;

    std::string str() const;

    auto operator<=>(const PlanStep&) const = default;
};

// Reads the planner's plan text format: one "(name arg1 arg2 ...)" per line,
// blank lines and ';' comments ignored.
std::vector<PlanStep> parse_plan_text(std::string_view text);
std::string plan_steps_to_text(const std::vector<PlanStep>& steps);
std::vector<PlanStep> plan_steps(const ground::GroundTask& task, const search::Plan& plan);

enum class FailureReason { PreconditionViolated, GoalUnsatisfied, UnknownAction };
std::string reason_name(FailureReason r);

struct ValidationReport {
    enum class Verdict { Valid, Invalid };
    Verdict verdict = Verdict::Invalid;
    std::optional<size_t> failing_step;  // 0-based; absent when Valid or goal-only failure
    std::optional<FailureReason> reason;
    std::string detail;

    bool valid() const { return verdict == Verdict::Valid; }
};

class SimulationError : public std::runtime_error {
  public:
    SimulationError(size_t step, FailureReason reason, const std::string& msg)
        : std::runtime_error(msg), step_(step), reason_(reason) {}
    size_t step() const { return step_; }
    FailureReason reason() const { return reason_; }

  private:
    size_t step_;
    FailureReason reason_;
};

// An action schema bound to concrete objects. Precondition literals keep the
// schema's declaration order so violation messages name the first
// unsatisfied literal deterministically.
struct BoundAction {
    std::string name;
    std::vector<std::string> args;
    std::vector<pddl::Literal> precondition;
    std::set<pddl::Atom> add;
    std::set<pddl::Atom> del;
};

// Binds `step` against the domain's schema and the problem's objects.
// Anything that does not denote an existing ground action (unknown schema,
// arity mismatch, unknown object, type mismatch) raises SimulationError with
// reason UnknownAction.
BoundAction instantiate(const pddl::DomainAst& d, const pddl::ProblemAst& p,
                        const PlanStep& step, size_t step_index = 0);

// STRIPS transition: requires the precondition to hold, returns
// (s \ del) ∪ add. Raises SimulationError naming the first unsatisfied
// literal otherwise.
State apply(const State& s, const BoundAction& a, size_t step_index = 0);

State initial_state(const pddl::ProblemAst& p);
bool goal_satisfied(const pddl::GoalFormula& goal, const State& s);

// Folds apply over the plan from the problem's init; returns the final
// state. Raises SimulationError at the first failing step.
State simulate(const pddl::DomainAst& d, const pddl::ProblemAst& p,
               const std::vector<PlanStep>& plan);

// Valid iff the plan simulates without error and the final state satisfies
// the problem's goal. Failures are verdicts, not errors.
ValidationReport validate(const pddl::DomainAst& d, const pddl::ProblemAst& p,
                          const std::vector<PlanStep>& plan);

// The executed plan's final state, for autoregressive chaining. Goal
// satisfaction is not required; inherits simulate's errors.
State final_state(const pddl::DomainAst& d, const pddl::ProblemAst& p,
                  const std::vector<PlanStep>& plan);

}  // namespace delta::exec
