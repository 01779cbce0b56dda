#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "delta/exec/executor.hpp"
#include "delta/pddl/ast.hpp"
#include "delta/search/astar.hpp"

namespace delta::decomp {

// Ordered sub-goal conjunctions produced by goal decomposition.
struct SubGoalSequence {
    std::vector<pddl::GoalFormula> subgoals;

    bool empty() const { return subgoals.empty(); }
    size_t size() const { return subgoals.size(); }
};

// Parses one sub-goal per top-level form: "(and ...)", a bare atom, or a
// negation. Markdown code fences are tolerated. Every literal is checked
// against the domain and the problem's objects; an empty sequence is an
// error.
SubGoalSequence parse_subgoal_sequence(std::string_view text, const pddl::DomainAst& d,
                                       const pddl::ProblemAst& p);
std::string subgoal_sequence_to_text(const SubGoalSequence& seq);

struct SubResult {
    pddl::ProblemAst problem;  // the formulated sub-problem
    search::SearchResult search;
    std::vector<exec::PlanStep> plan;
    exec::State final_state;
};

enum class RunStatus { Solved, SubproblemUnsolvable, SubproblemTimeout };

struct DecompositionRun {
    std::vector<SubResult> sub_results;
    std::vector<exec::PlanStep> concat_plan;
    RunStatus status = RunStatus::Solved;
    std::optional<size_t> failed_index;
    bool used_negative_literals = false;

    uint64_t total_expanded() const;
    uint64_t total_generated() const;
    double total_time_s() const;
};

using Solver =
    std::function<search::SearchResult(const ground::GroundTask&, const search::SearchConfig&)>;

// Autoregressive sub-task planning: starting from p0's init, each sub-goal
// is solved on a problem whose init is the previous sub-plan's final state,
// and the final plan is the concatenation of the sub-plans. All intermediate
// artifacts are returned for auditing. A sub-problem that does not solve
// aborts the run (no replanning) with the failing index recorded.
DecompositionRun autoregressive_solve(const pddl::DomainAst& d, const pddl::ProblemAst& p0,
                                      const SubGoalSequence& goals,
                                      const search::SearchConfig& config = {},
                                      const Solver& solver = nullptr);

// Validates the concatenated plan against p0's original goal. An Invalid
// verdict signals a decomposition that drops or un-achieves goal conjuncts.
// Requires a run with all sub-problems solved.
exec::ValidationReport verify_against_original(const pddl::DomainAst& d,
                                               const pddl::ProblemAst& p0,
                                               const DecompositionRun& run);

// Structured audit document: every sub-problem file, sub-plan and its
// metrics, plus the concatenated plan.
std::string run_manifest_json(const pddl::DomainAst& d, const pddl::ProblemAst& p0,
                              const SubGoalSequence& goals, const DecompositionRun& run,
                              bool include_times = true);

}  // namespace delta::decomp
