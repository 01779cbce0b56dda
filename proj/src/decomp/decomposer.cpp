#include "delta/decomp/decomposer.hpp"

#include <json.hpp>

#include "delta/llm/extract.hpp"
#include "delta/pddl/errors.hpp"
#include "delta/pddl/parser.hpp"
#include "delta/pddl/printer.hpp"

namespace delta::decomp {

using pddl::DomainAst;
using pddl::GoalFormula;
using pddl::ProblemAst;

SubGoalSequence parse_subgoal_sequence(std::string_view text, const DomainAst& d,
                                       const ProblemAst& p) {
    std::string body = llm::strip_code_fences(text);
    SubGoalSequence seq;
    for (const std::string& form : llm::balanced_forms(body)) {
        // Tolerate a (:goal ...) wrapper per form; parse_goal_formula does.
        seq.subgoals.push_back(pddl::parse_goal_formula(form, d, p));
        if (seq.subgoals.back().empty())
            throw pddl::SemanticError("sub-goal " + std::to_string(seq.size()) +
                                      " is an empty conjunction");
    }
    if (seq.empty())
        throw pddl::SemanticError("decomposition contains no sub-goals");
    return seq;
}

std::string subgoal_sequence_to_text(const SubGoalSequence& seq) {
    std::string out;
    for (const auto& g : seq.subgoals) {
        out += g.str();
        out += '\n';
    }
    return out;
}

uint64_t DecompositionRun::total_expanded() const {
    uint64_t n = 0;
    for (const auto& r : sub_results)
        n += r.search.expanded;
    return n;
}

uint64_t DecompositionRun::total_generated() const {
    uint64_t n = 0;
    for (const auto& r : sub_results)
        n += r.search.generated;
    return n;
}

double DecompositionRun::total_time_s() const {
    double t = 0;
    for (const auto& r : sub_results)
        t += r.search.time_s;
    return t;
}

DecompositionRun autoregressive_solve(const DomainAst& d, const ProblemAst& p0,
                                      const SubGoalSequence& goals,
                                      const search::SearchConfig& config,
                                      const Solver& solver) {
    if (goals.empty())
        throw std::invalid_argument("autoregressive_solve: empty sub-goal sequence");
    Solver plan = solver ? solver : [](const ground::GroundTask& task,
                                       const search::SearchConfig& cfg) {
        return search::solve(task, cfg);
    };

    DecompositionRun run;
    for (const auto& g : goals.subgoals)
        for (const auto& lit : g.literals)
            if (lit.negated)
                run.used_negative_literals = true;

    exec::State state = exec::initial_state(p0);
    for (size_t i = 0; i < goals.size(); ++i) {
        SubResult sub;
        std::vector<pddl::Atom> init(state.begin(), state.end());
        sub.problem = pddl::replace_init_goal(p0, d, init, goals.subgoals[i]);
        sub.problem.name = p0.name + "_sub" + std::to_string(i + 1);

        ground::GroundTask task = ground::ground(d, sub.problem);
        sub.search = plan(task, config);
        if (sub.search.status != search::SearchStatus::Solved) {
            run.status = sub.search.status == search::SearchStatus::Timeout
                             ? RunStatus::SubproblemTimeout
                             : RunStatus::SubproblemUnsolvable;
            run.failed_index = i;
            run.sub_results.push_back(std::move(sub));
            return run;
        }
        sub.plan = exec::plan_steps(task, *sub.search.plan);
        sub.final_state = exec::final_state(d, sub.problem, sub.plan);

        run.concat_plan.insert(run.concat_plan.end(), sub.plan.begin(), sub.plan.end());
        state = sub.final_state;
        run.sub_results.push_back(std::move(sub));
    }
    return run;
}

exec::ValidationReport verify_against_original(const DomainAst& d, const ProblemAst& p0,
                                               const DecompositionRun& run) {
    if (run.status != RunStatus::Solved)
        throw std::invalid_argument(
            "verify_against_original requires a run with all sub-problems solved");
    return exec::validate(d, p0, run.concat_plan);
}

std::string run_manifest_json(const DomainAst& d, const ProblemAst& p0,
                              const SubGoalSequence& goals, const DecompositionRun& run,
                              bool include_times) {
    nlohmann::json doc;
    doc["domain"] = d.name;
    doc["problem"] = p0.name;
    switch (run.status) {
        case RunStatus::Solved: doc["status"] = "solved"; break;
        case RunStatus::SubproblemUnsolvable: doc["status"] = "subproblem-unsolvable"; break;
        case RunStatus::SubproblemTimeout: doc["status"] = "subproblem-timeout"; break;
    }
    if (run.failed_index)
        doc["failed_index"] = *run.failed_index;
    doc["negative_literals"] = run.used_negative_literals;
    doc["subgoals"] = nlohmann::json::array();
    for (const auto& g : goals.subgoals)
        doc["subgoals"].push_back(g.str());
    doc["sub_results"] = nlohmann::json::array();
    for (const auto& sub : run.sub_results) {
        nlohmann::json js;
        js["problem_pddl"] = pddl::print_problem(sub.problem);
        js["plan"] = exec::plan_steps_to_text(sub.plan);
        js["status"] = search::status_name(sub.search.status);
        js["expanded"] = sub.search.expanded;
        js["generated"] = sub.search.generated;
        if (include_times)
            js["time_s"] = sub.search.time_s;
        doc["sub_results"].push_back(std::move(js));
    }
    doc["concat_plan"] = exec::plan_steps_to_text(run.concat_plan);
    doc["concat_length"] = run.concat_plan.size();
    doc["total_expanded"] = run.total_expanded();
    if (include_times)
        doc["total_time_s"] = run.total_time_s();
    return doc.dump(2) + "\n";
}

}  // namespace delta::decomp
