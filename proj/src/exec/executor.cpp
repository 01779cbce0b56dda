#include "delta/exec/executor.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace delta::exec {

using pddl::Atom;
using pddl::DomainAst;
using pddl::GoalFormula;
using pddl::Literal;
using pddl::ProblemAst;

std::string PlanStep::str() const {
    std::string out = "(" + name;
    for (const auto& a : args) {
        out += ' ';
        out += a;
    }
    out += ')';
    return out;
}

std::string reason_name(FailureReason r) {
    switch (r) {
        case FailureReason::PreconditionViolated: return "precondition-violated";
        case FailureReason::GoalUnsatisfied: return "goal-unsatisfied";
        case FailureReason::UnknownAction: return "unknown-action";
    }
    return "?";
}

std::vector<PlanStep> parse_plan_text(std::string_view text) {
    std::vector<PlanStep> steps;
    std::istringstream is{std::string(text)};
    std::string line;
    size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (auto pos = line.find(';'); pos != std::string::npos)
            line.erase(pos);
        // tokens: parens stripped, whitespace separated, lower-cased
        std::string cleaned;
        int depth = 0;
        for (char c : line) {
            if (c == '(') {
                ++depth;
                cleaned += ' ';
            } else if (c == ')') {
                --depth;
                cleaned += ' ';
            } else {
                cleaned += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            }
        }
        if (depth != 0)
            throw std::runtime_error("plan line " + std::to_string(line_no) +
                                     ": unbalanced parentheses");
        std::istringstream ls(cleaned);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok)
            tokens.push_back(tok);
        if (tokens.empty())
            continue;
        PlanStep step;
        step.name = tokens[0];
        step.args.assign(tokens.begin() + 1, tokens.end());
        steps.push_back(std::move(step));
    }
    return steps;
}

std::string plan_steps_to_text(const std::vector<PlanStep>& steps) {
    std::string out;
    for (const auto& s : steps) {
        out += s.str();
        out += '\n';
    }
    return out;
}

std::vector<PlanStep> plan_steps(const ground::GroundTask& task, const search::Plan& plan) {
    std::vector<PlanStep> steps;
    steps.reserve(plan.action_ids.size());
    for (int id : plan.action_ids)
        steps.push_back({task.actions[id].name, task.actions[id].args});
    return steps;
}

BoundAction instantiate(const DomainAst& d, const ProblemAst& p, const PlanStep& step,
                        size_t step_index) {
    auto unknown = [&](const std::string& why) {
        return SimulationError(step_index, FailureReason::UnknownAction,
                               "step " + std::to_string(step_index + 1) + " " + step.str() +
                                   ": " + why);
    };
    const pddl::ActionSchema* schema = d.find_action(step.name);
    if (!schema)
        throw unknown("no action named '" + step.name + "' in domain '" + d.name + "'");
    if (schema->params.size() != step.args.size())
        throw unknown("action '" + step.name + "' takes " +
                      std::to_string(schema->params.size()) + " arguments, got " +
                      std::to_string(step.args.size()));

    std::map<std::string, std::string> binding;
    for (size_t i = 0; i < step.args.size(); ++i) {
        const pddl::TypedParam* obj = p.find_object(step.args[i]);
        if (!obj)
            throw unknown("object '" + step.args[i] + "' is not declared");
        if (!d.is_subtype(obj->type, schema->params[i].type))
            throw unknown("object '" + obj->name + "' of type '" + obj->type +
                          "' does not fit parameter '" + schema->params[i].name + " - " +
                          schema->params[i].type + "'");
        binding[schema->params[i].name] = step.args[i];
    }
    auto bind = [&](const Atom& schematic) {
        Atom atom{schematic.predicate, {}};
        for (const auto& arg : schematic.args)
            atom.args.push_back(binding.at(arg));
        return atom;
    };

    BoundAction bound;
    bound.name = step.name;
    bound.args = step.args;
    for (const auto& lit : schema->precondition)
        bound.precondition.push_back({bind(lit.atom), lit.negated});
    for (const auto& atom : schema->add_effects)
        bound.add.insert(bind(atom));
    for (const auto& atom : schema->del_effects)
        bound.del.insert(bind(atom));
    return bound;
}

State apply(const State& s, const BoundAction& a, size_t step_index) {
    for (const auto& lit : a.precondition) {
        bool holds = s.count(lit.atom) > 0;
        if (holds == lit.negated)
            throw SimulationError(step_index, FailureReason::PreconditionViolated,
                                  "step " + std::to_string(step_index + 1) + " (" + a.name +
                                      "): precondition " + lit.str() + " is not satisfied");
    }
    State out;
    std::set_difference(s.begin(), s.end(), a.del.begin(), a.del.end(),
                        std::inserter(out, out.end()));
    out.insert(a.add.begin(), a.add.end());
    return out;
}

State initial_state(const ProblemAst& p) {
    return State(p.init.begin(), p.init.end());
}

bool goal_satisfied(const GoalFormula& goal, const State& s) {
    for (const auto& lit : goal.literals)
        if ((s.count(lit.atom) > 0) == lit.negated)
            return false;
    return true;
}

State simulate(const DomainAst& d, const ProblemAst& p, const std::vector<PlanStep>& plan) {
    State s = initial_state(p);
    for (size_t i = 0; i < plan.size(); ++i)
        s = apply(s, instantiate(d, p, plan[i], i), i);
    return s;
}

ValidationReport validate(const DomainAst& d, const ProblemAst& p,
                          const std::vector<PlanStep>& plan) {
    ValidationReport report;
    State final;
    try {
        final = simulate(d, p, plan);
    } catch (const SimulationError& e) {
        report.verdict = ValidationReport::Verdict::Invalid;
        report.failing_step = e.step();
        report.reason = e.reason();
        report.detail = e.what();
        return report;
    }
    for (const auto& lit : p.goal.literals) {
        if ((final.count(lit.atom) > 0) == lit.negated) {
            report.verdict = ValidationReport::Verdict::Invalid;
            report.reason = FailureReason::GoalUnsatisfied;
            report.detail = "goal literal " + lit.str() + " does not hold in the final state";
            return report;
        }
    }
    report.verdict = ValidationReport::Verdict::Valid;
    return report;
}

State final_state(const DomainAst& d, const ProblemAst& p, const std::vector<PlanStep>& plan) {
    return simulate(d, p, plan);
}

}  // namespace delta::exec
