#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "delta/pddl/ast.hpp"
#include "delta/scene/scene_graph.hpp"

namespace delta::llm {

class PromptError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Three-part prompt: the role, the example, and the instruction, rendered in
// that order. Identical inputs produce byte-identical prompts.
struct PromptTemplate {
    std::string role_text;
    std::string example_text;
    std::string instruction_text;

    std::string render() const;
};

// One-shot example for domain generation: action knowledge in natural
// language paired with the corresponding domain file.
struct DomainExample {
    std::string action_nl;
    std::string domain_pddl;
};

PromptTemplate build_domain_prompt(const DomainExample& example, const std::string& query_nl);

// One-shot example for pruning: an item list, a goal description, and the
// kept subset.
struct PruningExample {
    std::vector<std::string> item_ids;
    std::string goal_nl;
    std::vector<std::string> kept;
};

PromptTemplate build_pruning_prompt(const std::vector<std::string>& items,
                                    const std::string& goal_nl, const PruningExample& example);

// One-shot example for problem generation: a scene document, a goal
// description, the example domain, and the desired problem file.
struct ProblemExample {
    std::string scene_json;
    std::string goal_nl;
    std::string domain_pddl;
    std::string problem_pddl;
};

PromptTemplate build_problem_prompt(const scene::SceneGraph& sg, const std::string& goal_nl,
                                    const pddl::DomainAst& d, const ProblemExample& example);

// One-shot example for goal decomposition: a problem file, its domain, and
// the target sub-goal sequence (natural language and formal).
struct DecompositionExample {
    std::string problem_pddl;
    std::string domain_pddl;
    std::string subgoals_nl;
    std::string subgoals_pddl;
};

PromptTemplate build_decomposition_prompt(const pddl::ProblemAst& p, const pddl::DomainAst& d,
                                          const DecompositionExample& example);

}  // namespace delta::llm
