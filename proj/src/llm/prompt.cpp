#include "delta/llm/prompt.hpp"

#include <algorithm>
#include <set>

#include "delta/pddl/printer.hpp"

namespace delta::llm {

namespace {

void require(bool ok, const char* what) {
    if (!ok)
        throw PromptError(what);
}

std::string join_lines(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& i : items) {
        out += i;
        out += '\n';
    }
    return out;
}

// Only the declarations the model needs to reference: types and predicates.
std::string predicate_section(const pddl::DomainAst& d) {
    std::string out;
    if (!d.types.empty()) {
        out += "(:types";
        for (const auto& t : d.types)
            out += " " + t.name + " - " + t.supertype;
        out += ")\n";
    }
    out += "(:predicates\n";
    for (const auto& p : d.predicates) {
        out += "    (" + p.name;
        for (const auto& param : p.params)
            out += " " + param.name + " - " + param.type;
        out += ")\n";
    }
    out += ")\n";
    return out;
}

}  // namespace

std::string PromptTemplate::render() const {
    return role_text + "\n\n" + example_text + "\n\n" + instruction_text + "\n";
}

PromptTemplate build_domain_prompt(const DomainExample& example, const std::string& query_nl) {
    require(!example.action_nl.empty() && !example.domain_pddl.empty(),
            "domain prompt: one-shot example must be nonempty");
    require(!query_nl.empty(), "domain prompt: query action knowledge is empty");

    PromptTemplate t;
    t.role_text =
        "You are an excellent PDDL domain file generator. Given a description of action "
        "knowledge in natural language, you can generate a PDDL domain file.";
    t.example_text =
        "A robot in a household environment can perform the following example actions with "
        "pre-conditions and effects in natural language.\n\n" +
        example.action_nl +
        "\n\nThe corresponding action definitions in a PDDL domain file look like:\n\n" +
        example.domain_pddl;
    t.instruction_text =
        "A new domain includes the following new object types and actions described in "
        "natural language.\n\n" +
        query_nl +
        "\n\nPlease generate a corresponding new PDDL domain file. Reply with the PDDL file "
        "in a fenced code block.";
    return t;
}

PromptTemplate build_pruning_prompt(const std::vector<std::string>& items,
                                    const std::string& goal_nl,
                                    const PruningExample& example) {
    require(!items.empty(), "pruning prompt: query item list is empty");
    require(!goal_nl.empty(), "pruning prompt: goal description is empty");
    require(!example.item_ids.empty() && !example.goal_nl.empty() && !example.kept.empty(),
            "pruning prompt: one-shot example must be nonempty");
    for (const auto& k : example.kept)
        require(std::find(example.item_ids.begin(), example.item_ids.end(), k) !=
                    example.item_ids.end(),
                "pruning prompt: example kept subset is not a subset of the example items");

    PromptTemplate t;
    t.role_text =
        "You are an excellent assistant in pruning scene graphs. Given a list of items from "
        "a scene graph and a goal description, you can select the subset of items that are "
        "relevant for accomplishing the goal.";
    t.example_text =
        "Here is an example list of items from a scene graph:\n\n" +
        join_lines(example.item_ids) + "\nGiven the example goal description: \"" +
        example.goal_nl +
        "\", the subset of relevant items is:\n\n" + join_lines(example.kept);
    t.instruction_text =
        "Now given the new goal description: \"" + goal_nl +
        "\" and the following new list of items:\n\n" + join_lines(items) +
        "\nPlease reply with the subset of relevant items, one item id per line.";
    return t;
}

PromptTemplate build_problem_prompt(const scene::SceneGraph& sg, const std::string& goal_nl,
                                    const pddl::DomainAst& d, const ProblemExample& example) {
    require(!goal_nl.empty(), "problem prompt: goal description is empty");
    require(!d.predicates.empty(), "problem prompt: domain declares no predicates");
    require(!example.scene_json.empty() && !example.goal_nl.empty() &&
                !example.domain_pddl.empty() && !example.problem_pddl.empty(),
            "problem prompt: one-shot example must be nonempty");

    PromptTemplate t;
    t.role_text =
        "You are an excellent PDDL problem file generator. Given a scene graph "
        "representation and a goal description, you can generate a PDDL problem file.";
    t.example_text =
        "A scene graph represents a scene in a hierarchical way with floor, room, and item "
        "layers. It can be written as a nested document. An example looks like:\n\n" +
        example.scene_json + "\nGiven an example goal description: \"" + example.goal_nl +
        "\", and using the predicates defined in this example domain file:\n\n" +
        example.domain_pddl + "\na corresponding PDDL problem file looks like:\n\n" +
        example.problem_pddl;
    t.instruction_text =
        "Now given a new scene graph:\n\n" + scene::scene_to_json(sg) +
        "\nand using the object types and predicates of the domain file generated "
        "previously:\n\n" +
        predicate_section(d) + "\nwith the new goal description: \"" + goal_nl +
        "\", please generate a new PDDL problem file. Rooms are connected bi-directionally: "
        "emit the neighbor predicate in both directions. Reply with the PDDL file in a "
        "fenced code block.";
    return t;
}

PromptTemplate build_decomposition_prompt(const pddl::ProblemAst& p, const pddl::DomainAst& d,
                                          const DecompositionExample& example) {
    require(!p.goal.empty(), "decomposition prompt: problem has an empty goal");
    require(!example.problem_pddl.empty() && !example.domain_pddl.empty() &&
                !example.subgoals_nl.empty() && !example.subgoals_pddl.empty(),
            "decomposition prompt: one-shot example must be nonempty");

    PromptTemplate t;
    t.role_text =
        "You are an excellent assistant in decomposing long-term goals. Given a PDDL "
        "problem file, you can decompose the long-term goal into a sequence of sub-goals.";
    t.example_text =
        "Here is an example PDDL problem file:\n\n" + example.problem_pddl +
        "\nFor simplifying the planning problem, the long-term goal defined here can be "
        "decomposed into a sequence of sub-goals in natural language:\n\n" +
        example.subgoals_nl +
        "\nUsing the predicates defined in the example domain file:\n\n" +
        example.domain_pddl + "\nthe long-term goal can be decomposed into:\n\n" +
        example.subgoals_pddl;
    t.instruction_text =
        "Given the problem file generated previously:\n\n" + pddl::print_problem(p) +
        "\nplease decompose the long-term goal into a sequence of sub-goals considering the "
        "predicates and actions from the previously generated domain file:\n\n" +
        pddl::print_domain(d) +
        "\nReply with one sub-goal conjunction per line, each of the form (and ...), in "
        "execution order.";
    return t;
}

}  // namespace delta::llm
