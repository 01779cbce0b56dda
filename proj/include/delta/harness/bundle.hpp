#pragma once

#include <string>
#include <vector>

#include "delta/harness/assets.hpp"
#include "delta/pddl/ast.hpp"
#include "delta/scene/scene_graph.hpp"

namespace delta::harness {

// Bundled content of one evaluation domain: the golden planning files, the
// natural-language descriptions that drive the prompts, and the scene-to-
// predicate mapping used by the deterministic problem builder.
struct DomainContent {
    std::string id;
    std::string domain_pddl;
    std::string domain_nl;
    std::string goal_nl;
    std::string goal_pddl;      // goal conjunction "(and ...)"
    std::string keep_list;      // golden kept subset, one id per line
    std::string subgoals_pddl;  // golden decomposition, one conjunction per line
    std::string subgoals_nl;
    scene::SceneVocabulary vocab;
    std::string robot_name = "robot";
    std::string agent_type = "agent";
    std::string start_room = "hub";
    std::vector<std::string> robot_unary_facts;  // e.g. hand_empty, battery_full
};

const std::vector<std::string>& bundled_domain_ids();     // laundry first
const std::vector<std::string>& bundled_scene_ids();      // kemblesville first
const std::vector<std::string>& evaluation_domain_ids();  // without the one-shot example
const std::vector<std::string>& evaluation_scene_ids();

// The shared mapping from item labels/affordances/states to the predicates
// of the bundled domains. Predicates a given domain does not declare are
// skipped when facts are emitted.
scene::SceneVocabulary bundle_vocabulary();

DomainContent load_domain_content(const AssetStore& assets, const std::string& domain_id);
scene::SceneGraph load_scene(const AssetStore& assets, const std::string& scene_id);

// Deterministic problem construction from a scene: objects are the robot,
// the rooms (scene order) and the items (lexicographic), init is the robot
// facts plus the encoded scene and attribute facts, and the goal is the
// bundled goal conjunction. This is the reference route the golden problem
// files and fixtures are generated from.
std::string build_problem_text(const scene::SceneGraph& sg, const pddl::DomainAst& d,
                               const DomainContent& content, const std::string& problem_name,
                               const std::string& goal_text_override = "");
pddl::ProblemAst build_problem(const scene::SceneGraph& sg, const pddl::DomainAst& d,
                               const DomainContent& content, const std::string& problem_name);

}  // namespace delta::harness
