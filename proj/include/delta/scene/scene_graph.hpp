#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "delta/pddl/ast.hpp"

namespace delta::scene {

class SceneError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Floor {
    std::string id;

    auto operator<=>(const Floor&) const = default;
};

struct Room {
    std::string id;
    std::string name;
    std::string floor;
    std::set<std::string> neighbors;

    auto operator<=>(const Room&) const = default;
};

struct Item {
    std::string id;
    std::string name;
    std::string room;
    bool accessible = true;
    std::map<std::string, std::string> states;  // opaque labels
    std::set<std::string> affordances;

    auto operator<=>(const Item&) const = default;
};

// Hierarchical floor/room/item environment model. Values are immutable after
// load and safe to share across concurrent trial workers.
struct SceneGraph {
    std::string name;
    std::vector<Floor> floors;
    std::vector<Room> rooms;
    std::vector<Item> items;

    const Room* find_room(const std::string& id) const;
    const Item* find_item(const std::string& id) const;

    auto operator<=>(const SceneGraph&) const = default;
};

// Maps scene-graph structure onto the planning vocabulary. The predicate
// names default to the ones used throughout the bundled domains; the
// attribute mappings are configured per domain since item states are opaque
// labels.
struct SceneVocabulary {
    std::string agent_type = "agent";
    std::string item_type = "item";
    std::string room_type = "room";
    std::string neighbor_predicate = "neighbor";
    std::string item_at_predicate = "item_at";
    std::string item_accessible_predicate = "item_accessible";

    // Item carries affordance label -> unary fact (pred item).
    std::map<std::string, std::string> affordance_predicates;
    // Item label (its "name" field) -> unary facts (pred item).
    std::map<std::string, std::vector<std::string>> name_predicates;
    // Item state key == value -> unary fact (pred item).
    struct StateRule {
        std::string key;
        std::string value;
        std::string predicate;

        auto operator<=>(const StateRule&) const = default;
    };
    std::vector<StateRule> state_rules;
};

// Parses the canonical nested JSON document (floors -> rooms -> items).
// Identifiers are normalized to lower case; room adjacency is closed under
// symmetry. Structural problems (duplicate ids, dangling references) raise
// SceneError. Non-fatal observations (disconnected room graph) are appended
// to `warnings` when given.
SceneGraph load_scene_graph(std::string_view text, std::vector<std::string>* warnings = nullptr);

// Serializes back to the canonical document format (used when embedding
// scenes into prompts). Deterministic bytes.
std::string scene_to_json(const SceneGraph& sg);

// All items ordered lexicographically by id.
std::vector<Item> list_items(const SceneGraph& sg);

// Keeps exactly the items in `keep`; floors, rooms and adjacency are
// untouched. An unknown id in `keep` raises SceneError.
SceneGraph prune(const SceneGraph& sg, const std::set<std::string>& keep);

// Deterministic fallback for the LLM pruning step: backward relevance
// analysis over ground action schemas. Goal atoms are relevant; the positive
// preconditions of any ground action achieving a relevant atom are relevant;
// actions whose static preconditions do not hold in the scene-derived fact
// set are never achievers. Returns the ids of items appearing in any
// relevant atom. Superset-safe: planning on prune(sg, result) preserves the
// optimal plan length of the unpruned problem.
std::set<std::string> relevance_prune(const SceneGraph& sg, const pddl::DomainAst& d,
                                      const pddl::GoalFormula& goal,
                                      const SceneVocabulary& vocab = {});

// Scene topology as planning facts: (neighbor a b) and (neighbor b a) for
// every adjacent pair, plus item_at/item_accessible for each accessible
// item. Requires the three predicates to be declared in `d`.
std::vector<pddl::Atom> encode_scene_facts(const SceneGraph& sg, const pddl::DomainAst& d,
                                           const SceneVocabulary& vocab = {});

// Static facts derived from item attributes via the vocabulary mappings
// (kind predicates from labels/affordances, state facts from state rules).
// Only predicates declared in `d` are emitted.
std::vector<pddl::Atom> encode_item_attribute_facts(const SceneGraph& sg,
                                                    const pddl::DomainAst& d,
                                                    const SceneVocabulary& vocab = {});

}  // namespace delta::scene
