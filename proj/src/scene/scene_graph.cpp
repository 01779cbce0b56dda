#include "delta/scene/scene_graph.hpp"

#include <algorithm>
#include <cctype>

#include <json.hpp>

#include "delta/pddl/errors.hpp"

namespace delta::scene {

using nlohmann::json;

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string require_string(const json& j, const char* key, const std::string& ctx) {
    if (!j.contains(key) || !j[key].is_string() || j[key].get<std::string>().empty())
        throw SceneError(ctx + ": missing or empty string field \"" + key + "\"");
    return lower(j[key].get<std::string>());
}

}  // namespace

const Room* SceneGraph::find_room(const std::string& id) const {
    for (const auto& r : rooms)
        if (r.id == id)
            return &r;
    return nullptr;
}

const Item* SceneGraph::find_item(const std::string& id) const {
    for (const auto& i : items)
        if (i.id == id)
            return &i;
    return nullptr;
}

SceneGraph load_scene_graph(std::string_view text, std::vector<std::string>* warnings) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SceneError(std::string("scene document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("floors") || !doc["floors"].is_array())
        throw SceneError("scene document must be an object with a \"floors\" array");

    SceneGraph sg;
    sg.name = doc.contains("name") ? lower(doc["name"].get<std::string>()) : "scene";

    for (const auto& jf : doc["floors"]) {
        Floor floor;
        floor.id = require_string(jf, "id", "floor");
        for (const auto& f : sg.floors)
            if (f.id == floor.id)
                throw SceneError("duplicate floor id '" + floor.id + "'");
        if (jf.contains("rooms")) {
            if (!jf["rooms"].is_array())
                throw SceneError("floor '" + floor.id + "': \"rooms\" must be an array");
            for (const auto& jr : jf["rooms"]) {
                Room room;
                room.id = require_string(jr, "id", "room");
                room.name = jr.contains("name") ? lower(jr["name"].get<std::string>())
                                                : room.id;
                room.floor = floor.id;
                for (const auto& r : sg.rooms)
                    if (r.id == room.id)
                        throw SceneError("duplicate room id '" + room.id + "'");
                if (jr.contains("neighbors")) {
                    for (const auto& jn : jr["neighbors"])
                        room.neighbors.insert(lower(jn.get<std::string>()));
                }
                if (room.neighbors.count(room.id))
                    throw SceneError("room '" + room.id + "' lists itself as a neighbor");
                if (jr.contains("items")) {
                    for (const auto& ji : jr["items"]) {
                        Item item;
                        item.id = require_string(ji, "id", "item");
                        item.name = ji.contains("name") ? lower(ji["name"].get<std::string>())
                                                        : item.id;
                        item.room = room.id;
                        if (ji.contains("accessible"))
                            item.accessible = ji["accessible"].get<bool>();
                        if (ji.contains("states")) {
                            for (const auto& [k, v] : ji["states"].items()) {
                                std::string value = v.is_boolean()
                                                        ? (v.get<bool>() ? "true" : "false")
                                                        : lower(v.get<std::string>());
                                item.states[lower(k)] = value;
                            }
                        }
                        if (ji.contains("affordances")) {
                            for (const auto& ja : ji["affordances"]) {
                                std::string label = lower(ja.get<std::string>());
                                if (label.empty())
                                    throw SceneError("item '" + item.id +
                                                     "' has an empty affordance label");
                                item.affordances.insert(label);
                            }
                        }
                        for (const auto& other : sg.items)
                            if (other.id == item.id)
                                throw SceneError("duplicate item id '" + item.id + "'");
                        sg.items.push_back(std::move(item));
                    }
                }
                sg.rooms.push_back(std::move(room));
            }
        }
        sg.floors.push_back(std::move(floor));
    }

    // Dangling neighbor references, then symmetry closure.
    for (const auto& room : sg.rooms)
        for (const auto& n : room.neighbors)
            if (!sg.find_room(n))
                throw SceneError("room '" + room.id + "' references unknown neighbor '" + n +
                                 "'");
    for (auto& room : sg.rooms)
        for (auto& other : sg.rooms)
            if (other.neighbors.count(room.id))
                room.neighbors.insert(other.id);

    if (warnings && sg.rooms.size() > 1) {
        // Flood fill from the first room; an unreached room means the room
        // graph is disconnected, which the planner will surface as
        // unsolvable navigation but is not a structural error.
        std::set<std::string> seen{sg.rooms.front().id};
        std::vector<const Room*> stack{&sg.rooms.front()};
        while (!stack.empty()) {
            const Room* r = stack.back();
            stack.pop_back();
            for (const auto& n : r->neighbors)
                if (seen.insert(n).second)
                    stack.push_back(sg.find_room(n));
        }
        if (seen.size() != sg.rooms.size())
            warnings->push_back("room adjacency graph of '" + sg.name + "' is disconnected (" +
                                std::to_string(seen.size()) + " of " +
                                std::to_string(sg.rooms.size()) + " rooms reachable)");
    }
    return sg;
}

std::string scene_to_json(const SceneGraph& sg) {
    json doc;
    doc["name"] = sg.name;
    doc["floors"] = json::array();
    for (const auto& floor : sg.floors) {
        json jf;
        jf["id"] = floor.id;
        jf["rooms"] = json::array();
        for (const auto& room : sg.rooms) {
            if (room.floor != floor.id)
                continue;
            json jr;
            jr["id"] = room.id;
            jr["name"] = room.name;
            jr["neighbors"] = room.neighbors;
            jr["items"] = json::array();
            for (const auto& item : sg.items) {
                if (item.room != room.id)
                    continue;
                json ji;
                ji["id"] = item.id;
                ji["name"] = item.name;
                ji["accessible"] = item.accessible;
                ji["states"] = item.states;
                ji["affordances"] = item.affordances;
                jr["items"].push_back(std::move(ji));
            }
            jf["rooms"].push_back(std::move(jr));
        }
        doc["floors"].push_back(std::move(jf));
    }
    return doc.dump(2) + "\n";
}

std::vector<Item> list_items(const SceneGraph& sg) {
    std::vector<Item> items = sg.items;
    std::sort(items.begin(), items.end(),
              [](const Item& a, const Item& b) { return a.id < b.id; });
    return items;
}

SceneGraph prune(const SceneGraph& sg, const std::set<std::string>& keep) {
    for (const auto& id : keep)
        if (!sg.find_item(id))
            throw SceneError("prune: unknown item id '" + id + "'");
    SceneGraph out = sg;
    std::erase_if(out.items, [&](const Item& item) { return !keep.count(item.id); });
    return out;
}

std::vector<pddl::Atom> encode_scene_facts(const SceneGraph& sg, const pddl::DomainAst& d,
                                           const SceneVocabulary& vocab) {
    for (const auto& pred :
         {vocab.neighbor_predicate, vocab.item_at_predicate, vocab.item_accessible_predicate})
        if (!d.find_predicate(pred))
            throw pddl::SemanticError("domain '" + d.name +
                                      "' does not declare required predicate '" + pred + "'");

    std::vector<pddl::Atom> facts;
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& room : sg.rooms)
        for (const auto& n : room.neighbors)
            pairs.insert({std::min(room.id, n), std::max(room.id, n)});
    for (const auto& [a, b] : pairs) {
        facts.push_back({vocab.neighbor_predicate, {a, b}});
        facts.push_back({vocab.neighbor_predicate, {b, a}});
    }
    for (const auto& item : list_items(sg)) {
        if (!item.accessible)
            continue;
        facts.push_back({vocab.item_at_predicate, {item.id, item.room}});
        facts.push_back({vocab.item_accessible_predicate, {item.id}});
    }
    return facts;
}

std::vector<pddl::Atom> encode_item_attribute_facts(const SceneGraph& sg,
                                                    const pddl::DomainAst& d,
                                                    const SceneVocabulary& vocab) {
    std::vector<pddl::Atom> facts;
    auto emit = [&](const std::string& pred, const std::string& item_id) {
        if (!d.find_predicate(pred))
            return;
        pddl::Atom atom{pred, {item_id}};
        if (std::find(facts.begin(), facts.end(), atom) == facts.end())
            facts.push_back(std::move(atom));
    };
    for (const auto& item : list_items(sg)) {
        for (const auto& aff : item.affordances) {
            auto it = vocab.affordance_predicates.find(aff);
            if (it != vocab.affordance_predicates.end())
                emit(it->second, item.id);
        }
        auto nit = vocab.name_predicates.find(item.name);
        if (nit != vocab.name_predicates.end())
            for (const auto& pred : nit->second)
                emit(pred, item.id);
        for (const auto& rule : vocab.state_rules) {
            auto sit = item.states.find(rule.key);
            if (sit != item.states.end() && sit->second == rule.value)
                emit(rule.predicate, item.id);
        }
    }
    return facts;
}

}  // namespace delta::scene
