#include <doctest.h>

#include <random>

#include "delta/harness/bundle.hpp"
#include "delta/pddl/parser.hpp"
#include "delta/scene/scene_graph.hpp"
#include "../support/fixtures.hpp"

using namespace delta;
using testsupport::read_asset;

TEST_CASE("shelbiana loads with 12 rooms and 34 items") {
    scene::SceneGraph sg = scene::load_scene_graph(read_asset("scenes/shelbiana.json"));
    CHECK(sg.rooms.size() == 12);
    CHECK(sg.items.size() == 34);
    CHECK(sg.floors.size() == 2);
    CHECK(scene::list_items(sg).size() == 34);
}

TEST_CASE("bundled scenes match the published layer sizes") {
    auto dims = [](const std::string& name) {
        scene::SceneGraph sg = scene::load_scene_graph(read_asset("scenes/" + name + ".json"));
        return std::pair{sg.rooms.size(), sg.items.size()};
    };
    CHECK(dims("parole") == std::pair<size_t, size_t>{7, 31});
    CHECK(dims("kemblesville") == std::pair<size_t, size_t>{9, 16});
    CHECK(dims("allensville") == std::pair<size_t, size_t>{11, 42});
}

TEST_CASE("minimal scene: one floor, one room, zero items") {
    scene::SceneGraph sg = scene::load_scene_graph(
        R"({"name":"tiny","floors":[{"id":"f1","rooms":[{"id":"den"}]}]})");
    CHECK(sg.rooms.size() == 1);
    CHECK(sg.items.empty());
    CHECK(scene::list_items(sg).empty());
}

TEST_CASE("one-sided adjacency is closed to symmetry") {
    scene::SceneGraph sg = scene::load_scene_graph(R"({
        "name": "asym",
        "floors": [{"id": "f1", "rooms": [
            {"id": "kitchen", "neighbors": ["corridor"]},
            {"id": "corridor", "neighbors": []}
        ]}]})");
    CHECK(sg.find_room("kitchen")->neighbors.count("corridor") == 1);
    CHECK(sg.find_room("corridor")->neighbors.count("kitchen") == 1);
}

TEST_CASE("structural errors are rejected") {
    CHECK_THROWS_AS(scene::load_scene_graph("not json"), scene::SceneError);
    CHECK_THROWS_AS(scene::load_scene_graph(R"({"name":"x"})"), scene::SceneError);
    CHECK_THROWS_AS(scene::load_scene_graph(R"({
        "name": "dangling",
        "floors": [{"id":"f1","rooms":[{"id":"a","neighbors":["ghost"]}]}]})"),
                    scene::SceneError);
    CHECK_THROWS_AS(scene::load_scene_graph(R"({
        "name": "dup",
        "floors": [{"id":"f1","rooms":[
            {"id":"a","items":[{"id":"x"},{"id":"x"}]}]}]})"),
                    scene::SceneError);
    CHECK_THROWS_AS(scene::load_scene_graph(R"({
        "name": "selfadj",
        "floors": [{"id":"f1","rooms":[{"id":"a","neighbors":["a"]}]}]})"),
                    scene::SceneError);
}

TEST_CASE("a disconnected room graph warns instead of failing") {
    std::vector<std::string> warnings;
    scene::load_scene_graph(R"({
        "name": "split",
        "floors": [{"id":"f1","rooms":[{"id":"a"},{"id":"b"}]}]})",
                            &warnings);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("disconnected") != std::string::npos);
}

TEST_CASE("list_items orders lexicographically regardless of insertion order") {
    scene::SceneGraph sg = scene::load_scene_graph(R"({
        "name": "order",
        "floors": [{"id":"f1","rooms":[{"id":"den","items":[
            {"id":"cola_can"},{"id":"banana_peel"}]}]}]})");
    auto items = scene::list_items(sg);
    REQUIRE(items.size() == 2);
    CHECK(items[0].id == "banana_peel");
    CHECK(items[1].id == "cola_can");
}

TEST_CASE("prune keeps rooms and adjacency intact") {
    scene::SceneGraph sg = scene::load_scene_graph(read_asset("scenes/shelbiana.json"));

    SUBCASE("keeping every item is the identity") {
        std::set<std::string> all;
        for (const auto& i : sg.items)
            all.insert(i.id);
        CHECK(scene::prune(sg, all) == sg);
    }
    SUBCASE("keeping nothing leaves rooms and floors") {
        scene::SceneGraph pruned = scene::prune(sg, {});
        CHECK(pruned.items.empty());
        CHECK(pruned.rooms == sg.rooms);
        CHECK(pruned.floors == sg.floors);
    }
    SUBCASE("the bundled house-cleaning keep set keeps 8 of 34 items") {
        std::set<std::string> keep = {"cola_can",    "banana_peel",  "rotting_apple",
                                      "mop",         "rubbish_bin",  "kitchen_sink",
                                      "bathroom_sink", "charging_station"};
        scene::SceneGraph pruned = scene::prune(sg, keep);
        CHECK(pruned.items.size() == keep.size());
        CHECK(pruned.rooms.size() == 12);
        scene::SceneGraph unchanged = sg;
        CHECK(sg == unchanged);  // input graph untouched
    }
    SUBCASE("unknown ids are rejected") {
        CHECK_THROWS_AS(scene::prune(sg, {"unicorn"}), scene::SceneError);
    }
}

TEST_CASE("property: pruning is idempotent and never alters connectivity") {
    scene::SceneGraph sg = scene::load_scene_graph(read_asset("scenes/allensville.json"));
    std::mt19937 rng(99);
    std::vector<std::string> ids;
    for (const auto& i : sg.items)
        ids.push_back(i.id);
    for (int trial = 0; trial < 25; ++trial) {
        std::set<std::string> keep;
        for (const auto& id : ids)
            if (rng() % 2)
                keep.insert(id);
        scene::SceneGraph once = scene::prune(sg, keep);
        CHECK(scene::prune(once, keep) == once);
        CHECK(once.rooms == sg.rooms);  // adjacency matrices equal
    }
}

TEST_CASE("scene json roundtrip preserves the graph") {
    for (const std::string name : {"parole", "kemblesville"}) {
        scene::SceneGraph sg = scene::load_scene_graph(read_asset("scenes/" + name + ".json"));
        scene::SceneGraph again = scene::load_scene_graph(scene::scene_to_json(sg));
        CHECK(sg == again);
    }
}

TEST_CASE("encode_scene_facts emits paired neighbor atoms and per-item facts") {
    pddl::DomainAst d = pddl::parse_domain(read_asset("domains/house_cleaning/domain.pddl"));
    scene::SceneGraph sg = scene::load_scene_graph(R"({
        "name": "enc",
        "floors": [{"id":"f1","rooms":[
            {"id":"kitchen","neighbors":["corridor"],
             "items":[{"id":"mop","accessible":true}]},
            {"id":"corridor"},
            {"id":"bathroom_1","neighbors":["corridor"],
             "items":[{"id":"safe","accessible":false}]}
        ]}]})");
    std::vector<pddl::Atom> facts = scene::encode_scene_facts(sg, d);

    auto has = [&](const pddl::Atom& a) {
        return std::find(facts.begin(), facts.end(), a) != facts.end();
    };
    CHECK(has({"neighbor", {"kitchen", "corridor"}}));
    CHECK(has({"neighbor", {"corridor", "kitchen"}}));
    CHECK(has({"item_at", {"mop", "kitchen"}}));
    CHECK(has({"item_accessible", {"mop"}}));
    // inaccessible items contribute no facts
    CHECK_FALSE(has({"item_at", {"safe", "bathroom_1"}}));
    CHECK_FALSE(has({"item_accessible", {"safe"}}));
    // 2 adjacent pairs, 1 accessible item
    CHECK(facts.size() == 2 * 2 + 2 * 1);
}

TEST_CASE("encode_scene_facts on an bare scene is empty; missing predicates error") {
    pddl::DomainAst d = pddl::parse_domain(read_asset("domains/house_cleaning/domain.pddl"));
    scene::SceneGraph bare = scene::load_scene_graph(
        R"({"name":"bare","floors":[{"id":"f1","rooms":[{"id":"den"}]}]})");
    CHECK(scene::encode_scene_facts(bare, d).empty());

    pddl::DomainAst no_neighbor =
        pddl::parse_domain("(define (domain x) (:predicates (item_at ?i ?r)"
                           " (item_accessible ?i)))");
    CHECK_THROWS_AS(scene::encode_scene_facts(bare, no_neighbor), pddl::SemanticError);
}

TEST_CASE("property: encoded fact count follows the closed form over bundled scenes") {
    pddl::DomainAst d = pddl::parse_domain(read_asset("domains/house_cleaning/domain.pddl"));
    for (const std::string name : {"parole", "allensville", "shelbiana", "kemblesville"}) {
        scene::SceneGraph sg = scene::load_scene_graph(read_asset("scenes/" + name + ".json"));
        std::set<std::pair<std::string, std::string>> pairs;
        size_t accessible = 0;
        for (const auto& r : sg.rooms)
            for (const auto& n : r.neighbors)
                pairs.insert({std::min(r.id, n), std::max(r.id, n)});
        for (const auto& i : sg.items)
            accessible += i.accessible;
        std::vector<pddl::Atom> facts = scene::encode_scene_facts(sg, d);
        CHECK(facts.size() == 2 * pairs.size() + 2 * accessible);
        for (const auto& atom : facts)
            for (const auto& arg : atom.args)
                CHECK((sg.find_room(arg) || sg.find_item(arg)));
    }
}

namespace {

scene::SceneGraph relevance_toy() {
    return scene::load_scene_graph(R"({
        "name": "toy",
        "floors": [{"id":"f1","rooms":[
            {"id":"kitchen","neighbors":["bedroom"],"items":[
                {"id":"cola_can","name":"cola can","accessible":true,
                 "affordances":["pick"]},
                {"id":"rubbish_bin","name":"rubbish bin","accessible":true,
                 "affordances":["dispose_into"]}]},
            {"id":"bedroom","items":[
                {"id":"mop_1","name":"mop","accessible":true,
                 "states":{"clean":true},"affordances":["pick","mop_floor"]},
                {"id":"mop_2","name":"mop","accessible":true,
                 "states":{"clean":true},"affordances":["pick","mop_floor"]},
                {"id":"bed","name":"bed","accessible":true}]}
        ]}]})");
}

}  // namespace

TEST_CASE("relevance pruning follows the hand-computed fixpoints") {
    pddl::DomainAst d = pddl::parse_domain(read_asset("domains/house_cleaning/domain.pddl"));
    scene::SceneGraph sg = relevance_toy();
    scene::SceneVocabulary vocab = harness::bundle_vocabulary();

    SUBCASE("mopping goal keeps every mop and excludes the bed") {
        pddl::GoalFormula goal{{{{"floor_clean", {"kitchen"}}, false}}};
        std::set<std::string> kept = scene::relevance_prune(sg, d, goal, vocab);
        CHECK(kept == std::set<std::string>{"mop_1", "mop_2"});
    }
    SUBCASE("disposal goal keeps the item and the bin") {
        pddl::GoalFormula goal{{{{"item_disposed", {"cola_can"}}, false}}};
        std::set<std::string> kept = scene::relevance_prune(sg, d, goal, vocab);
        CHECK(kept == std::set<std::string>{"cola_can", "rubbish_bin"});
    }
    SUBCASE("the empty goal keeps nothing") {
        CHECK(scene::relevance_prune(sg, d, {}, vocab).empty());
    }
    SUBCASE("a goal over an undeclared predicate is an error") {
        pddl::GoalFormula goal{{{{"sparkling", {"kitchen"}}, false}}};
        CHECK_THROWS_AS(scene::relevance_prune(sg, d, goal, vocab), pddl::SemanticError);
    }
}
