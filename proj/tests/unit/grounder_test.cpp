#include <doctest.h>

#include "delta/ground/grounder.hpp"
#include "delta/pddl/parser.hpp"
#include "delta/search/astar.hpp"
#include "../support/bfs_oracle.hpp"
#include "../support/fixtures.hpp"

using namespace delta;
using testsupport::read_asset;

namespace {

const char* kMopToyProblem = R"(
(define (problem mop_toy)
    (:domain house_cleaning)
    (:objects
        robot - agent
        kitchen lounge hall - room
        mop towel - item
    )
    (:init
        (agent_at robot kitchen)
        (neighbor kitchen hall) (neighbor hall kitchen)
        (neighbor hall lounge) (neighbor lounge hall)
        (item_at mop kitchen) (item_accessible mop) (item_pickable mop)
        (item_is_mop mop) (mop_clean mop)
        (item_at towel lounge) (item_accessible towel) (item_pickable towel)
    )
    (:goal (and (floor_clean lounge)))
)
)";

}  // namespace

TEST_CASE("mop_floor grounds only over the mop item") {
    pddl::DomainAst d = pddl::parse_domain(read_asset("domains/house_cleaning/domain.pddl"));
    pddl::ProblemAst p = pddl::parse_problem(kMopToyProblem, d);
    ground::GroundTask task = ground::ground(d, p);
    size_t mop_floor_count = 0;
    for (const auto& a : task.actions)
        if (a.name == "mop_floor") {
            ++mop_floor_count;
            CHECK(a.args[1] == "mop");  // item_is_mop filters the towel out
        }
    CHECK(mop_floor_count >= 1);
    CHECK(mop_floor_count <= 6);  // 1 agent x 2 items x 3 rooms type-consistent bound
}

TEST_CASE("a problem whose goal holds in init grounds to an immediately solved task") {
    pddl::DomainAst d = pddl::parse_domain(read_asset("domains/pc_assembly/domain.pddl"));
    pddl::ProblemAst p = pddl::parse_problem(read_asset("toys/goal_in_init.pddl"), d);
    ground::GroundTask task = ground::ground(d, p);
    search::StateBits init = search::StateBits::from_ids(task.num_facts(), task.init);
    CHECK(init.contains_all(task.goal_pos));
    CHECK(init.contains_none(task.goal_neg));
}

TEST_CASE("objects of a type no parameter accepts contribute nothing") {
    const char* domain_text = R"(
        (define (domain typed)
            (:requirements :strips :typing)
            (:types box ghost - object)
            (:predicates (open ?b - box))
            (:action open_box
                :parameters (?b - box)
                :precondition (and)
                :effect (and (open ?b))))
    )";
    pddl::DomainAst d = pddl::parse_domain(domain_text);
    pddl::ProblemAst with_ghost = pddl::parse_problem(
        "(define (problem t) (:domain typed) (:objects b1 - box spectre - ghost)"
        " (:init) (:goal (and (open b1))))",
        d);
    pddl::ProblemAst without = pddl::parse_problem(
        "(define (problem t) (:domain typed) (:objects b1 - box)"
        " (:init) (:goal (and (open b1))))",
        d);
    CHECK(ground::ground(d, with_ghost).actions.size() ==
          ground::ground(d, without).actions.size());
}

TEST_CASE("grounding the same pair twice yields identical orderings") {
    pddl::DomainAst d = pddl::parse_domain(read_asset("domains/house_cleaning/domain.pddl"));
    pddl::ProblemAst p =
        pddl::parse_problem(read_asset("problems/house_cleaning_shelbiana.pddl"), d);
    CHECK(ground::dump_task(ground::ground(d, p)) == ground::dump_task(ground::ground(d, p)));
}

TEST_CASE("the instantiation cap aborts pathological grounding") {
    pddl::DomainAst d = pddl::parse_domain(read_asset("domains/pc_assembly/domain.pddl"));
    pddl::ProblemAst p = pddl::parse_problem(read_asset("toys/fetch_far.pddl"), d);
    ground::GroundOptions opts;
    opts.instantiation_cap = 10;
    CHECK_THROWS_AS(ground::ground(d, p, opts), ground::GroundingLimitError);
}

TEST_CASE("reachability pruning preserves the BFS optimum on the toy corpus") {
    const std::pair<const char*, const char*> cases[] = {
        {"domains/pc_assembly/domain.pddl", "toys/fetch_small.pddl"},
        {"domains/pc_assembly/domain.pddl", "toys/swap_two.pddl"},
        {"domains/house_cleaning/domain.pddl", "toys/mop_two_rooms.pddl"},
        {"domains/house_cleaning/domain.pddl", "toys/dispose_two.pddl"},
        {"domains/laundry/domain.pddl", "toys/laundry_mini.pddl"},
        {"domains/dining_table_setup/domain.pddl", "toys/dining_mini.pddl"},
    };
    for (const auto& [domain_path, problem_path] : cases) {
        CAPTURE(problem_path);
        pddl::DomainAst d = pddl::parse_domain(read_asset(domain_path));
        pddl::ProblemAst p = pddl::parse_problem(read_asset(problem_path), d);
        ground::GroundOptions raw;
        raw.reachability_prune = false;
        ground::GroundTask pruned = ground::ground(d, p);
        ground::GroundTask unpruned = ground::ground(d, p, raw);
        CHECK(pruned.actions.size() <= unpruned.actions.size());
        auto a = testsupport::bfs_optimal_length(pruned);
        auto b = testsupport::bfs_optimal_length(unpruned);
        CHECK(a.solvable == b.solvable);
        CHECK(a.optimal_length == b.optimal_length);
    }
}

TEST_CASE("negated preconditions stay as explicit sets instead of compiled facts") {
    pddl::DomainAst d = pddl::parse_domain(read_asset("domains/pc_assembly/domain.pddl"));
    pddl::ProblemAst p = pddl::parse_problem(read_asset("toys/fetch_small.pddl"), d);
    ground::GroundTask task = ground::ground(d, p);
    bool saw_pre_neg = false;
    for (const auto& a : task.actions) {
        if (a.name == "pick")
            saw_pre_neg = saw_pre_neg || !a.pre_neg.empty();
        for (int f : a.pre_neg)
            CHECK(task.facts.atom_of(f).predicate == "agent_carrying");
    }
    CHECK(saw_pre_neg);
}
