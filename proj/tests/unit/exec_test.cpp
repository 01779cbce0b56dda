#include <doctest.h>

#include <random>

#include "delta/exec/executor.hpp"
#include "delta/ground/grounder.hpp"
#include "delta/pddl/parser.hpp"
#include "delta/search/astar.hpp"
#include "../support/fixtures.hpp"
#include "../support/text_sim.hpp"

using namespace delta;
using testsupport::read_asset;

namespace {

struct Fixture {
    pddl::DomainAst d;
    pddl::ProblemAst p;

    Fixture()
        : d(pddl::parse_domain(read_asset("domains/house_cleaning/domain.pddl"))),
          p(pddl::parse_problem(read_asset("listings/house_goal_problem.pddl"), d)) {}
};

}  // namespace

TEST_CASE("mop_floor applies with the listing's effect semantics") {
    Fixture fx;
    exec::State s = {
        {"agent_at", {"robot", "kitchen"}},  {"item_is_mop", {"mop"}},
        {"item_pickable", {"mop"}},          {"agent_has_item", {"robot", "mop"}},
        {"mop_clean", {"mop"}},              {"battery_full", {"robot"}},
        {"item_at", {"rubbish_bin", "kitchen"}},
    };
    exec::BoundAction mop =
        exec::instantiate(fx.d, fx.p, {"mop_floor", {"robot", "mop", "kitchen"}});
    exec::State after = exec::apply(s, mop);
    CHECK(after.count({"floor_clean", {"kitchen"}}) == 1);
    CHECK(after.count({"mop_clean", {"mop"}}) == 0);
    CHECK(after.count({"battery_full", {"robot"}}) == 0);
    // frame property: untouched atoms carry over
    CHECK(after.count({"agent_at", {"robot", "kitchen"}}) == 1);
    CHECK(after.count({"item_at", {"rubbish_bin", "kitchen"}}) == 1);
    CHECK(exec::apply(s, mop) == after);  // deterministic
}

TEST_CASE("an action with empty effects leaves the state unchanged") {
    pddl::DomainAst d = pddl::parse_domain(
        "(define (domain noop) (:predicates (p ?x))"
        " (:action wait :parameters (?x) :precondition (and) :effect (and)))");
    pddl::ProblemAst p = pddl::parse_problem(
        "(define (problem t) (:domain noop) (:objects a) (:init (p a)) (:goal (and)))", d);
    exec::State s = exec::initial_state(p);
    CHECK(exec::apply(s, exec::instantiate(d, p, {"wait", {"a"}})) == s);
}

TEST_CASE("mopping an already clean floor violates the negated precondition") {
    Fixture fx;
    exec::State s = {
        {"agent_at", {"robot", "kitchen"}}, {"item_is_mop", {"mop"}},
        {"item_pickable", {"mop"}},         {"agent_has_item", {"robot", "mop"}},
        {"mop_clean", {"mop"}},             {"floor_clean", {"kitchen"}},
    };
    exec::BoundAction mop =
        exec::instantiate(fx.d, fx.p, {"mop_floor", {"robot", "mop", "kitchen"}});
    try {
        exec::apply(s, mop);
        FAIL("expected precondition violation");
    } catch (const exec::SimulationError& e) {
        CHECK(e.reason() == exec::FailureReason::PreconditionViolated);
        CHECK(std::string(e.what()).find("floor_clean") != std::string::npos);
    }
}

TEST_CASE("an empty plan simulates to the initial state") {
    Fixture fx;
    CHECK(exec::simulate(fx.d, fx.p, {}) == exec::initial_state(fx.p));
}

TEST_CASE("picking while already carrying fails at that step") {
    Fixture fx;
    std::vector<exec::PlanStep> plan = {
        {"go", {"robot", "corridor", "kitchen"}},
        {"pick", {"robot", "banana_peel", "kitchen"}},
        {"pick", {"robot", "mop", "kitchen"}},  // capacity is one item
    };
    try {
        exec::simulate(fx.d, fx.p, plan);
        FAIL("expected failure at step 3");
    } catch (const exec::SimulationError& e) {
        CHECK(e.step() == 2);
        CHECK(e.reason() == exec::FailureReason::PreconditionViolated);
    }
}

TEST_CASE("plans from the planner validate on a bundled instance") {
    Fixture fx;
    ground::GroundTask task = ground::ground(fx.d, fx.p);
    search::SearchResult res = search::solve(task, {});
    REQUIRE(res.status == search::SearchStatus::Solved);
    auto steps = exec::plan_steps(task, *res.plan);
    exec::ValidationReport report = exec::validate(fx.d, fx.p, steps);
    CHECK(report.valid());
    CHECK_FALSE(report.failing_step.has_value());
}

TEST_CASE("a plan stopping short of mop_clean is invalid with goal-unsatisfied") {
    Fixture fx;
    ground::GroundTask task = ground::ground(fx.d, fx.p);
    search::SearchResult res = search::solve(task, {});
    REQUIRE(res.status == search::SearchStatus::Solved);
    auto steps = exec::plan_steps(task, *res.plan);
    // executable prefix: drop the tail until the goal no longer holds
    steps.pop_back();
    exec::ValidationReport report = exec::validate(fx.d, fx.p, steps);
    CHECK_FALSE(report.valid());
    CHECK(report.reason == exec::FailureReason::GoalUnsatisfied);
}

TEST_CASE("a plan naming a nonexistent ground action is invalid as unknown-action") {
    Fixture fx;
    exec::ValidationReport report =
        exec::validate(fx.d, fx.p, {{"teleport", {"robot", "kitchen"}}});
    CHECK_FALSE(report.valid());
    CHECK(report.reason == exec::FailureReason::UnknownAction);
    CHECK(report.failing_step == size_t{0});

    // wrong arity and unknown object are unknown ground actions as well
    CHECK(*exec::validate(fx.d, fx.p, {{"go", {"robot", "kitchen"}}}).reason ==
          exec::FailureReason::UnknownAction);
    CHECK(*exec::validate(fx.d, fx.p, {{"go", {"robot", "kitchen", "attic"}}}).reason ==
          exec::FailureReason::UnknownAction);
}

TEST_CASE("the golden laundry plan reaches the frozen final state") {
    pddl::DomainAst d = pddl::parse_domain(read_asset("domains/laundry/domain.pddl"));
    pddl::ProblemAst p =
        pddl::parse_problem(read_asset("problems/laundry_kemblesville.pddl"), d);
    auto plan = exec::parse_plan_text(read_asset("golden/laundry_kemblesville.plan"));
    exec::State final = exec::final_state(d, p, plan);
    CHECK(final.count({"clothes_clean", {"dirty_clothes"}}) == 1);
    CHECK(final.count({"item_at", {"dirty_clothes", "bedroom_1"}}) == 1);

    std::string rendered;
    for (const auto& atom : final)
        rendered += atom.str() + "\n";
    CHECK(rendered == read_asset("golden/laundry_kemblesville.final_state.txt"));
}

TEST_CASE("plan text io roundtrips the planner format") {
    auto steps = exec::parse_plan_text("(go robot r1 r2)\n; comment\n\n(pick robot ball r2)\n");
    REQUIRE(steps.size() == 2);
    CHECK(steps[0].str() == "(go robot r1 r2)");
    CHECK(exec::parse_plan_text(exec::plan_steps_to_text(steps)) == steps);
}

TEST_CASE("property: the validator agrees with the independent simulator on mutated plans") {
    Fixture fx;
    ground::GroundTask task = ground::ground(fx.d, fx.p);
    search::SearchResult res = search::solve(task, {});
    REQUIRE(res.status == search::SearchStatus::Solved);
    auto base = exec::plan_steps(task, *res.plan);

    std::mt19937 rng(4242);
    std::vector<std::string> objects;
    for (const auto& o : fx.p.objects)
        objects.push_back(o.name);

    for (int trial = 0; trial < 60; ++trial) {
        auto mutant = base;
        switch (trial % 3) {
            case 0:  // delete one action
                mutant.erase(mutant.begin() + rng() % mutant.size());
                break;
            case 1: {  // swap two actions
                size_t i = rng() % mutant.size(), j = rng() % mutant.size();
                std::swap(mutant[i], mutant[j]);
                break;
            }
            case 2: {  // rename one object
                auto& step = mutant[rng() % mutant.size()];
                if (!step.args.empty())
                    step.args[rng() % step.args.size()] = objects[rng() % objects.size()];
                break;
            }
        }
        exec::ValidationReport verdict = exec::validate(fx.d, fx.p, mutant);
        auto oracle = testsupport::simulate_strings(fx.d, fx.p, mutant);
        if (!oracle) {
            CHECK_FALSE(verdict.valid());
        } else {
            bool goal = testsupport::goal_holds_strings(fx.p.goal, *oracle);
            CHECK(verdict.valid() == goal);
        }
    }
}
