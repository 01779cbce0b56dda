#include <doctest.h>

#include <json.hpp>

#include "delta/decomp/decomposer.hpp"
#include "delta/ground/grounder.hpp"
#include "delta/pddl/parser.hpp"
#include "delta/pddl/printer.hpp"
#include "../support/fixtures.hpp"

using namespace delta;
using testsupport::read_asset;

namespace {

struct Instance {
    pddl::DomainAst d;
    pddl::ProblemAst p0;
    decomp::SubGoalSequence golden;

    explicit Instance(const std::string& domain_id, const std::string& scene_id)
        : d(pddl::parse_domain(read_asset("domains/" + domain_id + "/domain.pddl"))),
          p0(pddl::parse_problem(
              read_asset("problems/" + domain_id + "_" + scene_id + ".pddl"), d)),
          golden(decomp::parse_subgoal_sequence(
              read_asset("domains/" + domain_id + "/subgoals.pddl"), d, p0)) {}
};

}  // namespace

TEST_CASE("sub-goal sequences parse one conjunction per form") {
    Instance fx("house_cleaning", "parole");
    CHECK(fx.golden.size() == 6);
    CHECK(fx.golden.subgoals[0].literals.size() == 3);
    CHECK(fx.golden.subgoals[1].str() == "(and (floor_clean kitchen))");

    SUBCASE("fenced responses are tolerated") {
        auto seq = decomp::parse_subgoal_sequence(
            "```\n(and (floor_clean kitchen))\n(battery_full robot)\n```", fx.d, fx.p0);
        CHECK(seq.size() == 2);
    }
    SUBCASE("an empty sequence is an error") {
        CHECK_THROWS_AS(decomp::parse_subgoal_sequence("no goals here", fx.d, fx.p0),
                        pddl::SemanticError);
    }
    SUBCASE("literals are checked against the problem") {
        CHECK_THROWS_AS(
            decomp::parse_subgoal_sequence("(and (floor_clean attic))", fx.d, fx.p0),
            pddl::UndeclaredItemError);
        CHECK_THROWS_AS(
            decomp::parse_subgoal_sequence("(and (sparkling kitchen))", fx.d, fx.p0),
            pddl::SemanticError);
    }
}

TEST_CASE("a single-sub-goal decomposition degenerates to the direct solve") {
    Instance fx("house_cleaning", "parole");
    decomp::SubGoalSequence g0{{fx.p0.goal}};
    decomp::DecompositionRun run = decomp::autoregressive_solve(fx.d, fx.p0, g0);
    REQUIRE(run.status == decomp::RunStatus::Solved);

    ground::GroundTask task = ground::ground(fx.d, fx.p0);
    search::SearchResult direct = search::solve(task, {});
    REQUIRE(direct.status == search::SearchStatus::Solved);
    CHECK(run.concat_plan.size() == direct.plan->length());
}

TEST_CASE("the bundled house-cleaning sequence solves and chains exactly") {
    Instance fx("house_cleaning", "parole");
    decomp::DecompositionRun run = decomp::autoregressive_solve(fx.d, fx.p0, fx.golden);
    REQUIRE(run.status == decomp::RunStatus::Solved);
    CHECK(run.sub_results.size() == 6);

    // Algorithm chaining: each sub-plan's final state is the next problem's init.
    for (size_t i = 0; i + 1 < run.sub_results.size(); ++i) {
        exec::State next_init(run.sub_results[i + 1].problem.init.begin(),
                              run.sub_results[i + 1].problem.init.end());
        CHECK(run.sub_results[i].final_state == next_init);
    }
    // First sub-problem starts from the original init.
    exec::State first_init(run.sub_results[0].problem.init.begin(),
                           run.sub_results[0].problem.init.end());
    CHECK(first_init == exec::initial_state(fx.p0));

    CHECK(decomp::verify_against_original(fx.d, fx.p0, run).valid());

    ground::GroundTask task = ground::ground(fx.d, fx.p0);
    search::SearchResult direct = search::solve(task, {});
    CHECK(run.concat_plan.size() >= direct.plan->length());
    CHECK(run.total_expanded() * 10 <= direct.expanded);
}

TEST_CASE("dropping the final mop_clean sub-goal invalidates the concatenated plan") {
    Instance fx("house_cleaning", "parole");
    decomp::SubGoalSequence mutated = fx.golden;
    mutated.subgoals.erase(mutated.subgoals.begin() + 4);  // second (mop_clean mop)
    decomp::DecompositionRun run = decomp::autoregressive_solve(fx.d, fx.p0, mutated);
    REQUIRE(run.status == decomp::RunStatus::Solved);
    exec::ValidationReport verdict = decomp::verify_against_original(fx.d, fx.p0, run);
    CHECK_FALSE(verdict.valid());
    CHECK(verdict.reason == exec::FailureReason::GoalUnsatisfied);
}

TEST_CASE("reordered sub-goals that still reach every conjunct stay valid") {
    Instance fx("house_cleaning", "parole");
    decomp::SubGoalSequence reordered = fx.golden;
    std::swap(reordered.subgoals[0], reordered.subgoals[1]);  // mop kitchen before disposal
    decomp::DecompositionRun run = decomp::autoregressive_solve(fx.d, fx.p0, reordered);
    REQUIRE(run.status == decomp::RunStatus::Solved);
    CHECK(decomp::verify_against_original(fx.d, fx.p0, run).valid());
}

TEST_CASE("an unsatisfiable later sub-goal aborts the run at its index") {
    Instance fx("house_cleaning", "parole");
    decomp::SubGoalSequence bad = fx.golden;
    pddl::GoalFormula conflict{{{{"agent_has_item", {"robot", "cola_can"}}, false}}};
    bad.subgoals.insert(bad.subgoals.begin() + 1, conflict);  // cola_can was just disposed
    decomp::DecompositionRun run = decomp::autoregressive_solve(fx.d, fx.p0, bad);
    CHECK(run.status == decomp::RunStatus::SubproblemUnsolvable);
    CHECK(run.failed_index == size_t{1});
}

TEST_CASE("negative literals in sub-goals are supported and flagged") {
    Instance fx("house_cleaning", "parole");
    decomp::SubGoalSequence with_neg = fx.golden;
    with_neg.subgoals[0].literals.push_back({{"agent_carrying", {"robot"}}, true});
    decomp::DecompositionRun run = decomp::autoregressive_solve(fx.d, fx.p0, with_neg);
    REQUIRE(run.status == decomp::RunStatus::Solved);
    CHECK(run.used_negative_literals);
    nlohmann::json manifest = nlohmann::json::parse(
        decomp::run_manifest_json(fx.d, fx.p0, with_neg, run, false));
    CHECK(manifest["negative_literals"] == true);
}

TEST_CASE("the run manifest carries every intermediate artifact") {
    Instance fx("dining_table_setup", "parole");
    decomp::DecompositionRun run = decomp::autoregressive_solve(fx.d, fx.p0, fx.golden);
    REQUIRE(run.status == decomp::RunStatus::Solved);
    nlohmann::json manifest =
        nlohmann::json::parse(decomp::run_manifest_json(fx.d, fx.p0, fx.golden, run, false));
    CHECK(manifest["status"] == "solved");
    CHECK(manifest["sub_results"].size() == fx.golden.size());
    CHECK(manifest["subgoals"].size() == fx.golden.size());
    CHECK(manifest.contains("concat_plan"));
    CHECK_FALSE(manifest.contains("total_time_s"));  // times excluded on request
    for (const auto& sub : manifest["sub_results"]) {
        CHECK(sub.contains("problem_pddl"));
        pddl::ProblemAst sub_p =
            pddl::parse_problem(sub["problem_pddl"].get<std::string>(), fx.d);
        CHECK(sub_p.domain_name == fx.d.name);
    }
}

TEST_CASE("sub-problem solving honors an injected solver") {
    Instance fx("house_cleaning", "parole");
    int calls = 0;
    decomp::Solver counting = [&](const ground::GroundTask& task,
                                  const search::SearchConfig& cfg) {
        ++calls;
        return search::solve(task, cfg);
    };
    decomp::DecompositionRun run =
        decomp::autoregressive_solve(fx.d, fx.p0, fx.golden, {}, counting);
    CHECK(run.status == decomp::RunStatus::Solved);
    CHECK(calls == 6);
}
