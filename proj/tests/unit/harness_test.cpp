#include <doctest.h>

#include <json.hpp>

#include "delta/harness/bundle.hpp"
#include "delta/harness/pipeline.hpp"
#include "delta/harness/report.hpp"
#include "delta/pddl/parser.hpp"
#include "../support/fixtures.hpp"

using namespace delta;
using testsupport::read_asset;

namespace {

harness::TrialConfig replay_config(const std::string& domain_id, const std::string& scene_id) {
    harness::TrialConfig cfg;
    cfg.domain_id = domain_id;
    cfg.scene_id = scene_id;
    cfg.backend = llm::Backend::Replay;
    return cfg;
}

llm::Transport forbidden_transport() {
    return [](const std::string&, const std::string&, const std::string&,
              double) -> std::string {
        throw llm::NetworkError("network use is forbidden in this test");
    };
}

}  // namespace

TEST_CASE("golden problems equal the deterministic builder output byte for byte") {
    harness::AssetStore assets(testsupport::assets_root());
    for (const auto& domain_id : harness::evaluation_domain_ids()) {
        harness::DomainContent content = harness::load_domain_content(assets, domain_id);
        pddl::DomainAst d = pddl::parse_domain(content.domain_pddl);
        auto kept_list = llm::parse_item_list(content.keep_list);
        std::set<std::string> keep(kept_list.begin(), kept_list.end());
        for (const auto& scene_id : harness::evaluation_scene_ids()) {
            scene::SceneGraph pruned =
                scene::prune(harness::load_scene(assets, scene_id), keep);
            std::string built = harness::build_problem_text(pruned, d, content,
                                                            domain_id + "_" + scene_id);
            CHECK(built == read_asset("problems/" + domain_id + "_" + scene_id + ".pddl"));
        }
    }
}

TEST_CASE("a replay trial succeeds hermetically and exposes its artifacts") {
    harness::AssetStore assets(testsupport::assets_root());
    harness::TrialConfig cfg = replay_config("house_cleaning", "parole");
    harness::TrialArtifacts artifacts;
    harness::TrialReport report =
        harness::run_pipeline(assets, cfg, {assets.path("fixtures/base")}, &artifacts,
                              forbidden_transport());
    REQUIRE(report.success);
    CHECK(report.orig_valid);
    CHECK(report.decomp_valid);
    CHECK(report.orig->plan_length == 20);
    CHECK(report.decomp->plan_length >= report.orig->plan_length);
    CHECK(report.decomp->expanded * 10 <= report.orig->expanded);
    CHECK(artifacts.domain_text.find("(:action mop_floor") != std::string::npos);
    CHECK(artifacts.kept_items.size() == 8);
    CHECK_FALSE(artifacts.problem_text.empty());
    CHECK_FALSE(artifacts.subgoals_text.empty());
    CHECK_FALSE(artifacts.decomposition_manifest_json.empty());
}

TEST_CASE("failure classification: seeded faults map to their designated classes") {
    harness::AssetStore assets(testsupport::assets_root());
    struct Case {
        const char* overlay;
        harness::FailureClass cls;
        harness::PipelineStep step;
    };
    const Case cases[] = {
        {"domain_syntax", harness::FailureClass::SyntaxError,
         harness::PipelineStep::DomainGeneration},
        {"domain_incorrect_action", harness::FailureClass::IncorrectAction,
         harness::PipelineStep::DomainGeneration},
        {"prune_unknown_item", harness::FailureClass::PruningError,
         harness::PipelineStep::ScenePruning},
        {"prune_drop_goal_item", harness::FailureClass::PruningError,
         harness::PipelineStep::ScenePruning},
        {"problem_syntax", harness::FailureClass::SyntaxError,
         harness::PipelineStep::ProblemGeneration},
        {"problem_undeclared", harness::FailureClass::UndeclaredItem,
         harness::PipelineStep::ProblemGeneration},
        {"decomp_missing_subgoal", harness::FailureClass::DecompositionError,
         harness::PipelineStep::Validation},
        {"decomp_conflict", harness::FailureClass::DecompositionError,
         harness::PipelineStep::Planning},
    };
    for (const auto& c : cases) {
        CAPTURE(c.overlay);
        harness::TrialConfig cfg = replay_config("house_cleaning", "shelbiana");
        harness::TrialReport report = harness::run_pipeline(
            assets, cfg,
            {assets.path("fixtures/faults/" + std::string(c.overlay)),
             assets.path("fixtures/base")});
        CHECK_FALSE(report.success);
        REQUIRE(report.failure_class.has_value());
        CHECK(harness::failure_class_name(*report.failure_class) ==
              harness::failure_class_name(c.cls));
        CHECK(harness::step_name(*report.failure_step) == harness::step_name(c.step));
    }
}

TEST_CASE("an unknown model id surfaces as a missing-fixture llm error") {
    harness::AssetStore assets(testsupport::assets_root());
    harness::TrialConfig cfg = replay_config("house_cleaning", "parole");
    cfg.llm.model = "gpt-nonexistent";
    harness::TrialReport report =
        harness::run_pipeline(assets, cfg, {assets.path("fixtures/base")});
    CHECK_FALSE(report.success);
    CHECK(*report.failure_class == harness::FailureClass::LlmError);
    CHECK(*report.failure_step == harness::PipelineStep::DomainGeneration);
}

TEST_CASE("a forced planner timeout classifies the original track") {
    harness::AssetStore assets(testsupport::assets_root());
    harness::TrialConfig cfg = replay_config("house_cleaning", "shelbiana");
    cfg.planner.timeout_s = 0.001;
    harness::TrialReport report =
        harness::run_pipeline(assets, cfg, {assets.path("fixtures/base")});
    CHECK_FALSE(report.success);
    CHECK(*report.failure_class == harness::FailureClass::PlannerTimeout);
    // the decomposed side still finishes: its sub-searches stay tiny
    CHECK(report.decomp_valid);
}

TEST_CASE("trial aggregation: seeded-failure overlays give the expected rate") {
    harness::AssetStore assets(testsupport::assets_root());
    harness::TrialConfig cfg = replay_config("house_cleaning", "shelbiana");
    cfg.trials = 10;
    for (const char* name :
         {"domain_syntax", "problem_undeclared", "decomp_conflict", "prune_unknown_item"})
        cfg.fault_overlays.push_back(assets.path("fixtures/faults/" + std::string(name)));
    harness::Aggregate agg = harness::run_trials(assets, cfg);
    CHECK(agg.trials == 10);
    CHECK(agg.successes == 6);  // 60%
    CHECK(agg.failure_counts.size() >= 3);
    CHECK(agg.gt_length == 23);
}

TEST_CASE("replay trials are deterministic across repetition and workers") {
    harness::AssetStore assets(testsupport::assets_root());
    harness::TrialConfig cfg = replay_config("house_cleaning", "parole");
    cfg.trials = 4;
    cfg.jobs = 2;
    harness::Aggregate a = harness::run_trials(assets, cfg, forbidden_transport());
    cfg.jobs = 1;
    harness::Aggregate b = harness::run_trials(assets, cfg, forbidden_transport());
    CHECK(a.successes == 4);
    CHECK(harness::aggregate_to_json(a, false) == harness::aggregate_to_json(b, false));
    CHECK(a.mean_len_orig == 20.0);
    CHECK(a.mean_expanded_decomp == a.reports[0].decomp->expanded);
}

TEST_CASE("reports mirror the benchmark table columns") {
    harness::AssetStore assets(testsupport::assets_root());
    harness::TrialConfig cfg = replay_config("house_cleaning", "parole");
    harness::Aggregate agg = harness::run_trials(assets, cfg);

    SUBCASE("csv carries one row and the gt column") {
        std::string csv = harness::emit_report({agg}, harness::ReportFormat::Csv, false);
        auto first_newline = csv.find('\n');
        CHECK(csv.substr(0, first_newline) ==
              "domain,scene,model,trials,success_orig,success_decomp,len_orig,len_decomp,"
              "gt,time_orig_s,time_decomp_s,expanded_orig,expanded_decomp");
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
        CHECK(csv.find("house_cleaning,parole,gpt-4-turbo,1,100,100,20,20,20,-,-,") !=
              std::string::npos);
    }
    SUBCASE("empty aggregates render headers only") {
        std::string csv = harness::emit_report({}, harness::ReportFormat::Csv, false);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 1);
    }
    SUBCASE("metrics without successes render the not-applicable marker") {
        harness::Aggregate empty;
        empty.domain_id = "house_cleaning";
        empty.scene_id = "parole";
        empty.model = "m";
        empty.trials = 2;
        std::string csv = harness::emit_report({empty}, harness::ReportFormat::Csv, false);
        CHECK(csv.find("house_cleaning,parole,m,2,0,0,x,x,-,-,-,x,x") != std::string::npos);
    }
    SUBCASE("json format parses and keeps row order") {
        std::string text = harness::emit_report({agg, agg}, harness::ReportFormat::Json, true);
        nlohmann::json doc = nlohmann::json::parse(text);
        CHECK(doc.size() == 2);
        CHECK(doc[0]["domain"] == "house_cleaning");
    }
    SUBCASE("aggregate json roundtrips through the report reader") {
        std::string json_text = harness::aggregate_to_json(agg, false);
        harness::Aggregate back = harness::aggregate_from_json(json_text);
        CHECK(back.domain_id == agg.domain_id);
        CHECK(back.trials == agg.trials);
        CHECK(back.mean_len_orig == agg.mean_len_orig);
        CHECK(back.gt_length == agg.gt_length);
    }
}

TEST_CASE("success requires the validator verdict on both tracks") {
    harness::AssetStore assets(testsupport::assets_root());
    for (const auto& domain_id : harness::evaluation_domain_ids()) {
        harness::TrialConfig cfg = replay_config(domain_id, "parole");
        harness::Aggregate agg = harness::run_trials(assets, cfg);
        for (const auto& r : agg.reports)
            CHECK(r.success == (r.orig_valid && r.decomp_valid));
    }
}
