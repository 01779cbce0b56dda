#include "delta/harness/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include <json.hpp>

#include "delta/decomp/decomposer.hpp"
#include "delta/exec/executor.hpp"
#include "delta/ground/grounder.hpp"
#include "delta/llm/extract.hpp"
#include "delta/llm/prompt.hpp"
#include "delta/pddl/errors.hpp"
#include "delta/pddl/parser.hpp"

namespace delta::harness {

namespace {

struct FailureRecord {
    PipelineStep step;
    FailureClass cls;
    std::string detail;
};

// Earliest step wins; records pushed in pipeline order break ties.
void apply_failures(TrialReport& report, std::vector<FailureRecord>& failures) {
    if (failures.empty())
        return;
    auto best = failures.begin();
    for (auto it = failures.begin(); it != failures.end(); ++it)
        if (static_cast<int>(it->step) < static_cast<int>(best->step))
            best = it;
    report.failure_class = best->cls;
    report.failure_step = best->step;
    report.failure_detail = best->detail;
}

TrackMetrics metrics_from(const search::SearchResult& res, size_t plan_length) {
    return {plan_length, res.expanded, res.generated, res.time_s};
}

TrackMetrics metrics_from(const decomp::DecompositionRun& run) {
    return {run.concat_plan.size(), run.total_expanded(), run.total_generated(),
            run.total_time_s()};
}

}  // namespace

OneShotExample load_one_shot(const AssetStore& assets) {
    OneShotExample shot{load_domain_content(assets, "laundry"),
                        load_scene(assets, "kemblesville"), "", "", {}, {}};
    shot.scene_json = scene::scene_to_json(shot.scene);
    shot.problem_pddl = build_problem_text(shot.scene,
                                           pddl::parse_domain(shot.content.domain_pddl),
                                           shot.content, "laundry_kemblesville");
    for (const auto& item : scene::list_items(shot.scene))
        shot.item_ids.push_back(item.id);
    shot.kept = llm::parse_item_list(shot.content.keep_list);
    return shot;
}

llm::PromptTemplate domain_generation_prompt(const OneShotExample& shot,
                                             const DomainContent& target) {
    return llm::build_domain_prompt({shot.content.domain_nl, shot.content.domain_pddl},
                                    target.domain_nl);
}

llm::PromptTemplate pruning_prompt(const OneShotExample& shot, const DomainContent& target,
                                   const scene::SceneGraph& full_scene) {
    std::vector<std::string> item_ids;
    for (const auto& item : scene::list_items(full_scene))
        item_ids.push_back(item.id);
    return llm::build_pruning_prompt(item_ids, target.goal_nl,
                                     {shot.item_ids, shot.content.goal_nl, shot.kept});
}

llm::PromptTemplate problem_generation_prompt(const OneShotExample& shot,
                                              const DomainContent& target,
                                              const scene::SceneGraph& pruned_scene,
                                              const pddl::DomainAst& generated_domain) {
    return llm::build_problem_prompt(pruned_scene, target.goal_nl, generated_domain,
                                     {shot.scene_json, shot.content.goal_nl,
                                      shot.content.domain_pddl, shot.problem_pddl});
}

llm::PromptTemplate decomposition_prompt(const OneShotExample& shot,
                                         const pddl::ProblemAst& p0,
                                         const pddl::DomainAst& generated_domain) {
    return llm::build_decomposition_prompt(p0, generated_domain,
                                           {shot.problem_pddl, shot.content.domain_pddl,
                                            shot.content.subgoals_nl,
                                            shot.content.subgoals_pddl});
}

TrialReport run_pipeline(const AssetStore& assets, const TrialConfig& config,
                         const std::vector<std::filesystem::path>& fixture_dirs,
                         TrialArtifacts* artifacts, const llm::Transport& transport) {
    TrialReport report;
    std::vector<FailureRecord> failures;
    auto fail = [&](PipelineStep step, FailureClass cls, const std::string& detail) {
        failures.push_back({step, cls, detail});
    };
    auto finish = [&] {
        report.success = report.orig_valid && report.decomp_valid;
        apply_failures(report, failures);
        return report;
    };

    const DomainContent content = load_domain_content(assets, config.domain_id);
    const scene::SceneGraph full_scene = load_scene(assets, config.scene_id);
    const OneShotExample shot = load_one_shot(assets);
    const llm::FixtureStore store(fixture_dirs);
    const llm::CompletionClient client(config.llm, config.backend, &store, transport);

    // 1. Domain generation
    pddl::DomainAst domain;
    try {
        std::string response = client.complete(domain_generation_prompt(shot, content));
        std::string domain_text = llm::extract_pddl(response).front();
        domain = pddl::parse_domain(domain_text);
        if (artifacts)
            artifacts->domain_text = domain_text;
    } catch (const llm::LlmError& e) {
        fail(PipelineStep::DomainGeneration, FailureClass::LlmError, e.what());
        return finish();
    } catch (const llm::NoPlanningFileFound& e) {
        fail(PipelineStep::DomainGeneration, FailureClass::SyntaxError, e.what());
        return finish();
    } catch (const pddl::SemanticError& e) {
        fail(PipelineStep::DomainGeneration, FailureClass::IncorrectAction, e.what());
        return finish();
    } catch (const pddl::PddlError& e) {
        fail(PipelineStep::DomainGeneration, FailureClass::SyntaxError, e.what());
        return finish();
    }

    // 2. Scene graph pruning
    scene::SceneGraph pruned;
    std::set<std::string> kept;
    try {
        std::string response = client.complete(pruning_prompt(shot, content, full_scene));
        std::vector<std::string> kept_list = llm::parse_item_list(response);
        if (kept_list.empty())
            throw scene::SceneError("pruning returned an empty item list");
        kept.insert(kept_list.begin(), kept_list.end());
        pruned = scene::prune(full_scene, kept);
        if (artifacts)
            artifacts->kept_items = kept_list;
    } catch (const llm::LlmError& e) {
        fail(PipelineStep::ScenePruning, FailureClass::LlmError, e.what());
        return finish();
    } catch (const scene::SceneError& e) {
        fail(PipelineStep::ScenePruning, FailureClass::PruningError, e.what());
        return finish();
    }

    // 3. Problem generation
    pddl::ProblemAst p0;
    try {
        std::string response =
            client.complete(problem_generation_prompt(shot, content, pruned, domain));
        std::vector<std::string> sources = llm::extract_pddl(response);
        std::string problem_text = sources.front();
        for (const auto& src : sources) {
            std::string lowered = src;
            std::transform(lowered.begin(), lowered.end(), lowered.begin(), ::tolower);
            if (lowered.find("(problem") != std::string::npos) {
                problem_text = src;
                break;
            }
        }
        p0 = pddl::parse_problem(problem_text, domain);
        if (artifacts)
            artifacts->problem_text = problem_text;
    } catch (const llm::LlmError& e) {
        fail(PipelineStep::ProblemGeneration, FailureClass::LlmError, e.what());
        return finish();
    } catch (const pddl::UndeclaredItemError& e) {
        // A goal object that exists in the scene but was pruned away is the
        // pruning step's fault; anything else is the problem generator's.
        if (full_scene.find_item(e.object()) && !kept.count(e.object()))
            fail(PipelineStep::ScenePruning, FailureClass::PruningError,
                 std::string(e.what()) + " (item was pruned from the scene)");
        else
            fail(PipelineStep::ProblemGeneration, FailureClass::UndeclaredItem, e.what());
        return finish();
    } catch (const llm::NoPlanningFileFound& e) {
        fail(PipelineStep::ProblemGeneration, FailureClass::SyntaxError, e.what());
        return finish();
    } catch (const pddl::PddlError& e) {
        fail(PipelineStep::ProblemGeneration, FailureClass::SyntaxError, e.what());
        return finish();
    }

    // 4. Goal decomposition (decoupled: the original track still runs when
    // this step fails)
    std::optional<decomp::SubGoalSequence> subgoals;
    try {
        std::string response = client.complete(decomposition_prompt(shot, p0, domain));
        subgoals = decomp::parse_subgoal_sequence(response, domain, p0);
        if (artifacts)
            artifacts->subgoals_text = decomp::subgoal_sequence_to_text(*subgoals);
    } catch (const llm::LlmError& e) {
        fail(PipelineStep::GoalDecomposition, FailureClass::LlmError, e.what());
    } catch (const std::exception& e) {
        fail(PipelineStep::GoalDecomposition, FailureClass::DecompositionError, e.what());
    }

    // 5a. Direct solve of the original problem
    try {
        ground::GroundTask task = ground::ground(domain, p0);
        search::SearchResult res = search::solve(task, config.planner);
        if (res.status == search::SearchStatus::Solved) {
            auto steps = exec::plan_steps(task, *res.plan);
            report.orig = metrics_from(res, steps.size());
            exec::ValidationReport val = exec::validate(domain, p0, steps);
            if (val.valid())
                report.orig_valid = true;
            else
                fail(PipelineStep::Validation, FailureClass::InvalidPlan,
                     "original plan invalid: " + val.detail);
            if (artifacts)
                artifacts->orig_plan_text = exec::plan_steps_to_text(steps);
        } else if (res.status == search::SearchStatus::Timeout) {
            fail(PipelineStep::Planning, FailureClass::PlannerTimeout,
                 "original problem timed out");
        } else {
            // With a correct problem over a sufficient scene the bundled
            // instances are solvable; an unsolvable original problem means
            // the pruning dropped a required item.
            fail(PipelineStep::ScenePruning, FailureClass::PruningError,
                 "original problem is unsolvable after pruning");
        }
    } catch (const ground::GroundingLimitError& e) {
        fail(PipelineStep::Planning, FailureClass::PlannerTimeout, e.what());
    }

    // 5b. Autoregressive sub-task planning
    if (subgoals) {
        try {
            decomp::DecompositionRun run =
                decomp::autoregressive_solve(domain, p0, *subgoals, config.planner);
            if (run.status == decomp::RunStatus::Solved) {
                report.decomp = metrics_from(run);
                exec::ValidationReport val = decomp::verify_against_original(domain, p0, run);
                if (val.valid())
                    report.decomp_valid = true;
                else
                    fail(PipelineStep::Validation, FailureClass::DecompositionError,
                         "concatenated plan does not satisfy the original goal: " +
                             val.detail);
                if (artifacts) {
                    artifacts->decomp_plan_text = exec::plan_steps_to_text(run.concat_plan);
                    artifacts->decomposition_manifest_json =
                        decomp::run_manifest_json(domain, p0, *subgoals, run, false);
                }
            } else if (run.status == decomp::RunStatus::SubproblemTimeout) {
                fail(PipelineStep::Planning, FailureClass::PlannerTimeout,
                     "sub-problem " + std::to_string(*run.failed_index + 1) + " timed out");
            } else {
                fail(PipelineStep::Planning, FailureClass::DecompositionError,
                     "sub-problem " + std::to_string(*run.failed_index + 1) +
                         " is unsolvable (sub-goal conflicts with the reached state)");
            }
        } catch (const ground::GroundingLimitError& e) {
            fail(PipelineStep::Planning, FailureClass::PlannerTimeout, e.what());
        }
    }

    return finish();
}

Aggregate run_trials(const AssetStore& assets, const TrialConfig& config,
                     const llm::Transport& transport) {
    if (config.trials < 1)
        throw std::invalid_argument("trials must be >= 1");

    Aggregate agg;
    agg.domain_id = config.domain_id;
    agg.scene_id = config.scene_id;
    agg.model = config.llm.model;
    agg.trials = config.trials;
    agg.gt_length = lookup_gt_length(assets, config.domain_id, config.scene_id);
    agg.reports.resize(config.trials);

    std::filesystem::path base = config.fixtures_dir.empty()
                                     ? assets.path("fixtures/base")
                                     : config.fixtures_dir;
    auto run_one = [&](int i) {
        std::vector<std::filesystem::path> dirs;
        if (i < static_cast<int>(config.fault_overlays.size()))
            dirs.push_back(config.fault_overlays[i]);
        dirs.push_back(base);
        agg.reports[i] = run_pipeline(assets, config, dirs, nullptr, transport);
    };

    const int jobs = std::max(1, config.jobs);
    if (jobs == 1) {
        for (int i = 0; i < config.trials; ++i)
            run_one(i);
    } else {
        std::vector<std::thread> workers;
        std::atomic<int> next{0};
        for (int w = 0; w < std::min(jobs, config.trials); ++w)
            workers.emplace_back([&] {
                for (int i = next.fetch_add(1); i < config.trials; i = next.fetch_add(1))
                    run_one(i);
            });
        for (auto& t : workers)
            t.join();
    }

    double len_o = 0, len_d = 0, time_o = 0, time_d = 0, exp_o = 0, exp_d = 0;
    for (const auto& r : agg.reports) {
        if (r.success)
            ++agg.successes;
        else if (r.failure_class)
            ++agg.failure_counts[failure_class_name(*r.failure_class)];
        if (r.orig_valid && r.orig) {
            ++agg.orig_successes;
            len_o += static_cast<double>(r.orig->plan_length);
            time_o += r.orig->time_s;
            exp_o += static_cast<double>(r.orig->expanded);
        }
        if (r.decomp_valid && r.decomp) {
            ++agg.decomp_successes;
            len_d += static_cast<double>(r.decomp->plan_length);
            time_d += r.decomp->time_s;
            exp_d += static_cast<double>(r.decomp->expanded);
        }
    }
    if (agg.orig_successes > 0) {
        agg.mean_len_orig = len_o / agg.orig_successes;
        agg.mean_time_orig = time_o / agg.orig_successes;
        agg.mean_expanded_orig = exp_o / agg.orig_successes;
    }
    if (agg.decomp_successes > 0) {
        agg.mean_len_decomp = len_d / agg.decomp_successes;
        agg.mean_time_decomp = time_d / agg.decomp_successes;
        agg.mean_expanded_decomp = exp_d / agg.decomp_successes;
    }
    return agg;
}

std::string aggregate_to_json(const Aggregate& aggregate, bool include_times) {
    nlohmann::json doc;
    doc["domain"] = aggregate.domain_id;
    doc["scene"] = aggregate.scene_id;
    doc["model"] = aggregate.model;
    doc["trials"] = aggregate.trials;
    doc["successes"] = aggregate.successes;
    doc["orig_successes"] = aggregate.orig_successes;
    doc["decomp_successes"] = aggregate.decomp_successes;
    doc["failure_counts"] = aggregate.failure_counts;
    if (aggregate.gt_length)
        doc["gt_length"] = *aggregate.gt_length;
    auto put = [&](const char* key, const std::optional<double>& v) {
        if (v)
            doc[key] = *v;
    };
    put("mean_len_orig", aggregate.mean_len_orig);
    put("mean_len_decomp", aggregate.mean_len_decomp);
    put("mean_expanded_orig", aggregate.mean_expanded_orig);
    put("mean_expanded_decomp", aggregate.mean_expanded_decomp);
    if (include_times) {
        put("mean_time_orig", aggregate.mean_time_orig);
        put("mean_time_decomp", aggregate.mean_time_decomp);
    }
    doc["reports"] = nlohmann::json::array();
    for (const auto& r : aggregate.reports) {
        nlohmann::json jr;
        jr["success"] = r.success;
        jr["orig_valid"] = r.orig_valid;
        jr["decomp_valid"] = r.decomp_valid;
        if (r.orig) {
            jr["plan_len_orig"] = r.orig->plan_length;
            jr["expanded_orig"] = r.orig->expanded;
            if (include_times)
                jr["time_orig_s"] = r.orig->time_s;
        }
        if (r.decomp) {
            jr["plan_len_decomp"] = r.decomp->plan_length;
            jr["expanded_decomp"] = r.decomp->expanded;
            if (include_times)
                jr["time_decomp_s"] = r.decomp->time_s;
        }
        if (r.failure_class) {
            jr["failure_class"] = failure_class_name(*r.failure_class);
            jr["failure_step"] = step_name(*r.failure_step);
            jr["failure_detail"] = r.failure_detail;
        }
        doc["reports"].push_back(std::move(jr));
    }
    return doc.dump(2) + "\n";
}

Aggregate aggregate_from_json(const std::string& json_text) {
    nlohmann::json doc = nlohmann::json::parse(json_text);
    Aggregate agg;
    agg.domain_id = doc.value("domain", "");
    agg.scene_id = doc.value("scene", "");
    agg.model = doc.value("model", "");
    agg.trials = doc.value("trials", 0);
    agg.successes = doc.value("successes", 0);
    agg.orig_successes = doc.value("orig_successes", 0);
    agg.decomp_successes = doc.value("decomp_successes", 0);
    if (doc.contains("failure_counts"))
        agg.failure_counts = doc["failure_counts"].get<std::map<std::string, int>>();
    if (doc.contains("gt_length"))
        agg.gt_length = doc["gt_length"].get<int>();
    auto get = [&](const char* key) -> std::optional<double> {
        if (doc.contains(key))
            return doc[key].get<double>();
        return std::nullopt;
    };
    agg.mean_len_orig = get("mean_len_orig");
    agg.mean_len_decomp = get("mean_len_decomp");
    agg.mean_expanded_orig = get("mean_expanded_orig");
    agg.mean_expanded_decomp = get("mean_expanded_decomp");
    agg.mean_time_orig = get("mean_time_orig");
    agg.mean_time_decomp = get("mean_time_decomp");
    return agg;
}

std::optional<int> lookup_gt_length(const AssetStore& assets, const std::string& domain_id,
                                    const std::string& scene_id) {
    if (!assets.has("gt.json"))
        return std::nullopt;
    nlohmann::json doc = nlohmann::json::parse(assets.read_text("gt.json"));
    if (doc.contains(domain_id) && doc[domain_id].contains(scene_id))
        return doc[domain_id][scene_id].get<int>();
    return std::nullopt;
}

}  // namespace delta::harness
