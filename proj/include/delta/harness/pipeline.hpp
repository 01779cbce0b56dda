#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "delta/harness/bundle.hpp"
#include "delta/harness/failure.hpp"
#include "delta/llm/client.hpp"
#include "delta/search/astar.hpp"

namespace delta::harness {

struct TrialConfig {
    std::string domain_id;
    std::string scene_id;
    llm::Backend backend = llm::Backend::Replay;
    int trials = 1;
    search::SearchConfig planner;
    llm::LlmConfig llm;
    std::filesystem::path fixtures_dir;  // base store; default assets/fixtures/base
    // Trial i < fault_overlays.size() reads fixtures through overlay i first;
    // remaining trials use the base store alone.
    std::vector<std::filesystem::path> fault_overlays;
    int jobs = 1;
};

struct TrackMetrics {
    size_t plan_length = 0;
    uint64_t expanded = 0;
    uint64_t generated = 0;
    double time_s = 0.0;
};

struct TrialReport {
    bool success = false;  // both tracks validated
    bool orig_valid = false;
    bool decomp_valid = false;
    std::optional<TrackMetrics> orig;    // present when the track solved
    std::optional<TrackMetrics> decomp;
    std::optional<FailureClass> failure_class;  // earliest failing step's class
    std::optional<PipelineStep> failure_step;
    std::string failure_detail;
};

// Intermediate artifacts of one pipeline run, for auditing and golden tests.
struct TrialArtifacts {
    std::string domain_text;
    std::vector<std::string> kept_items;
    std::string problem_text;
    std::string subgoals_text;
    std::string orig_plan_text;
    std::string decomp_plan_text;
    std::string decomposition_manifest_json;
};

// Executes the five pipeline steps (domain generation, scene graph pruning,
// problem generation, goal decomposition, autoregressive planning) plus the
// direct solve of the original problem, validates both plans, and classifies
// any failure by its earliest step.
TrialReport run_pipeline(const AssetStore& assets, const TrialConfig& config,
                         const std::vector<std::filesystem::path>& fixture_dirs,
                         TrialArtifacts* artifacts = nullptr,
                         const llm::Transport& transport = {});

// The one-shot example embedded in every prompt: the short-term laundry
// domain paired with the kemblesville scene.
struct OneShotExample {
    DomainContent content;
    scene::SceneGraph scene;
    std::string scene_json;
    std::string problem_pddl;  // deterministic golden problem
    std::vector<std::string> item_ids;
    std::vector<std::string> kept;
};

OneShotExample load_one_shot(const AssetStore& assets);

// Prompt construction for the four LLM steps. The fixture seeding tool uses
// the same functions, so recorded digests always match the pipeline's
// requests byte for byte.
llm::PromptTemplate domain_generation_prompt(const OneShotExample& shot,
                                             const DomainContent& target);
llm::PromptTemplate pruning_prompt(const OneShotExample& shot, const DomainContent& target,
                                   const scene::SceneGraph& full_scene);
llm::PromptTemplate problem_generation_prompt(const OneShotExample& shot,
                                              const DomainContent& target,
                                              const scene::SceneGraph& pruned_scene,
                                              const pddl::DomainAst& generated_domain);
llm::PromptTemplate decomposition_prompt(const OneShotExample& shot,
                                         const pddl::ProblemAst& p0,
                                         const pddl::DomainAst& generated_domain);

struct Aggregate {
    std::string domain_id;
    std::string scene_id;
    std::string model;
    int trials = 0;
    int successes = 0;
    int orig_successes = 0;
    int decomp_successes = 0;
    std::map<std::string, int> failure_counts;  // class name -> count
    // Means over the trials whose respective track succeeded.
    std::optional<double> mean_len_orig, mean_len_decomp;
    std::optional<double> mean_time_orig, mean_time_decomp;
    std::optional<double> mean_expanded_orig, mean_expanded_decomp;
    std::optional<int> gt_length;  // frozen ground-truth optimum
    std::vector<TrialReport> reports;
};

Aggregate run_trials(const AssetStore& assets, const TrialConfig& config,
                     const llm::Transport& transport = {});

// Stable JSON rendering; wall-clock fields are emitted only when
// include_times is set so replay-mode reports stay byte-identical.
std::string aggregate_to_json(const Aggregate& aggregate, bool include_times);
Aggregate aggregate_from_json(const std::string& json_text);

std::optional<int> lookup_gt_length(const AssetStore& assets, const std::string& domain_id,
                                    const std::string& scene_id);

}  // namespace delta::harness
