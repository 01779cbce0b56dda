#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "delta/decomp/decomposer.hpp"
#include "delta/exec/executor.hpp"
#include "delta/ground/grounder.hpp"
#include "delta/harness/bundle.hpp"
#include "delta/harness/pipeline.hpp"
#include "delta/harness/report.hpp"
#include "delta/llm/extract.hpp"
#include "delta/llm/prompt.hpp"
#include "delta/pddl/parser.hpp"
#include "delta/pddl/printer.hpp"
#include "delta/scene/scene_graph.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read file: " + path);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

void write_or_print(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        out << text;
    }
}

struct CommonOpts {
    std::string assets_dir;
    std::string backend = "replay";
    std::string fixtures_dir;
    std::string llm_config_path;
    std::string model;
};

delta::llm::LlmConfig make_llm_config(const CommonOpts& opts) {
    delta::llm::LlmConfig cfg;
    if (!opts.llm_config_path.empty())
        cfg = delta::llm::load_llm_config(slurp(opts.llm_config_path));
    if (!opts.model.empty())
        cfg.model = opts.model;
    return cfg;
}

delta::harness::TrialConfig make_trial_config(const CommonOpts& opts,
                                              const std::string& domain_id,
                                              const std::string& scene_id,
                                              const delta::search::SearchConfig& planner) {
    delta::harness::TrialConfig cfg;
    cfg.domain_id = domain_id;
    cfg.scene_id = scene_id;
    cfg.backend = delta::llm::backend_from_name(opts.backend);
    cfg.planner = planner;
    cfg.llm = make_llm_config(opts);
    if (!opts.fixtures_dir.empty())
        cfg.fixtures_dir = opts.fixtures_dir;
    return cfg;
}

void check_evaluation_ids(const std::string& domain_id, const std::string& scene_id) {
    const auto& domains = delta::harness::evaluation_domain_ids();
    if (std::find(domains.begin(), domains.end(), domain_id) == domains.end())
        throw CLI::ValidationError("--domain", "'" + domain_id +
                                       "' is not an evaluation domain (the laundry domain "
                                       "is reserved as the one-shot example)");
    const auto& scenes = delta::harness::evaluation_scene_ids();
    if (std::find(scenes.begin(), scenes.end(), scene_id) == scenes.end())
        throw CLI::ValidationError("--scene", "'" + scene_id +
                                       "' is not an evaluation scene (kemblesville is "
                                       "reserved for the one-shot example)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DELTA long-horizon task planning toolkit"};
    app.require_subcommand(1);
    CommonOpts common;
    app.add_option("--assets", common.assets_dir, "Bundled assets directory")
        ->envname("DELTA_ASSETS_DIR");

    // parse
    auto* cmd_parse = app.add_subcommand("parse", "Parse planning files and report errors");
    std::string domain_path, problem_path, plan_path, scene_path, out_path, goal_text;
    bool do_print = false;
    cmd_parse->add_option("--domain", domain_path, "Domain file")->required();
    cmd_parse->add_option("--problem", problem_path, "Problem file");
    cmd_parse->add_flag("--print", do_print, "Print the canonical form");

    // ground
    auto* cmd_ground = app.add_subcommand("ground", "Ground a problem into a fact-indexed task");
    bool dump = false, no_reachability = false;
    cmd_ground->add_option("--domain", domain_path, "Domain file")->required();
    cmd_ground->add_option("--problem", problem_path, "Problem file")->required();
    cmd_ground->add_flag("--dump", dump, "Dump one action per line");
    cmd_ground->add_flag("--no-reachability", no_reachability,
                         "Skip delete-relaxed reachability pruning");

    // plan
    auto* cmd_plan = app.add_subcommand("plan", "Optimal forward search on a problem");
    std::string heuristic_name = "lmcut";
    double timeout_s = 60.0;
    cmd_plan->add_option("--domain", domain_path, "Domain file")->required();
    cmd_plan->add_option("--problem", problem_path, "Problem file")->required();
    cmd_plan->add_option("--heuristic", heuristic_name, "blind|hmax|lmcut")
        ->default_val("lmcut");
    cmd_plan->add_option("--timeout-s", timeout_s, "Search timeout in seconds")
        ->default_val(60.0);
    cmd_plan->add_option("-o,--out", out_path, "Write the plan to a file");

    // validate
    auto* cmd_validate = app.add_subcommand("validate", "Validate a plan against a problem");
    cmd_validate->add_option("--domain", domain_path, "Domain file")->required();
    cmd_validate->add_option("--problem", problem_path, "Problem file")->required();
    cmd_validate->add_option("--plan", plan_path, "Plan file")->required();

    // prune
    auto* cmd_prune = app.add_subcommand(
        "prune", "Deterministic relevance pruning of a scene graph");
    cmd_prune->add_option("--scene", scene_path, "Scene document")->required();
    cmd_prune->add_option("--domain", domain_path, "Domain file")->required();
    cmd_prune->add_option("--problem", problem_path, "Problem file providing the goal");
    cmd_prune->add_option("--goal", goal_text, "Goal conjunction text");
    cmd_prune->add_option("-o,--out", out_path, "Write the pruned scene document");

    // generation commands
    std::string domain_id, scene_id;
    bool offline = false;
    auto add_gen_opts = [&](CLI::App* cmd, bool needs_scene) {
        cmd->add_option("--domain", domain_id, "Evaluation domain id")->required();
        if (needs_scene)
            cmd->add_option("--scene", scene_id, "Evaluation scene id")->required();
        cmd->add_option("--backend", common.backend, "live|replay|record")
            ->default_val("replay");
        cmd->add_option("--fixtures", common.fixtures_dir, "Fixture directory");
        cmd->add_option("--llm-config", common.llm_config_path, "LLM config JSON");
        cmd->add_option("--model", common.model, "Model id override");
        cmd->add_option("-o,--out", out_path, "Output file");
    };
    auto* cmd_gen_domain =
        app.add_subcommand("gen-domain", "LLM domain generation (step 1)");
    add_gen_opts(cmd_gen_domain, false);
    auto* cmd_gen_problem =
        app.add_subcommand("gen-problem", "LLM problem generation (steps 1-3)");
    add_gen_opts(cmd_gen_problem, true);
    cmd_gen_problem->add_flag("--offline", offline,
                              "Deterministic builder over the golden keep set (no LLM)");
    auto* cmd_decompose =
        app.add_subcommand("decompose", "LLM goal decomposition (steps 1-4)");
    add_gen_opts(cmd_decompose, true);
    cmd_decompose->add_flag("--offline", offline, "Print the bundled golden decomposition");

    // pipeline
    auto* cmd_pipeline = app.add_subcommand("pipeline", "End-to-end trial runs");
    int trials = 1, jobs = 1;
    bool with_times = false;
    std::vector<std::string> overlays;
    cmd_pipeline->add_option("--domain", domain_id, "Evaluation domain id")->required();
    cmd_pipeline->add_option("--scene", scene_id, "Evaluation scene id")->required();
    cmd_pipeline->add_option("--backend", common.backend, "live|replay|record")
        ->default_val("replay");
    cmd_pipeline->add_option("--trials", trials, "Number of trials")->default_val(1);
    cmd_pipeline->add_option("--fixtures", common.fixtures_dir, "Fixture directory");
    cmd_pipeline->add_option("--overlay", overlays,
                             "Fault fixture overlay directories (trial i uses overlay i)");
    cmd_pipeline->add_option("--heuristic", heuristic_name, "blind|hmax|lmcut")
        ->default_val("lmcut");
    cmd_pipeline->add_option("--timeout-s", timeout_s, "Planner timeout")->default_val(60.0);
    cmd_pipeline->add_option("--llm-config", common.llm_config_path, "LLM config JSON");
    cmd_pipeline->add_option("--model", common.model, "Model id override");
    cmd_pipeline->add_option("--jobs", jobs, "Concurrent trial workers")->default_val(1);
    cmd_pipeline->add_flag("--with-times", with_times,
                           "Include wall-clock fields in the report");
    cmd_pipeline->add_option("-o,--out", out_path, "Write the aggregate report JSON");

    // bench
    auto* cmd_bench = app.add_subcommand("bench", "Full domain x scene sweep");
    std::string format_name = "table";
    cmd_bench->add_option("--trials", trials, "Trials per (domain, scene)")->default_val(1);
    cmd_bench->add_option("--backend", common.backend, "live|replay|record")
        ->default_val("replay");
    cmd_bench->add_option("--fixtures", common.fixtures_dir, "Fixture directory");
    cmd_bench->add_option("--heuristic", heuristic_name, "blind|hmax|lmcut")
        ->default_val("lmcut");
    cmd_bench->add_option("--timeout-s", timeout_s, "Planner timeout")->default_val(60.0);
    cmd_bench->add_option("--llm-config", common.llm_config_path, "LLM config JSON");
    cmd_bench->add_option("--model", common.model, "Model id override");
    cmd_bench->add_option("--format", format_name, "table|csv|json")->default_val("table");
    cmd_bench->add_flag("--with-times", with_times, "Include wall-clock columns");
    cmd_bench->add_option("--jobs", jobs, "Concurrent trial workers")->default_val(1);
    cmd_bench->add_option("-o,--out", out_path, "Write the report to a file");

    // report
    auto* cmd_report = app.add_subcommand("report", "Render aggregate JSON reports");
    std::vector<std::string> report_inputs;
    cmd_report->add_option("--in", report_inputs, "Aggregate JSON files from pipeline runs")
        ->required();
    cmd_report->add_option("--format", format_name, "table|csv|json")->default_val("table");
    cmd_report->add_flag("--with-times", with_times, "Include wall-clock columns");
    cmd_report->add_option("-o,--out", out_path, "Write the report to a file");

    CLI11_PARSE(app, argc, argv);

    try {
        using namespace delta;

        if (*cmd_parse) {
            pddl::DomainAst d = pddl::parse_domain(slurp(domain_path));
            std::string printed = pddl::print_domain(d);
            if (!problem_path.empty()) {
                pddl::ProblemAst p = pddl::parse_problem(slurp(problem_path), d);
                printed += pddl::print_problem(p);
            }
            if (do_print)
                std::cout << printed;
            else
                std::cout << "ok: " << d.name << " (" << d.actions.size() << " actions, "
                          << d.predicates.size() << " predicates)\n";
            return kExitOk;
        }

        if (*cmd_ground) {
            pddl::DomainAst d = pddl::parse_domain(slurp(domain_path));
            pddl::ProblemAst p = pddl::parse_problem(slurp(problem_path), d);
            ground::GroundOptions opts;
            opts.reachability_prune = !no_reachability;
            ground::GroundTask task = ground::ground(d, p, opts);
            if (dump)
                std::cout << ground::dump_task(task);
            else
                std::cout << "facts: " << task.num_facts()
                          << "\nactions: " << task.actions.size() << "\n";
            return kExitOk;
        }

        if (*cmd_plan) {
            pddl::DomainAst d = pddl::parse_domain(slurp(domain_path));
            pddl::ProblemAst p = pddl::parse_problem(slurp(problem_path), d);
            ground::GroundTask task = ground::ground(d, p);
            search::SearchConfig cfg;
            cfg.heuristic = search::heuristic_from_name(heuristic_name);
            cfg.timeout_s = timeout_s;
            search::SearchResult res = search::solve(task, cfg);
            std::cerr << "status: " << search::status_name(res.status)
                      << "  expanded: " << res.expanded << "  generated: " << res.generated
                      << "  time: " << res.time_s << "s\n";
            if (res.status != search::SearchStatus::Solved)
                return kExitFailure;
            std::cerr << "plan length: " << res.plan->length() << "\n";
            write_or_print(out_path, search::plan_to_text(task, *res.plan));
            return kExitOk;
        }

        if (*cmd_validate) {
            pddl::DomainAst d = pddl::parse_domain(slurp(domain_path));
            pddl::ProblemAst p = pddl::parse_problem(slurp(problem_path), d);
            auto steps = exec::parse_plan_text(slurp(plan_path));
            exec::ValidationReport report = exec::validate(d, p, steps);
            if (report.valid()) {
                std::cout << "valid\n";
                return kExitOk;
            }
            std::cout << "invalid: " << exec::reason_name(*report.reason);
            if (report.failing_step)
                std::cout << " at step " << *report.failing_step + 1;
            std::cout << " (" << report.detail << ")\n";
            return kExitFailure;
        }

        if (*cmd_prune) {
            scene::SceneGraph sg = scene::load_scene_graph(slurp(scene_path));
            pddl::DomainAst d = pddl::parse_domain(slurp(domain_path));
            pddl::GoalFormula goal;
            if (!problem_path.empty()) {
                pddl::ProblemAst p = pddl::parse_problem(slurp(problem_path), d);
                goal = p.goal;
            } else if (!goal_text.empty()) {
                // type-check against a throwaway problem over the scene objects
                harness::DomainContent content;
                content.vocab = harness::bundle_vocabulary();
                content.goal_pddl = "(and)";
                content.start_room = sg.rooms.empty() ? "" : sg.rooms.front().id;
                pddl::ProblemAst p = harness::build_problem(sg, d, content, "scratch");
                goal = pddl::parse_goal_formula(goal_text, d, p);
            } else {
                throw CLI::ValidationError("--goal", "either --problem or --goal is required");
            }
            std::set<std::string> kept = scene::relevance_prune(sg, d, goal);
            for (const auto& id : kept)
                std::cout << id << "\n";
            if (!out_path.empty()) {
                std::ofstream out(out_path, std::ios::binary);
                out << scene::scene_to_json(scene::prune(sg, kept));
            }
            return kExitOk;
        }

        harness::AssetStore assets(harness::resolve_assets_root(common.assets_dir));

        if (*cmd_gen_domain || *cmd_gen_problem || *cmd_decompose) {
            if (*cmd_gen_domain)
                scene_id = harness::evaluation_scene_ids().front();
            check_evaluation_ids(domain_id, scene_id);
            harness::DomainContent content = harness::load_domain_content(assets, domain_id);
            if (offline) {
                pddl::DomainAst d = pddl::parse_domain(content.domain_pddl);
                scene::SceneGraph sg = harness::load_scene(assets, scene_id);
                auto kept = llm::parse_item_list(content.keep_list);
                scene::SceneGraph pruned = scene::prune(
                    sg, std::set<std::string>(kept.begin(), kept.end()));
                if (*cmd_gen_problem) {
                    write_or_print(out_path,
                                   harness::build_problem_text(pruned, d, content,
                                                               domain_id + "_" + scene_id));
                } else {
                    write_or_print(out_path, content.subgoals_pddl);
                }
                return kExitOk;
            }
            harness::TrialConfig cfg =
                make_trial_config(common, domain_id, scene_id, search::SearchConfig{});
            std::filesystem::path base = cfg.fixtures_dir.empty()
                                             ? assets.path("fixtures/base")
                                             : cfg.fixtures_dir;
            harness::TrialArtifacts artifacts;
            harness::TrialReport report =
                harness::run_pipeline(assets, cfg, {base}, &artifacts);
            const std::string* wanted = *cmd_gen_domain    ? &artifacts.domain_text
                                        : *cmd_gen_problem ? &artifacts.problem_text
                                                           : &artifacts.subgoals_text;
            if (wanted->empty()) {
                std::cerr << "error: step failed ("
                          << (report.failure_class
                                  ? harness::failure_class_name(*report.failure_class)
                                  : "unknown")
                          << "): " << report.failure_detail << "\n";
                return kExitFailure;
            }
            write_or_print(out_path, *wanted);
            return kExitOk;
        }

        if (*cmd_pipeline) {
            check_evaluation_ids(domain_id, scene_id);
            search::SearchConfig planner;
            planner.heuristic = search::heuristic_from_name(heuristic_name);
            planner.timeout_s = timeout_s;
            harness::TrialConfig cfg = make_trial_config(common, domain_id, scene_id, planner);
            cfg.trials = trials;
            cfg.jobs = jobs;
            for (const auto& o : overlays)
                cfg.fault_overlays.emplace_back(o);
            harness::Aggregate agg = harness::run_trials(assets, cfg);
            write_or_print(out_path, harness::aggregate_to_json(agg, with_times));
            return agg.successes == agg.trials ? kExitOk : kExitFailure;
        }

        if (*cmd_bench) {
            search::SearchConfig planner;
            planner.heuristic = search::heuristic_from_name(heuristic_name);
            planner.timeout_s = timeout_s;
            std::vector<harness::Aggregate> rows;
            bool all_ok = true;
            for (const auto& dom : harness::evaluation_domain_ids()) {
                for (const auto& scn : harness::evaluation_scene_ids()) {
                    harness::TrialConfig cfg = make_trial_config(common, dom, scn, planner);
                    cfg.trials = trials;
                    cfg.jobs = jobs;
                    rows.push_back(harness::run_trials(assets, cfg));
                    all_ok = all_ok && rows.back().successes == rows.back().trials;
                }
            }
            write_or_print(out_path,
                           harness::emit_report(rows,
                                                harness::report_format_from_name(format_name),
                                                with_times));
            return all_ok ? kExitOk : kExitFailure;
        }

        if (*cmd_report) {
            std::vector<harness::Aggregate> rows;
            for (const auto& path : report_inputs)
                rows.push_back(harness::aggregate_from_json(slurp(path)));
            write_or_print(out_path,
                           harness::emit_report(rows,
                                                harness::report_format_from_name(format_name),
                                                with_times));
            return kExitOk;
        }
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
