// Regenerates the recorded-completion fixtures that back the replay backend:
// for every evaluation (domain, scene) pair the four pipeline prompts are
// rendered exactly as run_pipeline renders them, paired with the golden
// responses, and stored under their request digests. Also writes the golden
// problem files, the seeded-fault overlays, and (with --gt) the frozen
// ground-truth optimal plan lengths.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "delta/exec/executor.hpp"
#include "delta/ground/grounder.hpp"
#include "delta/harness/bundle.hpp"
#include "delta/harness/pipeline.hpp"
#include "delta/llm/client.hpp"
#include "delta/llm/extract.hpp"
#include "delta/pddl/parser.hpp"
#include "delta/search/astar.hpp"

using namespace delta;

namespace {

std::string fence(const std::string& text) {
    return "```pddl\n" + text + "```\n";
}

struct Seeder {
    harness::AssetStore& assets;
    llm::LlmConfig llm_config;

    void record(const std::filesystem::path& dir, const llm::PromptTemplate& prompt,
                const std::string& response) const {
        llm::CompletionRequest req = llm::make_request(llm_config, prompt);
        llm::FixtureStore store({dir});
        nlohmann::json meta;
        meta["model"] = req.model;
        meta["prompt"] = req.canonical_json();
        meta["seeded"] = true;
        meta["timestamp"] = "1970-01-01T00:00:00Z";
        store.record(req.digest(), response, meta.dump(2) + "\n");
    }

    // Replays the pipeline's prompt/response sequence with golden content;
    // per-step overrides inject the fault variants.
    struct Overrides {
        std::string domain_response;
        std::string keep_response;
        std::string problem_response;
        std::string subgoals_response;
    };

    void seed_pair(const std::filesystem::path& dir, const std::string& domain_id,
                   const std::string& scene_id, const Overrides& ov = {},
                   bool write_golden_problem = false) const {
        harness::OneShotExample shot = harness::load_one_shot(assets);
        harness::DomainContent content = harness::load_domain_content(assets, domain_id);
        scene::SceneGraph full = harness::load_scene(assets, scene_id);

        std::string domain_resp = ov.domain_response.empty() ? fence(content.domain_pddl)
                                                             : ov.domain_response;
        record(dir, harness::domain_generation_prompt(shot, content), domain_resp);
        std::vector<std::string> sources;
        try {
            sources = llm::extract_pddl(domain_resp);
        } catch (const llm::NoPlanningFileFound&) {
            return;  // fault: the pipeline stops at step 1
        }
        pddl::DomainAst d;
        try {
            d = pddl::parse_domain(sources.front());
        } catch (const pddl::PddlError&) {
            return;  // fault: stops at step 1
        }

        std::string keep_resp = ov.keep_response.empty() ? content.keep_list
                                                         : ov.keep_response;
        record(dir, harness::pruning_prompt(shot, content, full), keep_resp);
        auto kept_list = llm::parse_item_list(keep_resp);
        std::set<std::string> kept(kept_list.begin(), kept_list.end());
        scene::SceneGraph pruned;
        try {
            pruned = scene::prune(full, kept);
        } catch (const scene::SceneError&) {
            return;  // fault: stops at step 2
        }

        std::string problem_text = harness::build_problem_text(pruned, d, content,
                                                               domain_id + "_" + scene_id);
        std::string problem_resp = ov.problem_response.empty() ? fence(problem_text)
                                                               : ov.problem_response;
        record(dir, harness::problem_generation_prompt(shot, content, pruned, d),
               problem_resp);
        if (write_golden_problem) {
            std::ofstream out(assets.path("problems/" + domain_id + "_" + scene_id +
                                          ".pddl"),
                              std::ios::binary);
            out << problem_text;
        }
        pddl::ProblemAst p0;
        try {
            p0 = pddl::parse_problem(llm::extract_pddl(problem_resp).front(), d);
        } catch (const std::exception&) {
            return;  // fault: stops at step 3
        }

        std::string subgoals_resp = ov.subgoals_response.empty() ? content.subgoals_pddl
                                                                 : ov.subgoals_response;
        record(dir, harness::decomposition_prompt(shot, p0, d), subgoals_resp);
    }
};

std::string drop_line_containing(const std::string& text, const std::string& needle,
                                 int which = 1) {
    std::istringstream is(text);
    std::ostringstream os;
    std::string line;
    int seen = 0;
    while (std::getline(is, line)) {
        if (line.find(needle) != std::string::npos && ++seen == which)
            continue;
        os << line << '\n';
    }
    return os.str();
}

std::string insert_line_after(const std::string& text, const std::string& needle,
                              const std::string& new_line) {
    std::istringstream is(text);
    std::ostringstream os;
    std::string line;
    bool done = false;
    while (std::getline(is, line)) {
        os << line << '\n';
        if (!done && line.find(needle) != std::string::npos) {
            os << new_line << '\n';
            done = true;
        }
    }
    return os.str();
}

std::string replace_once(std::string text, const std::string& from, const std::string& to) {
    auto pos = text.find(from);
    if (pos == std::string::npos)
        throw std::runtime_error("seed: pattern not found: " + from);
    return text.replace(pos, from.size(), to);
}

int write_gt(harness::AssetStore& assets) {
    nlohmann::json gt;
    for (const auto& domain_id : harness::evaluation_domain_ids()) {
        harness::DomainContent content = harness::load_domain_content(assets, domain_id);
        pddl::DomainAst d = pddl::parse_domain(content.domain_pddl);
        for (const auto& scene_id : harness::evaluation_scene_ids()) {
            pddl::ProblemAst p0 = pddl::parse_problem(
                assets.read_text("problems/" + domain_id + "_" + scene_id + ".pddl"), d);
            ground::GroundTask task = ground::ground(d, p0);
            search::SearchConfig lmcut{search::HeuristicKind::LmCut, 600.0};
            search::SearchResult a = search::solve(task, lmcut);
            if (a.status != search::SearchStatus::Solved) {
                std::cerr << "gt: " << domain_id << "/" << scene_id << " "
                          << search::status_name(a.status) << " under lmcut\n";
                return 1;
            }
            // Cross-check with the second admissible route where the budget
            // allows; both searches are optimal, so solved lengths must agree.
            search::SearchConfig hmax{search::HeuristicKind::HMax, 120.0};
            search::SearchResult b = search::solve(task, hmax);
            if (b.status == search::SearchStatus::Solved &&
                b.plan->length() != a.plan->length()) {
                std::cerr << "gt: " << domain_id << "/" << scene_id
                          << " lmcut/hmax length disagreement\n";
                return 1;
            }
            gt[domain_id][scene_id] = a.plan->length();
            std::cerr << "gt: " << domain_id << "/" << scene_id << " = " << a.plan->length()
                      << " (lmcut expanded " << a.expanded << ", hmax "
                      << (b.status == search::SearchStatus::Solved
                              ? "expanded " + std::to_string(b.expanded)
                              : "skipped: " + search::status_name(b.status))
                      << ")\n";
        }
    }
    std::ofstream out(assets.path("gt.json"), std::ios::binary);
    out << gt.dump(2) + "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Seed the replay fixtures from the bundled golden content"};
    std::string assets_dir;
    std::string model;
    bool gt = false;
    app.add_option("--assets", assets_dir, "Assets directory")->envname("DELTA_ASSETS_DIR");
    app.add_option("--model", model, "Model id to key the fixtures under");
    app.add_flag("--gt", gt, "Also recompute the frozen ground-truth plan lengths");
    CLI11_PARSE(app, argc, argv);

    try {
        harness::AssetStore assets(harness::resolve_assets_root(assets_dir));
        llm::LlmConfig cfg;
        if (!model.empty())
            cfg.model = model;
        Seeder seeder{assets, cfg};

        std::filesystem::path base = assets.path("fixtures/base");
        std::filesystem::create_directories(base);
        for (const auto& domain_id : harness::evaluation_domain_ids())
            for (const auto& scene_id : harness::evaluation_scene_ids())
                seeder.seed_pair(base, domain_id, scene_id, {},
                                 /*write_golden_problem=*/true);
        // The one-shot example problem is bundled for the parser corpus,
        // along with a golden plan and its simulated final state.
        {
            harness::OneShotExample shot = harness::load_one_shot(assets);
            std::ofstream(assets.path("problems/laundry_kemblesville.pddl"),
                          std::ios::binary)
                << shot.problem_pddl;
            pddl::DomainAst d = pddl::parse_domain(shot.content.domain_pddl);
            pddl::ProblemAst p = pddl::parse_problem(shot.problem_pddl, d);
            ground::GroundTask task = ground::ground(d, p);
            search::SearchResult res = search::solve(task, {});
            if (res.status != search::SearchStatus::Solved)
                throw std::runtime_error("laundry example did not solve");
            auto steps = exec::plan_steps(task, *res.plan);
            std::filesystem::create_directories(assets.path("golden"));
            std::ofstream(assets.path("golden/laundry_kemblesville.plan"), std::ios::binary)
                << exec::plan_steps_to_text(steps);
            std::string rendered;
            for (const auto& atom : exec::final_state(d, p, steps))
                rendered += atom.str() + "\n";
            std::ofstream(assets.path("golden/laundry_kemblesville.final_state.txt"),
                          std::ios::binary)
                << rendered;
        }
        std::cerr << "seeded base fixtures for "
                  << harness::evaluation_domain_ids().size() *
                         harness::evaluation_scene_ids().size()
                  << " pairs\n";

        // Seeded-fault overlays, all on house_cleaning x shelbiana.
        const std::string dom = "house_cleaning", scn = "shelbiana";
        harness::DomainContent content = harness::load_domain_content(assets, dom);
        auto fault_dir = [&](const std::string& name) {
            std::filesystem::path dir = assets.path("fixtures/faults/" + name);
            std::filesystem::create_directories(dir);
            return dir;
        };

        // 1. Unparseable domain: the response carries no complete form.
        seeder.seed_pair(fault_dir("domain_syntax"), dom, scn,
                         {fence(content.domain_pddl.substr(
                              0, content.domain_pddl.size() / 2)),
                          "", "", ""});
        // 2. Action over an undeclared predicate.
        seeder.seed_pair(
            fault_dir("domain_incorrect_action"), dom, scn,
            {fence(replace_once(content.domain_pddl, "    (:action recharge",
                                "    (:action teleport\n"
                                "        :parameters (?a - agent ?r - room)\n"
                                "        :precondition (and\n"
                                "            (warp_enabled ?a)\n"
                                "        )\n"
                                "        :effect (and\n"
                                "            (agent_at ?a ?r)\n"
                                "        )\n"
                                "    )\n"
                                "    (:action recharge")),
             "", "", ""});
        // 3. Unparseable problem.
        seeder.seed_pair(fault_dir("problem_syntax"), dom, scn,
                         {"", "", "```pddl\n(define (problem broken)\n    (:domain "
                                  "house_cleaning\n```\n",
                          ""});
        // 4. Problem omitting a declared object its own goal needs.
        {
            harness::OneShotExample shot = harness::load_one_shot(assets);
            pddl::DomainAst d = pddl::parse_domain(content.domain_pddl);
            scene::SceneGraph full = harness::load_scene(assets, scn);
            auto kept_list = llm::parse_item_list(content.keep_list);
            scene::SceneGraph pruned = scene::prune(
                full, std::set<std::string>(kept_list.begin(), kept_list.end()));
            std::string text = harness::build_problem_text(pruned, d, content,
                                                           dom + "_" + scn);
            text = replace_once(text, "cola_can ", "");  // drop from :objects
            text = drop_line_containing(text, "(item_at cola_can");
            text = drop_line_containing(text, "(item_accessible cola_can)");
            text = drop_line_containing(text, "(item_pickable cola_can)");
            seeder.seed_pair(fault_dir("problem_undeclared"), dom, scn,
                             {"", "", fence(text), ""});
        }
        // 5. Pruning response naming an item the scene does not have.
        seeder.seed_pair(fault_dir("prune_unknown_item"), dom, scn,
                         {"", content.keep_list + "unicorn\n", "", ""});
        // 6. Pruning drops a goal item; surfaces at problem parse, attributed
        // to the pruning step.
        seeder.seed_pair(fault_dir("prune_drop_goal_item"), dom, scn,
                         {"", drop_line_containing(content.keep_list, "rotting_apple"), "",
                          ""});
        // 7. Decomposition omitting the final mop_clean sub-goal.
        seeder.seed_pair(fault_dir("decomp_missing_subgoal"), dom, scn,
                         {"", "", "",
                          drop_line_containing(content.subgoals_pddl, "(mop_clean mop)",
                                               2)});
        // 8. Decomposition demanding a disposed item back in hand.
        seeder.seed_pair(fault_dir("decomp_conflict"), dom, scn,
                         {"", "", "",
                          insert_line_after(content.subgoals_pddl, "item_disposed",
                                            "(and (agent_has_item robot cola_can))")});
        std::cerr << "seeded 8 fault overlays\n";

        if (gt)
            return write_gt(assets);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
