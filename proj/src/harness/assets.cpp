#include "delta/harness/assets.hpp"

#include <cstdlib>
#include <fstream>

#include "delta/harness/failure.hpp"

#ifndef DELTA_DEFAULT_ASSETS_DIR
#define DELTA_DEFAULT_ASSETS_DIR "assets"
#endif

namespace delta::harness {

std::string step_name(PipelineStep s) {
    switch (s) {
        case PipelineStep::DomainGeneration: return "domain-generation";
        case PipelineStep::ScenePruning: return "scene-graph-pruning";
        case PipelineStep::ProblemGeneration: return "problem-generation";
        case PipelineStep::GoalDecomposition: return "goal-decomposition";
        case PipelineStep::Planning: return "planning";
        case PipelineStep::Validation: return "validation";
    }
    return "?";
}

std::string failure_class_name(FailureClass c) {
    switch (c) {
        case FailureClass::SyntaxError: return "SYNTAX_ERROR";
        case FailureClass::IncorrectAction: return "INCORRECT_ACTION";
        case FailureClass::UndeclaredItem: return "UNDECLARED_ITEM";
        case FailureClass::PlannerTimeout: return "PLANNER_TIMEOUT";
        case FailureClass::InvalidPlan: return "INVALID_PLAN";
        case FailureClass::PruningError: return "PRUNING_ERROR";
        case FailureClass::DecompositionError: return "DECOMPOSITION_ERROR";
        case FailureClass::LlmError: return "LLM_ERROR";
    }
    return "?";
}

std::filesystem::path resolve_assets_root(const std::string& cli_override) {
    if (!cli_override.empty())
        return cli_override;
    if (const char* env = std::getenv("DELTA_ASSETS_DIR"); env && *env)
        return env;
    return DELTA_DEFAULT_ASSETS_DIR;
}

AssetStore::AssetStore(std::filesystem::path root) : root_(std::move(root)) {
    if (!std::filesystem::is_directory(root_))
        throw AssetError("assets directory not found: " + root_.string());
}

bool AssetStore::has(const std::string& relative) const {
    return std::filesystem::exists(root_ / relative);
}

std::string AssetStore::read_text(const std::string& relative) const {
    std::ifstream in(root_ / relative, std::ios::binary);
    if (!in)
        throw AssetError("cannot read asset: " + (root_ / relative).string());
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

}  // namespace delta::harness
