#pragma once

#include <string>

namespace delta::harness {

// Pipeline steps in execution order; failure attribution picks the record
// with the smallest step, mirroring the funnel structure of the benchmark
// analysis (a fault detected late can still be attributed to the step that
// caused it, e.g. a pruned-away goal item surfaces at problem parse time).
enum class PipelineStep {
    DomainGeneration = 0,
    ScenePruning = 1,
    ProblemGeneration = 2,
    GoalDecomposition = 3,
    Planning = 4,
    Validation = 5,
};

std::string step_name(PipelineStep s);

enum class FailureClass {
    SyntaxError,
    IncorrectAction,
    UndeclaredItem,
    PlannerTimeout,
    InvalidPlan,
    PruningError,
    DecompositionError,
    LlmError,
};

std::string failure_class_name(FailureClass c);  // "SYNTAX_ERROR", ...

}  // namespace delta::harness
