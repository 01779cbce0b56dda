#pragma once

#include <optional>
#include <string>
#include <vector>

#include "delta/ground/grounder.hpp"
#include "delta/search/heuristics.hpp"

namespace delta::search {

struct SearchConfig {
    HeuristicKind heuristic = HeuristicKind::LmCut;
    double timeout_s = 60.0;
    // Equal-f nodes are ordered by lower h, then FIFO; kept as a named policy
    // so expanded-node counts stay bit-reproducible.
    std::string tie_break = "h-then-fifo";
};

enum class SearchStatus { Solved, Unsolvable, Timeout };

std::string status_name(SearchStatus s);

// Ordered ground-action references into the task that produced the plan.
struct Plan {
    std::vector<int> action_ids;

    size_t length() const { return action_ids.size(); }
};

struct SearchResult {
    SearchStatus status = SearchStatus::Unsolvable;
    std::optional<Plan> plan;
    uint64_t expanded = 0;   // states popped and expanded
    uint64_t generated = 0;  // successor states produced
    double time_s = 0.0;
};

// A* with the configured admissible heuristic. Returned plans are
// length-optimal; node reopening is enabled since LM-cut is not consistent.
// Deterministic for a fixed config: successor generation follows the
// grounder's action order and the open list breaks ties by (h, FIFO).
SearchResult solve(const ground::GroundTask& task, const SearchConfig& config = {});

// One action per line: "(name arg1 arg2 ...)". Consumed by the validator and
// by external validators.
std::string plan_to_text(const ground::GroundTask& task, const Plan& plan);

}  // namespace delta::search
