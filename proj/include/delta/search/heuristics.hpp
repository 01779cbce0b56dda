#pragma once

#include <limits>
#include <memory>
#include <string>

#include "delta/ground/grounder.hpp"
#include "delta/search/state.hpp"

namespace delta::search {

enum class HeuristicKind { Blind, HMax, LmCut };

HeuristicKind heuristic_from_name(const std::string& name);  // "blind"|"hmax"|"lmcut"
std::string heuristic_name(HeuristicKind kind);

// Admissible state-cost lower bound. Instances hold per-search scratch
// buffers and are not shareable across threads; create one per solve call.
class Heuristic {
  public:
    static constexpr int kInfinity = std::numeric_limits<int>::max();

    virtual ~Heuristic() = default;
    virtual int evaluate(const StateBits& state) = 0;
};

std::unique_ptr<Heuristic> make_heuristic(HeuristicKind kind, const ground::GroundTask& task);

}  // namespace delta::search
